#include "qw/ensemble.hpp"

#include <condition_variable>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "qw/kernels.hpp"

namespace qw {

namespace {

// Realizations per accumulation block. Fixed so the reduction tree, and
// therefore every output bit, is independent of the thread count.
constexpr std::uint64_t kBlockSize = 32;

// Evolve one trajectory, adding its per-step probabilities into acc.
void accumulate_realization(const WalkConfig& config, const StateVector& initial,
                            std::uint64_t index, RealMatrix& acc,
                            std::vector<std::uint8_t>* trace) {
    StateVector state = initial;
    const int d = config.d;
    CounterStream rng(config.master_seed, index);

    const auto add_row = [&](std::size_t t) {
        auto row = acc.row(t);
        for (int x = 0; x < d; ++x)
            row[static_cast<std::size_t>(x)] += std::norm(state.up(x)) + std::norm(state.dn(x));
    };

    add_row(0);
    const bool has_field = config.field != FieldKind::None;
    std::vector<cdouble> table;
    if (has_field) table = phase_table(d, config.phi());

    for (int k = 0; k < config.steps; ++k) {
        bool applied = false;
        if (has_field) {
            applied = rng.next() < config.r;
            if (applied) {
                if (config.field == FieldKind::Electric)
                    apply_phase_e_table(state, table);
                else
                    apply_phase_b_table(state, table);
            }
        }
        apply_u(state, config.theta);
        if (trace) (*trace)[static_cast<std::size_t>(k)] = applied ? 1 : 0;
        add_row(static_cast<std::size_t>(k) + 1);
    }
}

RealMatrix compute_block(const WalkConfig& config, const StateVector& initial,
                         std::uint64_t first, std::uint64_t last) {
    RealMatrix acc(static_cast<std::size_t>(config.steps) + 1, static_cast<std::size_t>(config.d));
    for (std::uint64_t i = first; i < last; ++i)
        accumulate_realization(config, initial, i, acc, nullptr);
    return acc;
}

// Binary-counter pairwise summation; the tree shape depends only on the
// number of blocks pushed, never on timing.
class PairwiseMerger {
public:
    void push(RealMatrix m) {
        std::size_t k = 0;
        while (k < levels_.size() && levels_[k].has_value()) {
            levels_[k]->add(m);
            m = std::move(*levels_[k]);
            levels_[k].reset();
            ++k;
        }
        if (k == levels_.size()) levels_.emplace_back();
        levels_[k] = std::move(m);
    }

    RealMatrix finish() {
        RealMatrix out;
        bool have = false;
        for (auto& level : levels_) {
            if (!level.has_value()) continue;
            if (!have) {
                out = std::move(*level);
                have = true;
            } else {
                out.add(*level);
            }
        }
        return out;
    }

private:
    std::vector<std::optional<RealMatrix>> levels_;
};

}  // namespace

bool step_stochastic(StateVector& state, const WalkConfig& config, CounterStream& rng) {
    bool applied = false;
    if (config.field != FieldKind::None) {
        applied = rng.next() < config.r;
        if (applied) {
            const double phi = config.phi();
            if (config.field == FieldKind::Electric)
                apply_phase_e(state, phi);
            else
                apply_phase_b(state, phi);
        }
    }
    apply_u(state, config.theta);
    return applied;
}

RealizationResult run_realization(const WalkConfig& config, const StateVector& initial,
                                  std::uint64_t realization_index) {
    config.validate();
    if (initial.d() != config.d)
        throw std::invalid_argument("run_realization: initial state dimension mismatch");
    RealizationResult out;
    out.dist = RealMatrix(static_cast<std::size_t>(config.steps) + 1,
                          static_cast<std::size_t>(config.d));
    out.trace.applied.assign(static_cast<std::size_t>(config.steps), 0);
    accumulate_realization(config, initial, realization_index, out.dist, &out.trace.applied);
    return out;
}

EnsembleAverage run_ensemble(const WalkConfig& config, const StateVector& initial, int n_threads) {
    config.validate();
    if (initial.d() != config.d)
        throw std::invalid_argument("run_ensemble: initial state dimension mismatch");

    const std::uint64_t n = static_cast<std::uint64_t>(config.realizations);
    const std::uint64_t nblocks = (n + kBlockSize - 1) / kBlockSize;
    PairwiseMerger merger;

    const std::uint64_t workers =
        n_threads > 1 ? std::min<std::uint64_t>(static_cast<std::uint64_t>(n_threads), nblocks) : 1;

    if (workers <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b)
            merger.push(compute_block(config, initial, b * kBlockSize,
                                      std::min(n, (b + 1) * kBlockSize)));
    } else {
        std::mutex mu;
        std::condition_variable cv;
        std::map<std::uint64_t, RealMatrix> ready;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t b = w; b < nblocks; b += workers) {
                    RealMatrix m = compute_block(config, initial, b * kBlockSize,
                                                 std::min(n, (b + 1) * kBlockSize));
                    {
                        std::lock_guard<std::mutex> lock(mu);
                        ready.emplace(b, std::move(m));
                    }
                    cv.notify_all();
                }
            });
        }
        // Merge strictly in block order regardless of completion order.
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            std::unique_lock<std::mutex> lock(mu);
            cv.wait(lock, [&] { return ready.count(b) != 0; });
            RealMatrix m = std::move(ready.at(b));
            ready.erase(b);
            lock.unlock();
            merger.push(std::move(m));
        }
        for (auto& th : pool) th.join();
    }

    EnsembleAverage out;
    out.pbar = merger.finish();
    out.pbar.scale(1.0 / static_cast<double>(n));
    out.n_realizations = static_cast<int>(n);
    out.config = config;
    return out;
}

}  // namespace qw
