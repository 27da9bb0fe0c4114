#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "qw/ensemble.hpp"
#include "qw/kernels.hpp"

using namespace qw;

namespace {

WalkConfig small_config() {
    WalkConfig c;
    c.d = 31;
    c.theta = std::numbers::pi / 4;
    c.q = 3;
    c.r = 0.7;
    c.field = FieldKind::Electric;
    c.steps = 60;
    c.realizations = 100;
    c.master_seed = 1234;
    return c;
}

}  // namespace

TEST_CASE("step_stochastic degenerate probabilities") {
    WalkConfig c = small_config();
    StateVector s = init_single_site(c.d);

    c.r = 1.0;
    CounterStream rng(c.master_seed, 0);
    for (int i = 0; i < 100; ++i) CHECK(step_stochastic(s, c, rng));

    c.r = 0.0;
    CounterStream rng2(c.master_seed, 0);
    for (int i = 0; i < 100; ++i) CHECK_FALSE(step_stochastic(s, c, rng2));
}

TEST_CASE("applied fraction tracks r over many draws") {
    WalkConfig c;
    c.d = 4;
    c.theta = 0.3;
    c.q = 1;
    c.r = 0.9;
    c.field = FieldKind::Electric;
    c.steps = 100000;
    c.master_seed = 777;
    const RealizationResult res = run_realization(c, init_single_site(c.d), 0);
    long applied = 0;
    for (const auto b : res.trace.applied) applied += b;
    const double frac = static_cast<double>(applied) / static_cast<double>(c.steps);
    CHECK(frac == doctest::Approx(0.9).epsilon(0.0112));  // 0.9 +/- 0.01
}

TEST_CASE("run_realization basics") {
    WalkConfig c = small_config();

    SUBCASE("steps=0 yields the initial distribution only") {
        c.steps = 0;
        const StateVector init = init_two_site(c.d);
        const RealizationResult res = run_realization(c, init, 5);
        CHECK(res.dist.rows == 1);
        const ProbabilityDistribution p = distribution(init);
        for (int x = 0; x < c.d; ++x) CHECK(res.dist(0, x) == p.p[x]);
        CHECK(res.trace.applied.empty());
    }

    SUBCASE("r=1 electric is identical for every realization index") {
        c.r = 1.0;
        const StateVector init = init_single_site(c.d);
        const RealizationResult a = run_realization(c, init, 0);
        const RealizationResult b = run_realization(c, init, 7);
        CHECK(a.dist == b.dist);
    }

    SUBCASE("identical arguments give bit-identical results") {
        const StateVector init = init_single_site(c.d);
        const RealizationResult a = run_realization(c, init, 3);
        const RealizationResult b = run_realization(c, init, 3);
        CHECK(a.dist == b.dist);
        CHECK(a.trace.applied == b.trace.applied);
    }

    SUBCASE("distinct indices decorrelate the field pattern") {
        const StateVector init = init_single_site(c.d);
        const RealizationResult a = run_realization(c, init, 0);
        const RealizationResult b = run_realization(c, init, 1);
        CHECK(a.trace.applied != b.trace.applied);
    }
}

TEST_CASE("run_ensemble contracts") {
    WalkConfig c = small_config();
    const StateVector init = init_two_site(c.d);

    SUBCASE("realizations=1 equals the single realization bitwise") {
        c.realizations = 1;
        const EnsembleAverage e = run_ensemble(c, init);
        const RealizationResult r0 = run_realization(c, init, 0);
        CHECK(e.pbar == r0.dist);
    }

    SUBCASE("r=1 equals the deterministic field walk at every t") {
        c.r = 1.0;
        c.realizations = 5;
        const EnsembleAverage e = run_ensemble(c, init);
        const RealizationResult det = run_realization(c, init, 0);
        for (std::size_t t = 0; t < e.pbar.rows; ++t)
            for (int x = 0; x < c.d; ++x)
                CHECK(e.pbar(t, x) == doctest::Approx(det.dist(t, x)).epsilon(1e-14));
    }

    SUBCASE("r=0 is identical to field=None") {
        WalkConfig off = c;
        off.r = 0.0;
        WalkConfig none = c;
        none.field = FieldKind::None;
        none.r = 0.0;
        CHECK(run_ensemble(off, init).pbar == run_ensemble(none, init).pbar);
    }

    SUBCASE("rows are stochastic to 1e-8") {
        const EnsembleAverage e = run_ensemble(c, init);
        for (std::size_t t = 0; t < e.pbar.rows; ++t) {
            double sum = 0.0;
            for (int x = 0; x < c.d; ++x) {
                CHECK(e.pbar(t, x) >= 0.0);
                sum += e.pbar(t, x);
            }
            CHECK(std::abs(sum - 1.0) <= 1e-8);
        }
    }

    SUBCASE("thread count never changes a bit") {
        const EnsembleAverage one = run_ensemble(c, init, 1);
        const EnsembleAverage three = run_ensemble(c, init, 3);
        const EnsembleAverage eight = run_ensemble(c, init, 8);
        CHECK(one.pbar == three.pbar);
        CHECK(one.pbar == eight.pbar);
    }

    SUBCASE("ensemble is a pure function of (config, initial)") {
        CHECK(run_ensemble(c, init).pbar == run_ensemble(c, init).pbar);
    }
}

TEST_CASE("table-driven field application matches the scalar kernels bitwise") {
    WalkConfig c = small_config();
    c.field = FieldKind::SpinPosition;
    const StateVector init = init_two_site(c.d);

    // One trajectory via step_stochastic, one via run_realization's fast path.
    StateVector s = init;
    CounterStream rng(c.master_seed, 4);
    RealMatrix manual(static_cast<std::size_t>(c.steps) + 1, static_cast<std::size_t>(c.d));
    auto write_row = [&](std::size_t t) {
        for (int x = 0; x < c.d; ++x)
            manual(t, x) = std::norm(s.up(x)) + std::norm(s.dn(x));
    };
    write_row(0);
    for (int k = 0; k < c.steps; ++k) {
        step_stochastic(s, c, rng);
        write_row(static_cast<std::size_t>(k) + 1);
    }

    const RealizationResult fast = run_realization(c, init, 4);
    CHECK(fast.dist == manual);
}
