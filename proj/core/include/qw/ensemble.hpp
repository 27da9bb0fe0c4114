#pragma once

#include <cstdint>
#include <vector>

#include "qw/config.hpp"
#include "qw/matrix.hpp"
#include "qw/prng.hpp"
#include "qw/state.hpp"

namespace qw {

// Which steps of one realization had the field applied before U.
struct RealizationTrace {
    std::vector<std::uint8_t> applied;  // length == config.steps
};

struct RealizationResult {
    RealMatrix dist;  // (steps+1) x d, row t = distribution after t steps
    RealizationTrace trace;
};

// Per-timestep position distributions averaged over realizations.
// Probabilities are averaged, never amplitudes.
struct EnsembleAverage {
    RealMatrix pbar;  // (steps+1) x d
    int n_realizations = 0;
    WalkConfig config;
};

// Advance one step: with probability config.r apply the field operator, then
// U. Consumes exactly one uniform draw when a field is configured, none for
// FieldKind::None. Mutates the state in place; returns whether the field acted.
bool step_stochastic(StateVector& state, const WalkConfig& config, CounterStream& rng);

// One full trajectory. The random stream is a pure function of
// (config.master_seed, realization_index): identical arguments give
// bit-identical output.
RealizationResult run_realization(const WalkConfig& config, const StateVector& initial,
                                  std::uint64_t realization_index);

// Probability-averaged ensemble. Realizations are grouped into fixed blocks
// of 32 accumulated in index order, and block sums are combined by pairwise
// (binary-counter) summation, so the result is bit-identical for any thread
// count and any completion order.
EnsembleAverage run_ensemble(const WalkConfig& config, const StateVector& initial,
                             int n_threads = 1);

}  // namespace qw
