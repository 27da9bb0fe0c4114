#pragma once

#include <cmath>
#include <vector>

#include "qw/config.hpp"
#include "qw/state.hpp"

namespace qw {

// Unit-modulus phase e^{i * rate * x}, with the angle reduced mod 2*pi before
// the trig calls. Every position-dependent phase in the library goes through
// this one helper so that table-driven and inline applications are bit-identical,
// and so that phases never drift from cumulative multiplication.
inline cdouble unit_phase(double rate, int x) {
    const double ang = std::remainder(rate * static_cast<double>(x), kTwoPi);
    return {std::cos(ang), std::sin(ang)};
}

// Per-site phase table for the hot ensemble loop; entries are exactly
// unit_phase(rate, x).
inline std::vector<cdouble> phase_table(int d, double rate) {
    std::vector<cdouble> f(static_cast<std::size_t>(d));
    for (int x = 0; x < d; ++x) f[static_cast<std::size_t>(x)] = unit_phase(rate, x);
    return f;
}

// All kernels mutate the caller-owned state in place and run in O(d) without
// materializing matrices.

// Conditional shift: spin + moves x -> x+1, spin - moves x -> x-1, periodic.
void apply_step(StateVector& state);

// Site-local coin rotation by [[cos t, -sin t], [sin t, cos t]] on (up, dn).
void apply_coin(StateVector& state, double theta);

// Spin-and-position phase: up(x) *= e^{+i phi x}, dn(x) *= e^{-i phi x}.
void apply_phase_b(StateVector& state, double phi);

// Position-only phase with a real exponent: both spins at x gain e^{i alpha phi x}.
void apply_phase_e(StateVector& state, double phi, double alpha = 1.0);

// e^{i beta Omega_z}: up *= e^{+i beta}, dn *= e^{-i beta} at every site.
void apply_spin_rotation_z(StateVector& state, double beta);

// One walk step: shift, then coin.
void apply_u(StateVector& state, const WalkConfig& config);
void apply_u(StateVector& state, double theta);

// Table-driven variants used by the ensemble loop; bit-identical to the
// scalar kernels above when the table comes from phase_table().
void apply_phase_e_table(StateVector& state, const std::vector<cdouble>& table);
void apply_phase_b_table(StateVector& state, const std::vector<cdouble>& table);

}  // namespace qw
