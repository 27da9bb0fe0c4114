#pragma once

#include <cstdint>

#include "qw/config.hpp"
#include "qw/dense.hpp"

namespace qw::oracle {

// Dense matrices exist only for identity checks at small d.
inline constexpr int kMaxDenseSites = 32;

// Factories. Every matrix is constructed from the operator's definition,
// entry by entry, independently of the O(d) kernels, so kernel/matrix
// agreement is a real cross-check. All throw std::invalid_argument when
// d exceeds kMaxDenseSites.
DenseOperator dense_step(int d);
DenseOperator dense_coin(int d, double theta);
DenseOperator dense_phase_b(int d, double phi);
DenseOperator dense_phase_e(int d, double phi, double alpha = 1.0);
DenseOperator dense_omega_z(int d);
DenseOperator dense_spin_rotation_z(int d, double beta);  // e^{i beta Omega_z}
DenseOperator dense_walk(int d, double theta);            // (I (x) C) S
// Position-diagonal gauge factor V_t with phase e^{i eta x t}, eta = -2 phi (1-r)^2.
DenseOperator dense_gauge(int d, double phi, double r, long long t);

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);

// Closed form of [Phi_B, C]: -2i sin(theta) sum_x |x><x| (x) sin(phi x) sigma_x.
DenseOperator coin_commutator_closed_form(int d, double phi, double theta);

// [Phi_E, S] against its exact closed form (e^{i phi Omega_z} - I) S Phi_E
// and against the first-order truncation i phi Omega_z S Phi_E.
struct StepCommutatorResidual {
    double exact = 0.0;
    double first_order = 0.0;
};
StepCommutatorResidual check_electric_step_commutator(int d, int q);

// Residual of the first-order phase-through-walk swap,
// || U Phi_E - Phi_E U (I - i phi Omega_z) ||_max. O(phi^2) by construction.
double check_swap_rule(int d, int q, double theta);

// The untruncated swap U Phi_E = Phi_E U e^{-i phi Omega_z} is an exact
// identity for integer q; this returns its residual (~1e-15).
double exact_swap_residual(int d, int q, double theta);

// Interval of l steps with the field switched off at exactly one of them.
struct IntervalSpec {
    int l = 2;    // interval length; r = 1 - 1/l
    int j = 0;    // defect position, zero-based, counted from the right (t = 0 acts first)
    double phi = 0.0;

    double r() const { return 1.0 - 1.0 / static_cast<double>(l); }
    void validate() const;
};

// Two prefactor conventions for the rewritten interval:
//  Conventional - n(t<j) = (t+1)/l, n(j) = 0, n(t>j) = -(l-t)/l. Averages over j
//               to the closed-form nbar_t, but deviates from the exact product
//               at first order in phi.
//  Telescoped - m(t<j) = -(t+1)/l, m(t>=j) = (l-1-t)/l. The exact bookkeeping
//               of moving each field fraction to the defect: the rewritten
//               product reproduces the exact interval to rounding error on
//               every column that cannot cross the cycle seam. Averages to 0.
enum class RewritePattern { Conventional, Telescoped };

// n_{t,j} in units of phi for factor t (t = 0 rightmost).
double interval_prefactor(const IntervalSpec& spec, int t, RewritePattern pattern);

// Product of l factors, each U Phi_E except a bare U at the defect;
// the rightmost factor acts first.
DenseOperator exact_interval_operator(const IntervalSpec& spec, const WalkConfig& config);

// Product of U Phi_E^r e^{i n_{t,j} phi Omega_z} over t = 0..l-1 (t = 0 rightmost).
DenseOperator rewritten_interval_operator(const IntervalSpec& spec, const WalkConfig& config,
                                          RewritePattern pattern = RewritePattern::Conventional);

// Mean defect-phase prefactor: nbar_t = -2 (1-r)^2 (t - (l-1)/2).
double mean_prefactor(long long t, double r);

// Ubar(t) = (I (x) C) S Phi_E^r e^{i nbar_t phi Omega_z}. Throws when 1/(1-r)
// is not an integer.
DenseOperator averaged_step_operator(long long t, double r, const WalkConfig& config);

// Exact integer arithmetic: (1/l) sum_j n_{t,j} == nbar_t for every t in
// [0, l). True for the Conventional pattern by construction.
bool mean_prefactor_identity_holds(int l);

// chi minimizing || V_t^dag Ubar(t) V_{t-1} - U_eff e^{i chi Omega_z} || and
// that residual. The residual is measured over every column except the two
// the shift wraps: the gauge phase e^{i eta x t} is multivalued across the
// seam for t != 0, so those two columns probe cycle topology rather than the
// identity. Away from them the relation is exact with chi = phi r (1-r).
struct GaugeEquivalence {
    double residual = 0.0;
    double chi = 0.0;
};
GaugeEquivalence gauge_equivalence_check(long long t, double r, const WalkConfig& config);

// Time-independent electric step with effective exponent r + 2(1-r)^2.
DenseOperator effective_operator(double r, const WalkConfig& config);
double effective_exponent(double r);

}  // namespace qw::oracle
