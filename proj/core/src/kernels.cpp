#include "qw/kernels.hpp"

namespace qw {

void apply_step(StateVector& state) {
    const int d = state.d();
    // spin +: cyclic shift x -> x+1 on the even lane
    cdouble carry = state.up(d - 1);
    for (int x = d - 1; x > 0; --x) state.up(x) = state.up(x - 1);
    state.up(0) = carry;
    // spin -: cyclic shift x -> x-1 on the odd lane
    carry = state.dn(0);
    for (int x = 0; x < d - 1; ++x) state.dn(x) = state.dn(x + 1);
    state.dn(d - 1) = carry;
}

void apply_coin(StateVector& state, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const int d = state.d();
    for (int x = 0; x < d; ++x) {
        const cdouble u = state.up(x);
        const cdouble v = state.dn(x);
        state.up(x) = c * u - s * v;
        state.dn(x) = s * u + c * v;
    }
}

void apply_phase_b(StateVector& state, double phi) {
    const int d = state.d();
    for (int x = 0; x < d; ++x) {
        const cdouble f = unit_phase(phi, x);
        state.up(x) *= f;
        state.dn(x) *= std::conj(f);
    }
}

void apply_phase_e(StateVector& state, double phi, double alpha) {
    const double rate = alpha * phi;
    const int d = state.d();
    for (int x = 0; x < d; ++x) {
        const cdouble f = unit_phase(rate, x);
        state.up(x) *= f;
        state.dn(x) *= f;
    }
}

void apply_spin_rotation_z(StateVector& state, double beta) {
    const cdouble f{std::cos(beta), std::sin(beta)};
    const cdouble fc = std::conj(f);
    const int d = state.d();
    for (int x = 0; x < d; ++x) {
        state.up(x) *= f;
        state.dn(x) *= fc;
    }
}

void apply_u(StateVector& state, double theta) {
    apply_step(state);
    apply_coin(state, theta);
}

void apply_u(StateVector& state, const WalkConfig& config) { apply_u(state, config.theta); }

void apply_phase_e_table(StateVector& state, const std::vector<cdouble>& table) {
    const int d = state.d();
    for (int x = 0; x < d; ++x) {
        const cdouble f = table[static_cast<std::size_t>(x)];
        state.up(x) *= f;
        state.dn(x) *= f;
    }
}

void apply_phase_b_table(StateVector& state, const std::vector<cdouble>& table) {
    const int d = state.d();
    for (int x = 0; x < d; ++x) {
        const cdouble f = table[static_cast<std::size_t>(x)];
        state.up(x) *= f;
        state.dn(x) *= std::conj(f);
    }
}

}  // namespace qw
