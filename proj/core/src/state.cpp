#include "qw/state.hpp"

#include <cmath>
#include <stdexcept>

namespace qw {

StateVector basis_state(int d, int x, int spin_sign) {
    if (d < 2) throw std::invalid_argument("basis_state: d must be >= 2");
    if (x < 0 || x >= d) throw std::out_of_range("basis_state: site index out of range");
    if (spin_sign != 1 && spin_sign != -1)
        throw std::invalid_argument("basis_state: spin must be +1 or -1");
    StateVector s(d);
    if (spin_sign == 1) {
        s.up(x) = 1.0;
    } else {
        s.dn(x) = 1.0;
    }
    return s;
}

StateVector init_single_site(int d) {
    if (d < 2) throw std::invalid_argument("init_single_site: d must be >= 2");
    StateVector s(d);
    const int x0 = d / 2;
    const double inv = 1.0 / std::sqrt(2.0);
    s.up(x0) = {inv, 0.0};
    s.dn(x0) = {0.0, -inv};
    return s;
}

StateVector init_two_site(int d) {
    if (d < 4) throw std::invalid_argument("init_two_site: d must be >= 4");
    StateVector s(d);
    const int x0 = d / 2;
    s.up(x0) = {0.5, 0.0};
    s.dn(x0) = {0.0, -0.5};
    s.up(x0 + 1) = {0.5, 0.0};
    s.dn(x0 + 1) = {0.0, -0.5};
    return s;
}

ProbabilityDistribution distribution(const StateVector& state, int origin) {
    ProbabilityDistribution out;
    out.origin = origin;
    const int d = state.d();
    out.p.resize(static_cast<std::size_t>(d));
    for (int x = 0; x < d; ++x)
        out.p[static_cast<std::size_t>(x)] = std::norm(state.up(x)) + std::norm(state.dn(x));
    return out;
}

}  // namespace qw
