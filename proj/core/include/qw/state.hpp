#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qw {

using cdouble = std::complex<double>;

// Walker state on a d-vertex cycle with a two-level coin.
//
// Amplitude layout is interleaved: index 2x + s, where x in [0, d) is the
// site and s = 0 for spin +1, s = 1 for spin -1. The per-site spin pair is
// contiguous, which keeps the coin rotation a sequential sweep.
class StateVector {
public:
    explicit StateVector(int d) : d_(d), amps_(2 * static_cast<std::size_t>(d)) {}

    int d() const { return d_; }
    std::size_t size() const { return amps_.size(); }

    cdouble& up(int x) { return amps_[2 * static_cast<std::size_t>(x)]; }
    cdouble& dn(int x) { return amps_[2 * static_cast<std::size_t>(x) + 1]; }
    const cdouble& up(int x) const { return amps_[2 * static_cast<std::size_t>(x)]; }
    const cdouble& dn(int x) const { return amps_[2 * static_cast<std::size_t>(x) + 1]; }

    cdouble& operator[](std::size_t i) { return amps_[i]; }
    const cdouble& operator[](std::size_t i) const { return amps_[i]; }

    std::span<cdouble> amplitudes() { return amps_; }
    std::span<const cdouble> amplitudes() const { return amps_; }

    double norm2() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    bool operator==(const StateVector&) const = default;

private:
    int d_;
    std::vector<cdouble> amps_;
};

// Spin-marginalized Born probabilities p(x) = |a(x,+)|^2 + |a(x,-)|^2,
// plus the reference site used for displacement statistics.
struct ProbabilityDistribution {
    std::vector<double> p;
    int origin = 0;

    int d() const { return static_cast<int>(p.size()); }
};

// |x, s> basis state. Throws std::out_of_range if x is not a site of the cycle.
StateVector basis_state(int d, int x, int spin_sign);

// 1/sqrt(2) |floor(d/2)> (x) (|+1> - i|-1>). Requires d >= 2.
StateVector init_single_site(int d);

// 1/2 (|floor(d/2)> + |floor(d/2)+1>) (x) (|+1> - i|-1>). Requires d >= 4.
StateVector init_two_site(int d);

ProbabilityDistribution distribution(const StateVector& state, int origin = 0);

}  // namespace qw
