#pragma once

#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace qw {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Which gauge field is inserted into the step, if any.
enum class FieldKind { None, SpinPosition, Electric };

// Immutable run parameters for a walk on a d-vertex cycle.
//
// The field magnitude is always phi = 2*pi*q/d with integer q, so the phase
// is single-valued across the cycle seam (e^{i*phi*d} = 1). phi is derived,
// never stored.
struct WalkConfig {
    int d = 2;                       // cycle length (vertices), >= 2
    double theta = 0.0;              // coin angle, radians
    int q = 0;                       // field quantum, phi = 2*pi*q/d
    double r = 0.0;                  // per-step field application probability, in [0,1]
    FieldKind field = FieldKind::None;
    int steps = 0;                   // >= 0
    int realizations = 1;            // >= 1
    std::uint64_t master_seed = 0;

    double phi() const { return kTwoPi * static_cast<double>(q) / static_cast<double>(d); }

    void validate() const {
        if (d < 2) throw std::invalid_argument("WalkConfig: d must be >= 2");
        if (r < 0.0 || r > 1.0) throw std::invalid_argument("WalkConfig: r must be in [0,1]");
        if (steps < 0) throw std::invalid_argument("WalkConfig: steps must be >= 0");
        if (realizations < 1) throw std::invalid_argument("WalkConfig: realizations must be >= 1");
    }

    bool operator==(const WalkConfig&) const = default;
};

}  // namespace qw
