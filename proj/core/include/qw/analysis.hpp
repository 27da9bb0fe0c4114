#pragma once

#include <span>
#include <vector>

#include "qw/ensemble.hpp"
#include "qw/errors.hpp"
#include "qw/matrix.hpp"
#include "qw/state.hpp"

namespace qw {

// Circular mean displacement from the distribution's origin, in sites,
// in (-d/2, d/2]. Degenerate when the spectral resultant vanishes (e.g. a
// uniform distribution leaves the direction undefined); the displacement is
// then reported as 0 with the flag set.
struct CircularDisplacement {
    double value = 0.0;
    bool degenerate = false;
};

CircularDisplacement circular_mean_displacement(const ProbabilityDistribution& dist);

// <x>(t) unwrapped across the cycle, and the circular variance about the
// per-t circular mean, both in sites (resp. sites^2).
struct MomentSeries {
    std::vector<int> t;
    std::vector<double> mean_displacement;
    std::vector<double> variance;
    std::vector<std::uint8_t> degenerate;
};

MomentSeries moment_series(const RealMatrix& pbar, int d, int x0);
MomentSeries moment_series(const EnsembleAverage& ensemble, int x0);

// Log-parabola (ordinary least squares of ln p on 1, delta, delta^2) over
// sites with p > kGaussianSupportThreshold * max p. On a cycle a broad
// Gaussian never falls below 1e-3 of its peak, so the cut sits at 1e-2 to
// keep the wrapped far tail out of the regression.
inline constexpr double kGaussianSupportThreshold = 1e-2;
inline constexpr int kGaussianMinPoints = 8;

struct GaussianFit {
    double sigma2 = 0.0;  // fitted variance, sites^2
    double center = 0.0;  // fitted center, sites (cycle coordinate)
    double r2 = 0.0;      // coefficient of determination of the log regression
    int n_points = 0;
};

// Throws NotGaussianError when the quadratic coefficient is not negative,
// InsufficientSupportError when fewer than kGaussianMinPoints sites qualify.
GaussianFit fit_gaussian_logparabola(const ProbabilityDistribution& dist);

// Least-squares slope of ln sigma^2 against ln t over [t_min, t_max].
struct ScalingFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int t_min = 0;
    int t_max = 0;
};

ScalingFit fit_scaling_exponent(const MomentSeries& series, int t_min, int t_max);

// Reporting bands only; never used as a test gate.
enum class SpreadingRegime { Ballistic, Intermediate, Diffusive };
SpreadingRegime classify_regime(double exponent);

// Dominant-period estimate from the mean-displacement series: detrend,
// Hann-taper, zero-pad 8x, take the power spectrum, pick the largest
// nonzero-frequency bin and refine it by quadratic interpolation of the
// three bins around the peak. peak_sharpness = peak power / median power.
// Throws NoOscillationError when the peak is below 5x the median power;
// requires at least 64 samples.
struct PeriodEstimate {
    double period = 0.0;          // steps
    double peak_sharpness = 0.0;  // dimensionless
};

inline constexpr int kPeriodMinSamples = 64;
inline constexpr double kPeriodPeakFactor = 5.0;

PeriodEstimate estimate_period(std::span<const double> mean_displacement);

// Closed-form oscillation period 2*pi / (phi * (r + 2(1-r)^2)).
double predicted_period(double phi, double r);

}  // namespace qw
