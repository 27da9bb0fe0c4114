#include "qw/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qw/config.hpp"
#include "qw/fft.hpp"

namespace qw {

namespace {

CircularDisplacement circular_mean_span(std::span<const double> p, int d, int x0) {
    const double rate = kTwoPi / static_cast<double>(d);
    double re = 0.0, im = 0.0;
    for (int x = 0; x < d; ++x) {
        const double ang = std::remainder(rate * static_cast<double>(x - x0), kTwoPi);
        re += p[static_cast<std::size_t>(x)] * std::cos(ang);
        im += p[static_cast<std::size_t>(x)] * std::sin(ang);
    }
    if (std::hypot(re, im) < 1e-12) return {0.0, true};
    return {(static_cast<double>(d) / kTwoPi) * std::atan2(im, re), false};
}

// Signed circular distance from the (possibly fractional) cycle coordinate c
// to site x, in (-d/2, d/2].
double circular_delta(int x, double c, int d) {
    const double dd = static_cast<double>(d);
    double del = std::remainder(static_cast<double>(x) - c, dd);
    if (del <= -dd / 2) del += dd;
    return del;
}

// Solve the 3x3 normal equations by Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        std::swap(m[col], m[piv]);
        if (m[col][col] == 0.0) throw std::runtime_error("singular normal equations");
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

struct Ols {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

Ols ols_line(std::span<const double> xs, std::span<const double> ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::domain_error("degenerate abscissa in linear fit");
    Ols out;
    out.slope = (n * sxy - sx * sy) / denom;
    out.intercept = (sy - out.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fit = out.intercept + out.slope * xs[i];
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
    }
    out.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return out;
}

}  // namespace

CircularDisplacement circular_mean_displacement(const ProbabilityDistribution& dist) {
    return circular_mean_span(dist.p, dist.d(), dist.origin);
}

MomentSeries moment_series(const RealMatrix& pbar, int d, int x0) {
    MomentSeries out;
    const std::size_t T = pbar.rows;
    out.t.reserve(T);
    out.mean_displacement.reserve(T);
    out.variance.reserve(T);
    out.degenerate.reserve(T);

    double prev = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        const auto row = pbar.row(t);
        const CircularDisplacement cm = circular_mean_span(row, d, x0);

        // Unwrap: shift by whole cycles to stay within d/2 of the previous value.
        double disp = cm.value;
        if (t > 0) disp += static_cast<double>(d) * std::round((prev - disp) / d);
        prev = disp;

        const double center = static_cast<double>(x0) + cm.value;
        double var = 0.0;
        for (int x = 0; x < d; ++x) {
            const double del = circular_delta(x, center, d);
            var += row[static_cast<std::size_t>(x)] * del * del;
        }

        out.t.push_back(static_cast<int>(t));
        out.mean_displacement.push_back(disp);
        out.variance.push_back(var);
        out.degenerate.push_back(cm.degenerate ? 1 : 0);
    }
    return out;
}

MomentSeries moment_series(const EnsembleAverage& ensemble, int x0) {
    return moment_series(ensemble.pbar, ensemble.config.d, x0);
}

GaussianFit fit_gaussian_logparabola(const ProbabilityDistribution& dist) {
    const int d = dist.d();
    const double pmax = *std::max_element(dist.p.begin(), dist.p.end());
    if (!(pmax > 0.0)) throw InsufficientSupportError("distribution has no mass");

    const CircularDisplacement cm = circular_mean_span(dist.p, d, dist.origin);
    const double center0 = static_cast<double>(dist.origin) + cm.value;

    std::vector<double> deltas, logs;
    for (int x = 0; x < d; ++x) {
        const double p = dist.p[static_cast<std::size_t>(x)];
        if (p > kGaussianSupportThreshold * pmax) {
            deltas.push_back(circular_delta(x, center0, d));
            logs.push_back(std::log(p));
        }
    }
    if (static_cast<int>(deltas.size()) < kGaussianMinPoints)
        throw InsufficientSupportError("fewer than 8 sites above the support threshold");

    double s1 = 0, s2 = 0, s3 = 0, s4 = 0, t0 = 0, t1 = 0, t2 = 0;
    const double n = static_cast<double>(deltas.size());
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double x = deltas[i], y = logs[i];
        const double x2 = x * x;
        s1 += x;
        s2 += x2;
        s3 += x2 * x;
        s4 += x2 * x2;
        t0 += y;
        t1 += y * x;
        t2 += y * x2;
    }
    const auto beta = solve3({{{n, s1, s2, t0}, {s1, s2, s3, t1}, {s2, s3, s4, t2}}});

    // Rounding can leave a vanishing quadratic term slightly negative on an
    // exactly flat profile; any genuine fit on a d-cycle has |b2| >= ~2/d^2.
    if (beta[2] >= -1e-12) throw NotGaussianError("log-profile is not concave");

    GaussianFit fit;
    fit.sigma2 = -1.0 / (2.0 * beta[2]);
    fit.center = center0 - beta[1] / (2.0 * beta[2]);
    fit.n_points = static_cast<int>(deltas.size());

    double ss_res = 0, ss_tot = 0;
    const double ybar = t0 / n;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        const double x = deltas[i];
        const double f = beta[0] + beta[1] * x + beta[2] * x * x;
        ss_res += (logs[i] - f) * (logs[i] - f);
        ss_tot += (logs[i] - ybar) * (logs[i] - ybar);
    }
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

ScalingFit fit_scaling_exponent(const MomentSeries& series, int t_min, int t_max) {
    if (t_min < 1 || t_max <= t_min)
        throw std::domain_error("fit_scaling_exponent: need t_max > t_min >= 1");

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < series.t.size(); ++i) {
        const int t = series.t[i];
        if (t < t_min || t > t_max) continue;
        const double v = series.variance[i];
        if (!(v > 0.0))
            throw std::domain_error("fit_scaling_exponent: nonpositive variance in window");
        lx.push_back(std::log(static_cast<double>(t)));
        ly.push_back(std::log(v));
    }
    if (lx.size() < 2) throw std::domain_error("fit_scaling_exponent: window has fewer than 2 samples");

    const Ols ols = ols_line(lx, ly);
    ScalingFit fit;
    fit.exponent = ols.slope;
    fit.intercept = ols.intercept;
    fit.r2 = ols.r2;
    fit.t_min = t_min;
    fit.t_max = t_max;
    return fit;
}

SpreadingRegime classify_regime(double exponent) {
    if (exponent > 1.6) return SpreadingRegime::Ballistic;
    if (exponent < 1.3) return SpreadingRegime::Diffusive;
    return SpreadingRegime::Intermediate;
}

PeriodEstimate estimate_period(std::span<const double> mean_displacement) {
    const std::size_t n = mean_displacement.size();
    if (n < static_cast<std::size_t>(kPeriodMinSamples))
        throw std::invalid_argument("estimate_period: series shorter than 64 samples");

    double mean = 0.0;
    for (double v : mean_displacement) mean += v;
    mean /= static_cast<double>(n);

    const std::size_t m = next_pow2(8 * n);
    std::vector<std::complex<double>> buf(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        // Hann taper keeps spectral leakage from biasing the peak when only a
        // few oscillation periods are observed.
        const double w =
            0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1)));
        buf[i] = (mean_displacement[i] - mean) * w;
    }
    fft_pow2(buf);

    const std::size_t half = m / 2;
    std::vector<double> power(half + 1);
    for (std::size_t k = 0; k <= half; ++k) power[k] = std::norm(buf[k]);

    // Periods at least as long as the series are not a measurable oscillation.
    const std::size_t k_min =
        std::max<std::size_t>(1, static_cast<std::size_t>(
                                     std::ceil(static_cast<double>(m) / static_cast<double>(n))));
    std::size_t k_peak = k_min;
    for (std::size_t k = k_min; k <= half; ++k)
        if (power[k] > power[k_peak]) k_peak = k;

    std::vector<double> sorted(power.begin() + 1, power.end());
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];

    if (!(power[k_peak] > kPeriodPeakFactor * median) || !(power[k_peak] > 0.0))
        throw NoOscillationError("no spectral peak above 5x the median power");

    double delta = 0.0;
    if (k_peak >= 1 && k_peak < half) {
        const double a = power[k_peak - 1], b = power[k_peak], c = power[k_peak + 1];
        const double denom = a - 2.0 * b + c;
        if (denom != 0.0) delta = 0.5 * (a - c) / denom;
        if (delta > 0.5) delta = 0.5;
        if (delta < -0.5) delta = -0.5;
    }

    PeriodEstimate out;
    out.period = static_cast<double>(m) / (static_cast<double>(k_peak) + delta);
    out.peak_sharpness = power[k_peak] / std::max(median, 1e-300);
    return out;
}

double predicted_period(double phi, double r) {
    if (!(phi > 0.0)) throw std::domain_error("predicted_period: phi must be positive");
    if (r < 0.0 || r > 1.0) throw std::domain_error("predicted_period: r must be in [0,1]");
    const double factor = r + 2.0 * (1.0 - r) * (1.0 - r);
    return kTwoPi / (phi * factor);
}

}  // namespace qw
