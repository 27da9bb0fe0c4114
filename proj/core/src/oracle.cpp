#include "qw/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "qw/kernels.hpp"

namespace qw::oracle {

namespace {

void check_dense_d(int d) {
    if (d < 2 || d > kMaxDenseSites)
        throw std::invalid_argument("dense operators are limited to 2 <= d <= 32");
}

double phi_of(int d, int q) { return kTwoPi * static_cast<double>(q) / static_cast<double>(d); }

// Integer interval length of the defect model; 1/(1-r) must be whole.
int interval_length(double r) {
    if (r < 0.0 || r >= 1.0) throw std::domain_error("interval model needs 0 <= r < 1");
    const double linv = 1.0 / (1.0 - r);
    const long long l = std::llround(linv);
    if (l < 2 || std::abs((1.0 - r) * static_cast<double>(l) - 1.0) > 1e-9)
        throw std::domain_error("1/(1-r) must be an integer >= 2");
    return static_cast<int>(l);
}

}  // namespace

DenseOperator dense_step(int d) {
    check_dense_d(d);
    DenseOperator out(2 * d);
    for (int x = 0; x < d; ++x) {
        out.at(2 * ((x + 1) % d), 2 * x) = 1.0;
        out.at(2 * ((x - 1 + d) % d) + 1, 2 * x + 1) = 1.0;
    }
    return out;
}

DenseOperator dense_coin(int d, double theta) {
    check_dense_d(d);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    DenseOperator out(2 * d);
    for (int x = 0; x < d; ++x) {
        out.at(2 * x, 2 * x) = c;
        out.at(2 * x, 2 * x + 1) = -s;
        out.at(2 * x + 1, 2 * x) = s;
        out.at(2 * x + 1, 2 * x + 1) = c;
    }
    return out;
}

DenseOperator dense_phase_b(int d, double phi) {
    check_dense_d(d);
    DenseOperator out(2 * d);
    for (int x = 0; x < d; ++x) {
        const cdouble f = unit_phase(phi, x);
        out.at(2 * x, 2 * x) = f;
        out.at(2 * x + 1, 2 * x + 1) = std::conj(f);
    }
    return out;
}

DenseOperator dense_phase_e(int d, double phi, double alpha) {
    check_dense_d(d);
    const double rate = alpha * phi;
    DenseOperator out(2 * d);
    for (int x = 0; x < d; ++x) {
        const cdouble f = unit_phase(rate, x);
        out.at(2 * x, 2 * x) = f;
        out.at(2 * x + 1, 2 * x + 1) = f;
    }
    return out;
}

DenseOperator dense_omega_z(int d) {
    check_dense_d(d);
    DenseOperator out(2 * d);
    for (int x = 0; x < d; ++x) {
        out.at(2 * x, 2 * x) = 1.0;
        out.at(2 * x + 1, 2 * x + 1) = -1.0;
    }
    return out;
}

DenseOperator dense_spin_rotation_z(int d, double beta) {
    check_dense_d(d);
    const cdouble f{std::cos(beta), std::sin(beta)};
    DenseOperator out(2 * d);
    for (int x = 0; x < d; ++x) {
        out.at(2 * x, 2 * x) = f;
        out.at(2 * x + 1, 2 * x + 1) = std::conj(f);
    }
    return out;
}

DenseOperator dense_walk(int d, double theta) { return dense_coin(d, theta) * dense_step(d); }

DenseOperator dense_gauge(int d, double phi, double r, long long t) {
    check_dense_d(d);
    const double eta = -2.0 * phi * (1.0 - r) * (1.0 - r);
    const double rate = eta * static_cast<double>(t);
    DenseOperator out(2 * d);
    for (int x = 0; x < d; ++x) {
        const cdouble f = unit_phase(rate, x);
        out.at(2 * x, 2 * x) = f;
        out.at(2 * x + 1, 2 * x + 1) = f;
    }
    return out;
}

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
    return a * b - b * a;
}

DenseOperator coin_commutator_closed_form(int d, double phi, double theta) {
    check_dense_d(d);
    DenseOperator out(2 * d);
    const double st = std::sin(theta);
    for (int x = 0; x < d; ++x) {
        const cdouble v = cdouble{0.0, -2.0 * st * std::sin(phi * static_cast<double>(x))};
        out.at(2 * x, 2 * x + 1) = v;
        out.at(2 * x + 1, 2 * x) = v;
    }
    return out;
}

StepCommutatorResidual check_electric_step_commutator(int d, int q) {
    const double phi = phi_of(d, q);
    const DenseOperator s = dense_step(d);
    const DenseOperator pe = dense_phase_e(d, phi);
    const DenseOperator lhs = commutator(pe, s);
    const DenseOperator spe = s * pe;

    const DenseOperator ident = DenseOperator::identity(2 * d);
    const DenseOperator exact_rhs = (dense_spin_rotation_z(d, phi) - ident) * spe;
    const DenseOperator first_rhs = dense_omega_z(d).scaled(cdouble{0.0, phi}) * spe;

    StepCommutatorResidual out;
    out.exact = max_abs_diff(lhs, exact_rhs);
    out.first_order = max_abs_diff(lhs, first_rhs);
    return out;
}

double check_swap_rule(int d, int q, double theta) {
    const double phi = phi_of(d, q);
    const DenseOperator u = dense_walk(d, theta);
    const DenseOperator pe = dense_phase_e(d, phi);
    const DenseOperator trunc =
        DenseOperator::identity(2 * d) - dense_omega_z(d).scaled(cdouble{0.0, phi});
    return max_abs_diff(u * pe, pe * u * trunc);
}

double exact_swap_residual(int d, int q, double theta) {
    const double phi = phi_of(d, q);
    const DenseOperator u = dense_walk(d, theta);
    const DenseOperator pe = dense_phase_e(d, phi);
    return max_abs_diff(u * pe, pe * u * dense_spin_rotation_z(d, -phi));
}

void IntervalSpec::validate() const {
    if (l < 2) throw std::invalid_argument("IntervalSpec: l must be >= 2");
    if (j < 0 || j >= l) throw std::invalid_argument("IntervalSpec: j must be in [0, l)");
}

double interval_prefactor(const IntervalSpec& spec, int t, RewritePattern pattern) {
    spec.validate();
    if (t < 0 || t >= spec.l) throw std::invalid_argument("interval_prefactor: t out of range");
    const double l = static_cast<double>(spec.l);
    switch (pattern) {
        case RewritePattern::Conventional:
            if (t < spec.j) return static_cast<double>(t + 1) / l;
            if (t == spec.j) return 0.0;
            return -static_cast<double>(spec.l - t) / l;
        case RewritePattern::Telescoped:
            if (t < spec.j) return -static_cast<double>(t + 1) / l;
            return static_cast<double>(spec.l - 1 - t) / l;
    }
    throw std::logic_error("interval_prefactor: unknown pattern");
}

DenseOperator exact_interval_operator(const IntervalSpec& spec, const WalkConfig& config) {
    spec.validate();
    const DenseOperator u = dense_walk(config.d, config.theta);
    const DenseOperator pe = dense_phase_e(config.d, spec.phi);
    DenseOperator m = DenseOperator::identity(2 * config.d);
    for (int t = 0; t < spec.l; ++t) {
        const DenseOperator f = (t == spec.j) ? u : u * pe;
        m = f * m;  // t = 0 acts first
    }
    return m;
}

DenseOperator rewritten_interval_operator(const IntervalSpec& spec, const WalkConfig& config,
                                          RewritePattern pattern) {
    spec.validate();
    const DenseOperator u = dense_walk(config.d, config.theta);
    const DenseOperator per = dense_phase_e(config.d, spec.phi, spec.r());
    DenseOperator m = DenseOperator::identity(2 * config.d);
    for (int t = 0; t < spec.l; ++t) {
        const double n = interval_prefactor(spec, t, pattern);
        const DenseOperator f = u * per * dense_spin_rotation_z(config.d, n * spec.phi);
        m = f * m;
    }
    return m;
}

double mean_prefactor(long long t, double r) {
    const double omr = 1.0 - r;
    // -2(1-r)^2 (t - ((1-r)^{-1} - 1)/2), expanded so r = 1 is regular.
    return -2.0 * omr * omr * static_cast<double>(t) + r * omr;
}

DenseOperator averaged_step_operator(long long t, double r, const WalkConfig& config) {
    if (r != 1.0) interval_length(r);  // enforce integer 1/(1-r)
    const double phi = config.phi();
    return dense_walk(config.d, config.theta) * dense_phase_e(config.d, phi, r) *
           dense_spin_rotation_z(config.d, mean_prefactor(t, r) * phi);
}

bool mean_prefactor_identity_holds(int l) {
    if (l < 2) throw std::invalid_argument("mean_prefactor_identity_holds: l must be >= 2");
    // n_{t,j} * l^2 is an integer; compare sum_j n_{t,j} * l^2 with
    // nbar_t * l^3 = l (l - 1 - 2t) exactly.
    for (long long t = 0; t < l; ++t) {
        long long sum = 0;
        for (long long j = 0; j < l; ++j) {
            if (t < j)
                sum += (t + 1) * l;
            else if (t > j)
                sum += -(l - t) * l;
        }
        if (sum != l * (l - 1 - 2 * t)) return false;
    }
    return true;
}

GaugeEquivalence gauge_equivalence_check(long long t, double r, const WalkConfig& config) {
    if (r != 1.0) interval_length(r);
    const int d = config.d;
    const double phi = config.phi();

    const DenseOperator lhs = dense_gauge(d, phi, r, t).adjoint() *
                              averaged_step_operator(t, r, config) *
                              dense_gauge(d, phi, r, t - 1);
    const DenseOperator rhs0 = effective_operator(r, config);

    // Frobenius-optimal position-independent spin rotation: e^{i chi Omega_z}
    // scales spin+ columns by e^{i chi} and spin- columns by e^{-i chi}.
    // The two shift-wrap columns are left out here and in the residual: the
    // gauge phase is multivalued across the seam for t != 0.
    const int wrap_up = 2 * (d - 1);
    const int wrap_dn = 1;
    cdouble overlap{0.0, 0.0};
    for (int x = 0; x < d; ++x) {
        for (int s = 0; s < 2; ++s) {
            const int col = 2 * x + s;
            if (col == wrap_up || col == wrap_dn) continue;
            cdouble dot{0.0, 0.0};
            for (int row = 0; row < 2 * d; ++row)
                dot += std::conj(rhs0.at(row, col)) * lhs.at(row, col);
            overlap += (s == 0) ? dot : std::conj(dot);
        }
    }

    GaugeEquivalence out;
    out.chi = std::atan2(overlap.imag(), overlap.real());
    const DenseOperator rhs = rhs0 * dense_spin_rotation_z(d, out.chi);
    out.residual = max_abs_diff_excluding_wrap_columns(lhs, rhs);
    return out;
}

double effective_exponent(double r) { return r + 2.0 * (1.0 - r) * (1.0 - r); }

DenseOperator effective_operator(double r, const WalkConfig& config) {
    return dense_walk(config.d, config.theta) *
           dense_phase_e(config.d, config.phi(), effective_exponent(r));
}

}  // namespace qw::oracle
