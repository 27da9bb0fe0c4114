// qwalk: simulate discrete-time quantum walks on a cycle with stochastic
// gauge fields, analyze the results, and verify the operator identities the
// model is built on.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qw/analysis.hpp"
#include "qw/ensemble.hpp"
#include "qw/io.hpp"
#include "qw/kernels.hpp"
#include "qw/oracle.hpp"
#include "qw/prng.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

double parse_theta(const std::string& s) {
    if (s == "pi/4") return std::numbers::pi / 4.0;
    if (s == "pi/2") return std::numbers::pi / 2.0;
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("--theta must be pi/4, pi/2, or a radian value, got '" + s +
                                    "'");
    }
}

struct InitSpec {
    enum class Kind { Single, TwoSite, Custom } kind = Kind::Single;
    int x = 0;
    int spin = 1;
};

InitSpec parse_init(const std::string& s) {
    InitSpec out;
    if (s == "single") {
        out.kind = InitSpec::Kind::Single;
        return out;
    }
    if (s == "two-site") {
        out.kind = InitSpec::Kind::TwoSite;
        return out;
    }
    // x:<int>,s:<+1|-1>
    if (s.rfind("x:", 0) == 0) {
        const auto comma = s.find(",s:");
        if (comma != std::string::npos) {
            try {
                out.kind = InitSpec::Kind::Custom;
                out.x = std::stoi(s.substr(2, comma - 2));
                const std::string spin = s.substr(comma + 3);
                if (spin == "+1" || spin == "1")
                    out.spin = 1;
                else if (spin == "-1")
                    out.spin = -1;
                else
                    throw std::invalid_argument(spin);
                return out;
            } catch (const std::exception&) {
                // fall through to the error below
            }
        }
    }
    throw std::invalid_argument("--init must be single, two-site, or x:<int>,s:<+1|-1>, got '" +
                                s + "'");
}

struct WalkFlags {
    int d = 0;
    int q = 1;
    std::string theta = "pi/4";
    std::string field = "none";
    double r = 0.0;
    int steps = 0;
    int realizations = 1;
    std::string init = "single";
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string format = "long";
    int threads = 1;
};

void add_walk_flags(CLI::App* cmd, WalkFlags& f, bool with_realizations) {
    cmd->add_option("--d", f.d, "cycle length (vertices)")->required();
    cmd->add_option("--q", f.q, "field quantum; phi = 2*pi*q/d");
    cmd->add_option("--theta", f.theta, "coin angle: pi/4, pi/2, or radians");
    cmd->add_option("--field", f.field, "gauge field: none, b (spin+position), e (electric)")
        ->check(CLI::IsMember({"none", "b", "e"}));
    cmd->add_option("--r", f.r, "per-step field application probability");
    cmd->add_option("--steps", f.steps, "number of walk steps");
    if (with_realizations)
        cmd->add_option("--realizations", f.realizations, "number of trajectories to average");
    cmd->add_option("--init", f.init, "initial state: single, two-site, or x:<int>,s:<+1|-1>");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--format", f.format, "distributions CSV layout")
        ->check(CLI::IsMember({"long", "wide"}));
    cmd->add_option("--threads", f.threads, "worker threads (output is independent of this)");
}

struct PreparedRun {
    qw::WalkConfig config;
    qw::StateVector initial{2};
    int x0 = 0;
};

PreparedRun prepare_run(const WalkFlags& f, int realizations) {
    PreparedRun out;
    out.config.d = f.d;
    out.config.theta = parse_theta(f.theta);
    out.config.q = f.q;
    out.config.r = f.r;
    out.config.field = qw::io::field_from_string(f.field);
    out.config.steps = f.steps;
    out.config.realizations = realizations;
    out.config.master_seed = f.seed;
    out.config.validate();

    if (out.config.field == qw::FieldKind::None && f.r != 0.0)
        std::cerr << "warning: --r is ignored when --field none\n";

    const InitSpec init = parse_init(f.init);
    switch (init.kind) {
        case InitSpec::Kind::Single:
            out.initial = qw::init_single_site(f.d);
            out.x0 = f.d / 2;
            break;
        case InitSpec::Kind::TwoSite:
            out.initial = qw::init_two_site(f.d);
            out.x0 = f.d / 2;
            break;
        case InitSpec::Kind::Custom:
            out.initial = qw::basis_state(f.d, init.x, init.spin);
            out.x0 = init.x;
            break;
    }
    return out;
}

void write_run_outputs(const WalkFlags& f, const qw::WalkConfig& config,
                       const qw::RealMatrix& pbar, int x0,
                       std::chrono::steady_clock::time_point started) {
    const fs::path dir(f.out_dir);
    fs::create_directories(dir);

    const std::string dist_csv = f.format == "wide" ? qw::io::distributions_csv_wide(pbar)
                                                    : qw::io::distributions_csv_long(pbar);
    qw::io::atomic_write_file(dir / "distributions.csv", dist_csv);

    const qw::MomentSeries series = qw::moment_series(pbar, config.d, x0);
    qw::io::atomic_write_file(dir / "moments.csv", qw::io::moments_csv(series));

    const double duration =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    qw::io::atomic_write_file(
        dir / "manifest.json",
        qw::io::manifest_json(config, duration, {"distributions.csv", "moments.csv"}));
}

int run_evolve(const WalkFlags& f) {
    const auto started = std::chrono::steady_clock::now();
    const PreparedRun run = prepare_run(f, 1);
    const qw::RealizationResult result = qw::run_realization(run.config, run.initial, 0);
    write_run_outputs(f, run.config, result.dist, run.x0, started);
    return 0;
}

int run_ensemble_cmd(const WalkFlags& f) {
    const auto started = std::chrono::steady_clock::now();
    const PreparedRun run = prepare_run(f, f.realizations);
    const qw::EnsembleAverage ensemble = qw::run_ensemble(run.config, run.initial, f.threads);
    write_run_outputs(f, run.config, ensemble.pbar, run.x0, started);
    return 0;
}

struct AnalyzeFlags {
    std::string dist_path;
    std::string moments_path;
    bool gaussian = false;
    bool scaling = false;
    bool period = false;
    int at_t = -1;
    std::string window;
    int x0 = -1;
    std::string out_dir = ".";
};

int run_analyze(const AnalyzeFlags& f) {
    if (f.dist_path.empty() && f.moments_path.empty())
        throw std::invalid_argument("analyze needs --dist and/or --moments");
    if (!f.gaussian && !f.scaling && !f.period)
        throw std::invalid_argument("analyze needs at least one of --gaussian, --scaling, --period");

    std::optional<qw::RealMatrix> pbar;
    std::vector<std::string> inputs;
    if (!f.dist_path.empty()) {
        pbar = qw::io::read_distributions_csv(f.dist_path);
        inputs.push_back(f.dist_path);
    }

    std::optional<qw::MomentSeries> series;
    if (!f.moments_path.empty()) {
        series = qw::io::read_moments_csv(f.moments_path);
        inputs.push_back(f.moments_path);
    } else if (pbar) {
        const int d = static_cast<int>(pbar->cols);
        const int x0 = f.x0 >= 0 ? f.x0 : d / 2;
        series = qw::moment_series(*pbar, d, x0);
    }

    json report;
    report["manifest"] = {{"artifact", qw::io::kArtifactName},
                          {"version", qw::io::kArtifactVersion},
                          {"inputs", inputs},
                          {"outputs", {"report.json"}}};

    if (f.gaussian) {
        if (!pbar) throw std::invalid_argument("--gaussian needs --dist");
        const int d = static_cast<int>(pbar->cols);
        const int x0 = f.x0 >= 0 ? f.x0 : d / 2;
        const std::size_t t =
            f.at_t >= 0 ? static_cast<std::size_t>(f.at_t) : pbar->rows - 1;
        if (t >= pbar->rows) throw std::invalid_argument("--at is past the last time step");
        qw::ProbabilityDistribution dist;
        dist.origin = x0;
        dist.p.assign(pbar->row(t).begin(), pbar->row(t).end());
        try {
            const qw::GaussianFit fit = qw::fit_gaussian_logparabola(dist);
            report["gaussian_fit"] = {{"t", t},
                                      {"sigma2", fit.sigma2},
                                      {"center", fit.center},
                                      {"r2", fit.r2},
                                      {"n_points", fit.n_points}};
            std::printf("gaussian fit at t=%zu: sigma2=%s r2=%s (%d sites)\n", t,
                        qw::io::format_double(fit.sigma2).c_str(),
                        qw::io::format_double(fit.r2).c_str(), fit.n_points);
        } catch (const qw::NotGaussianError& e) {
            report["gaussian_fit"] = {{"t", t}, {"error", std::string("NotGaussian: ") + e.what()}};
            std::printf("gaussian fit at t=%zu: NotGaussian (%s)\n", t, e.what());
        } catch (const qw::InsufficientSupportError& e) {
            report["gaussian_fit"] = {{"t", t},
                                      {"error", std::string("InsufficientSupport: ") + e.what()}};
            std::printf("gaussian fit at t=%zu: InsufficientSupport (%s)\n", t, e.what());
        }
    }

    if (f.scaling) {
        if (!series) throw std::invalid_argument("--scaling needs --moments or --dist");
        const int t_last = series->t.back();
        int t_min = t_last / 4, t_max = t_last;
        if (!f.window.empty()) {
            const auto colon = f.window.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("--window must be <tmin>:<tmax>");
            t_min = std::stoi(f.window.substr(0, colon));
            t_max = std::stoi(f.window.substr(colon + 1));
        }
        try {
            const qw::ScalingFit fit = qw::fit_scaling_exponent(*series, t_min, t_max);
            const char* regime = "intermediate";
            if (qw::classify_regime(fit.exponent) == qw::SpreadingRegime::Ballistic)
                regime = "ballistic";
            else if (qw::classify_regime(fit.exponent) == qw::SpreadingRegime::Diffusive)
                regime = "diffusive";
            report["scaling_fit"] = {{"exponent", fit.exponent}, {"intercept", fit.intercept},
                                     {"r2", fit.r2},             {"t_min", fit.t_min},
                                     {"t_max", fit.t_max},       {"regime", regime}};
            std::printf("scaling exponent over [%d,%d]: %s (%s)\n", fit.t_min, fit.t_max,
                        qw::io::format_double(fit.exponent).c_str(), regime);
        } catch (const std::domain_error& e) {
            report["scaling_fit"] = {{"error", e.what()}};
            std::printf("scaling fit failed: %s\n", e.what());
        }
    }

    if (f.period) {
        if (!series) throw std::invalid_argument("--period needs --moments or --dist");
        try {
            const qw::PeriodEstimate est = qw::estimate_period(series->mean_displacement);
            report["period_estimate"] = {{"period", est.period},
                                         {"method", "spectral_peak"},
                                         {"peak_sharpness", est.peak_sharpness}};
            std::printf("period: %s steps (peak sharpness %s)\n",
                        qw::io::format_double(est.period).c_str(),
                        qw::io::format_double(est.peak_sharpness).c_str());
        } catch (const qw::NoOscillationError& e) {
            report["period_estimate"] = {{"error", std::string("NoOscillation: ") + e.what()}};
            std::printf("period: NoOscillation (%s)\n", e.what());
        }
    }

    const fs::path dir(f.out_dir);
    fs::create_directories(dir);
    qw::io::atomic_write_file(dir / "report.json", report.dump(2) + "\n");
    return 0;
}

struct PredictFlags {
    int d = 0;
    int q = 1;
    double r = 1.0;
};

int run_predict(const PredictFlags& f) {
    if (f.d < 2) throw std::invalid_argument("--d must be >= 2");
    const double phi = qw::kTwoPi * static_cast<double>(f.q) / static_cast<double>(f.d);
    const double period = qw::predicted_period(phi, f.r);
    std::printf("predicted period: %s steps (phi=%s, r=%s, effective exponent %s)\n",
                qw::io::format_double(period).c_str(), qw::io::format_double(phi).c_str(),
                qw::io::format_double(f.r).c_str(),
                qw::io::format_double(qw::oracle::effective_exponent(f.r)).c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// verify

struct CheckRecord {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool gated = true;
};

class VerifyReport {
public:
    void check(const std::string& name, double value, double tolerance) {
        add({name, value, tolerance, value <= tolerance, true});
    }
    void check_flag(const std::string& name, bool ok) {
        add({name, ok ? 0.0 : 1.0, 0.0, ok, true});
    }
    void check_band(const std::string& name, double value, double lo, double hi) {
        CheckRecord rec{name, value, hi, value >= lo && value <= hi, true};
        add(rec, lo);
    }
    void info(const std::string& name, double value) {
        CheckRecord rec{name, value, 0.0, true, false};
        records_.push_back(rec);
        std::printf("[info] %-58s measured=%.3e\n", name.c_str(), value);
    }

    bool all_pass() const { return failures_ == 0; }
    int failures() const { return failures_; }

    json to_json() const {
        json checks = json::array();
        for (const auto& r : records_) {
            checks.push_back({{"name", r.name},
                              {"value", r.value},
                              {"tolerance", r.tolerance},
                              {"pass", r.pass},
                              {"gated", r.gated}});
        }
        return checks;
    }

private:
    void add(CheckRecord rec, double lo = -1.0) {
        records_.push_back(rec);
        if (!rec.pass) ++failures_;
        if (lo >= 0.0)
            std::printf("[%s] %-58s ratio=%.3f band=[%.1f,%.1f]\n", rec.pass ? " ok " : "FAIL",
                        rec.name.c_str(), rec.value, lo, rec.tolerance);
        else
            std::printf("[%s] %-58s residual=%.3e tol=%.1e\n", rec.pass ? " ok " : "FAIL",
                        rec.name.c_str(), rec.value, rec.tolerance);
    }

    std::vector<CheckRecord> records_;
    int failures_ = 0;
};

qw::StateVector random_state(int d, std::uint64_t seed) {
    qw::CounterStream rng(seed, 0);
    qw::StateVector s(d);
    for (std::size_t i = 0; i < s.size(); ++i)
        s[i] = qw::cdouble{2.0 * rng.next() - 1.0, 2.0 * rng.next() - 1.0};
    const double inv = 1.0 / std::sqrt(s.norm2());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] *= inv;
    return s;
}

double kernel_matrix_agreement(int d, int q, double theta) {
    using namespace qw;
    const double phi = kTwoPi * static_cast<double>(q) / static_cast<double>(d);
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const StateVector s0 = random_state(d, 1000 + trial);
        struct Case {
            DenseOperator op;
            StateVector evolved;
        };
        std::vector<Case> cases;
        {
            StateVector s = s0;
            apply_step(s);
            cases.push_back({oracle::dense_step(d), s});
        }
        {
            StateVector s = s0;
            apply_coin(s, theta);
            cases.push_back({oracle::dense_coin(d, theta), s});
        }
        {
            StateVector s = s0;
            apply_phase_b(s, phi);
            cases.push_back({oracle::dense_phase_b(d, phi), s});
        }
        {
            StateVector s = s0;
            apply_phase_e(s, phi, 0.75);
            cases.push_back({oracle::dense_phase_e(d, phi, 0.75), s});
        }
        {
            StateVector s = s0;
            apply_u(s, theta);
            cases.push_back({oracle::dense_walk(d, theta), s});
        }
        for (const auto& c : cases) {
            const auto via_matrix = c.op.apply(s0.amplitudes());
            for (std::size_t i = 0; i < via_matrix.size(); ++i)
                worst = std::max(worst, std::abs(via_matrix[i] - c.evolved[i]));
        }
    }
    return worst;
}

struct VerifyFlags {
    int q = 1;
    std::string out_dir = ".";
};

int run_verify(const VerifyFlags& f) {
    using namespace qw;
    using namespace qw::oracle;
    const double theta = std::numbers::pi / 4.0;
    VerifyReport rep;

    const auto dtag = [&](int d, const std::string& s) {
        return s + " (d=" + std::to_string(d) + ")";
    };

    for (const int d : {8, 16, 32}) {
        const double phi = kTwoPi * static_cast<double>(f.q) / static_cast<double>(d);
        const DenseOperator ident = DenseOperator::identity(2 * d);
        const DenseOperator s = dense_step(d);
        const DenseOperator c = dense_coin(d, theta);
        const DenseOperator pb = dense_phase_b(d, phi);
        const DenseOperator pe = dense_phase_e(d, phi);
        const DenseOperator u = dense_walk(d, theta);

        double unit = 0.0;
        for (const auto* op : {&s, &c, &pb, &pe, &u})
            unit = std::max(unit, max_abs_diff(op->adjoint() * *op, ident));
        rep.check(dtag(d, "unitarity of S, C, Phi_B, Phi_E, U"), unit, 1e-12);

        rep.check(dtag(d, "[Phi_E, C] = 0"), commutator(pe, c).max_abs(), 1e-12);
        rep.check(dtag(d, "[Phi_B, C] closed form"),
                  max_abs_diff(commutator(pb, c), coin_commutator_closed_form(d, phi, theta)),
                  1e-12);

        const StepCommutatorResidual sc = check_electric_step_commutator(d, f.q);
        rep.check(dtag(d, "[Phi_E, S] exact identity"), sc.exact, 1e-12);
        rep.check(dtag(d, "[Phi_E, S] first-order bound phi^2/2"), sc.first_order,
                  phi * phi / 2.0 + 1e-14);

        rep.check(dtag(d, "swap identity (exact form)"), exact_swap_residual(d, f.q, theta), 1e-12);
        rep.check(dtag(d, "swap first-order bound phi^2/2"), check_swap_rule(d, f.q, theta),
                  phi * phi / 2.0 + 1e-14);
    }

    rep.check("kernel/matrix agreement (20 random states, d=8)",
              kernel_matrix_agreement(8, f.q, theta), 1e-13);

    for (const int l : {2, 3, 6}) {
        const int d = 16;
        WalkConfig config;
        config.d = d;
        config.theta = theta;
        config.q = f.q;
        const double phi = config.phi();
        const double r = 1.0 - 1.0 / static_cast<double>(l);

        rep.check_flag("mean defect prefactor matches closed form (l=" + std::to_string(l) + ")",
                       mean_prefactor_identity_holds(l));

        double unit = 0.0, telescoped = 0.0, avg_resid = 0.0;
        for (int j = 0; j < l; ++j) {
            const IntervalSpec spec{l, j, phi};
            const DenseOperator exact = exact_interval_operator(spec, config);
            unit = std::max(unit,
                            max_abs_diff(exact.adjoint() * exact, DenseOperator::identity(2 * d)));
            telescoped = std::max(
                telescoped,
                max_abs_diff_interior(
                    exact, rewritten_interval_operator(spec, config, RewritePattern::Telescoped),
                    l));
        }
        rep.check("interval operator unitarity (l=" + std::to_string(l) + ")", unit, 1e-12);
        rep.check("telescoped rewrite reproduces interval, seam-safe columns (l=" +
                      std::to_string(l) + ")",
                  telescoped, 1e-12);

        // mean over defect positions of the single-step factors vs the averaged step
        for (int t = 0; t < l; ++t) {
            DenseOperator mean(2 * d);
            for (int j = 0; j < l; ++j) {
                const IntervalSpec spec{l, j, phi};
                const double n = interval_prefactor(spec, t, RewritePattern::Conventional);
                mean = mean + dense_walk(d, theta) * dense_phase_e(d, phi, r) *
                                  dense_spin_rotation_z(d, n * phi);
            }
            mean = mean.scaled(1.0 / static_cast<double>(l));
            avg_resid = std::max(avg_resid, max_abs_diff(mean, averaged_step_operator(t, r, config)));
        }
        rep.check("mean of step factors vs averaged step, bound phi^2 (l=" + std::to_string(l) +
                      ")",
                  avg_resid, phi * phi + 1e-14);

        double gauge_resid = 0.0, chi_err = 0.0;
        for (long long t = 0; t <= 20; t += 4) {
            const GaugeEquivalence g = gauge_equivalence_check(t, r, config);
            gauge_resid = std::max(gauge_resid, g.residual);
            chi_err = std::max(chi_err, std::abs(g.chi - phi * r * (1.0 - r)));
        }
        rep.check("gauge equivalence residual, t=0..20 (l=" + std::to_string(l) + ")", gauge_resid,
                  1e-12);
        rep.check("gauge rotation chi = phi r (1-r), t=0..20 (l=" + std::to_string(l) + ")",
                  chi_err, 1e-12);
    }

    {
        WalkConfig config;
        config.d = 8;
        config.theta = theta;
        config.q = f.q;
        const GaugeEquivalence g = gauge_equivalence_check(5, 1.0, config);
        rep.check("gauge equivalence at r=1 reduces to the electric step", g.residual, 1e-12);
        rep.check("gauge rotation chi = 0 at r=1", std::abs(g.chi), 1e-12);
    }

    if (f.q != 0) {
        // O(phi^2) families: halving phi (d: 16 -> 32) should shrink residuals ~4x.
        const auto ratio_band = [&](const std::string& name, double r16, double r32) {
            rep.check_band(name + " residual ratio d=16/d=32", r16 / r32, 3.5, 4.5);
        };
        ratio_band("electric step commutator first-order",
                   check_electric_step_commutator(16, f.q).first_order,
                   check_electric_step_commutator(32, f.q).first_order);
        ratio_band("swap first-order", check_swap_rule(16, f.q, theta),
                   check_swap_rule(32, f.q, theta));

        const int l = 6;
        double mean16 = 0.0, mean32 = 0.0;
        for (const int d : {16, 32}) {
            WalkConfig config;
            config.d = d;
            config.theta = theta;
            config.q = f.q;
            const double phi = config.phi();
            const double r = 1.0 - 1.0 / static_cast<double>(l);
            double worst = 0.0;
            for (int t = 0; t < l; ++t) {
                DenseOperator mean(2 * d);
                for (int j = 0; j < l; ++j) {
                    const IntervalSpec spec{l, j, phi};
                    const double n = interval_prefactor(spec, t, RewritePattern::Conventional);
                    mean = mean + dense_walk(d, theta) * dense_phase_e(d, phi, r) *
                                      dense_spin_rotation_z(d, n * phi);
                }
                mean = mean.scaled(1.0 / static_cast<double>(l));
                worst = std::max(worst, max_abs_diff(mean, averaged_step_operator(t, r, config)));
            }
            (d == 16 ? mean16 : mean32) = worst;
        }
        ratio_band("mean of step factors vs averaged step (l=6)", mean16, mean32);

        // The interval rewrite with the conventional prefactors deviates at first
        // order (its d=16/d=32 ratio sits near 2, not 4); reported, not gated.
        // The telescoped rewrite above is the exact form of the same identity.
        for (int j = 0; j < l; ++j) {
            double r16 = 0.0, r32 = 0.0;
            for (const int d : {16, 32}) {
                WalkConfig config;
                config.d = d;
                config.theta = theta;
                config.q = f.q;
                const IntervalSpec spec{l, j, config.phi()};
                const double res = max_abs_diff_interior(
                    exact_interval_operator(spec, config),
                    rewritten_interval_operator(spec, config, RewritePattern::Conventional), l);
                (d == 16 ? r16 : r32) = res;
            }
            rep.info("conventional interval rewrite ratio d=16/d=32 (l=6, j=" + std::to_string(j) +
                         ")",
                     r16 / r32);
        }
    }

    std::printf("verify: %s (%d failures)\n", rep.all_pass() ? "all gated checks passed" : "FAILED",
                rep.failures());

    const fs::path dir(f.out_dir);
    fs::create_directories(dir);
    json report{{"manifest",
                 {{"artifact", qw::io::kArtifactName},
                  {"version", qw::io::kArtifactVersion},
                  {"outputs", {"verify_report.json"}}}},
                {"verify",
                 {{"q", f.q}, {"checks", rep.to_json()}, {"all_pass", rep.all_pass()}}}};
    qw::io::atomic_write_file(dir / "verify_report.json", report.dump(2) + "\n");
    return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-time quantum walks on a cycle with stochastic gauge fields"};
    app.require_subcommand(1);

    WalkFlags evolve_flags;
    auto* evolve = app.add_subcommand(
        "evolve", "deterministic or single-realization walk; writes distributions + moments");
    add_walk_flags(evolve, evolve_flags, false);

    WalkFlags ensemble_flags;
    auto* ensemble = app.add_subcommand(
        "ensemble", "probability-averaged ensemble of stochastic realizations");
    add_walk_flags(ensemble, ensemble_flags, true);

    AnalyzeFlags analyze_flags;
    auto* analyze = app.add_subcommand("analyze", "fit Gaussians, scaling exponents, periods");
    analyze->add_option("--dist", analyze_flags.dist_path, "distributions CSV produced by this tool");
    analyze->add_option("--moments", analyze_flags.moments_path, "moments CSV produced by this tool");
    analyze->add_flag("--gaussian", analyze_flags.gaussian, "log-parabola fit of a distribution row");
    analyze->add_option("--at", analyze_flags.at_t, "time step for --gaussian (default: last)");
    analyze->add_flag("--scaling", analyze_flags.scaling, "variance scaling exponent fit");
    analyze->add_option("--window", analyze_flags.window, "scaling window <tmin>:<tmax>");
    analyze->add_flag("--period", analyze_flags.period, "spectral period estimate");
    analyze->add_option("--x0", analyze_flags.x0, "origin site (default: d/2)");
    analyze->add_option("--out", analyze_flags.out_dir, "output directory");

    PredictFlags predict_flags;
    auto* predict = app.add_subcommand("predict", "closed-form oscillation period");
    predict->add_option("--d", predict_flags.d, "cycle length")->required();
    predict->add_option("--q", predict_flags.q, "field quantum");
    predict->add_option("--r", predict_flags.r, "field application probability");

    VerifyFlags verify_flags;
    auto* verify = app.add_subcommand("verify", "run the operator identity suite");
    verify->add_option("--q", verify_flags.q, "field quantum");
    verify->add_option("--out", verify_flags.out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(evolve)) return run_evolve(evolve_flags);
        if (app.got_subcommand(ensemble)) return run_ensemble_cmd(ensemble_flags);
        if (app.got_subcommand(analyze)) return run_analyze(analyze_flags);
        if (app.got_subcommand(predict)) return run_predict(predict_flags);
        if (app.got_subcommand(verify)) return run_verify(verify_flags);
    } catch (const qw::io::CsvError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
