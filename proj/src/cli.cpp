#include "nclab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nclab/algebra.hpp"
#include "nclab/dynamics.hpp"
#include "nclab/csv.hpp"
#include "nclab/errors.hpp"
#include "nclab/kernels.hpp"
#include "nclab/observables.hpp"
#include "nclab/report.hpp"
#include "nclab/wigner.hpp"

namespace nclab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const std::vector<std::string> kKnownKeys = {
    "m",      "omega",  "hbar", "theta", "eta",  "ratio",      "mode",  "gauge_ratio", "grid_points",
    "t_max",  "dt",     "stride", "source", "integrator", "x", "y",     "pi_x",        "pi_y",
    "n1",     "n2",     "plane", "extent", "residual_points", "which", "ratios"};

struct Config {
    PhysicalParams params;
    std::optional<RatioSpec> ratio;
    double gauge_ratio = 1.0;
    std::optional<std::size_t> grid_points;
    std::optional<double> t_max;  // Omega t
    std::optional<double> dt;     // Omega t
    std::size_t stride = 1;
    std::string source = "closed_form";
    std::string integrator = "both";
    std::optional<InitialConditions> ic;
    QuantumNumbers qn;
    std::string plane = "Q1P1";
    double extent = 3.0;
    std::size_t residual_points = 20;
    int which = 1;
    std::vector<double> ratios = {0.001, 0.002, 0.004};
    json merged;
};

template <typename T>
T get(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
    }
}

Config resolve(const json& merged) {
    for (const auto& [key, _] : merged.items()) {
        if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    Config c;
    c.merged = merged;
    const double m = get(merged, "m", 1.0);
    const double omega = get(merged, "omega", 1.0);
    const double hbar = get(merged, "hbar", 1.0);
    if (merged.contains("ratio")) {
        if (merged.contains("theta") || merged.contains("eta")) {
            throw ConfigError("give either ratio (+mode) or theta/eta, not both");
        }
        RatioSpec spec{get(merged, "ratio", 0.0), ratio_mode_from_string(get<std::string>(merged, "mode", "single_theta"))};
        c.ratio = spec;
        c.params = params_from_ratio(spec, m, omega, hbar);
    } else {
        c.params = {m, omega, hbar, get(merged, "theta", 0.0), get(merged, "eta", 0.0)};
    }
    validate(c.params);

    c.gauge_ratio = get(merged, "gauge_ratio", 1.0);
    if (merged.contains("grid_points")) {
        const auto n = get<long long>(merged, "grid_points", 0);
        if (n < 2) throw ConfigError("grid_points must be >= 2");
        c.grid_points = static_cast<std::size_t>(n);
    }
    if (merged.contains("t_max")) {
        c.t_max = get(merged, "t_max", 0.0);
        if (!(*c.t_max > 0.0)) throw ConfigError("t_max must be > 0");
    }
    if (merged.contains("dt")) {
        c.dt = get(merged, "dt", 0.0);
        if (!(*c.dt > 0.0)) throw ConfigError("dt must be > 0");
    }
    const auto stride = get<long long>(merged, "stride", 1);
    if (stride < 1) throw ConfigError("stride must be >= 1");
    c.stride = static_cast<std::size_t>(stride);
    c.source = get<std::string>(merged, "source", c.source);
    c.integrator = get<std::string>(merged, "integrator", c.integrator);
    if (c.integrator != "analytic" && c.integrator != "rk4" && c.integrator != "both") {
        throw ConfigError("integrator must be analytic, rk4 or both");
    }
    if (merged.contains("x") || merged.contains("y") || merged.contains("pi_x") || merged.contains("pi_y")) {
        c.ic = InitialConditions{get(merged, "x", 0.0), get(merged, "y", 0.0), get(merged, "pi_x", 0.0),
                                 get(merged, "pi_y", 0.0)};
    }
    c.qn = {get(merged, "n1", 0), get(merged, "n2", 0)};
    if (c.qn.n1 < 0 || c.qn.n2 < 0) throw ConfigError("n1 and n2 must be >= 0");
    c.plane = get<std::string>(merged, "plane", c.plane);
    c.extent = get(merged, "extent", c.extent);
    if (!(c.extent > 0.0)) throw ConfigError("extent must be > 0");
    const auto rp = get<long long>(merged, "residual_points", 20);
    if (rp < 0) throw ConfigError("residual_points must be >= 0");
    c.residual_points = static_cast<std::size_t>(rp);
    c.which = get(merged, "which", 1);
    if (c.which != 1 && c.which != 2) throw ConfigError("which must be 1 or 2");
    c.ratios = get(merged, "ratios", c.ratios);
    return c;
}

// Shared setup for a command run.
struct Run {
    Config cfg;
    GaugeChoice gauge;
    DerivedConstants dc;
    RunManifest manifest;
    fs::path dir;

    Run(Config c, const std::string& command, std::vector<std::string> args, fs::path out)
        : cfg(std::move(c)), dir(std::move(out)) {
        gauge = make_gauge(cfg.params, cfg.gauge_ratio);
        dc = derived_constants(cfg.params, gauge);
        manifest.params = cfg.params;
        manifest.gauge = gauge;
        manifest.dc = dc;
        manifest.command = command;
        manifest.arguments = std::move(args);
        manifest.config = cfg.merged;
    }

    int finish(std::ostream& out, const std::string& manifest_name = "manifest.json") {
        const std::string id = write_manifest(manifest, dir, manifest_name);
        for (const auto& c : manifest.checks) {
            out << (c.pass ? "PASS " : "FAIL ") << c.name << " measured=" << c.measured
                << " threshold=" << c.threshold << '\n';
        }
        out << "manifest " << (dir / manifest_name).string() << " run_id " << id << '\n';
        return manifest.all_pass() ? 0 : kChecksFailed;
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), std::numeric_limits<double>::min()); }

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------- constants

int cmd_constants(Run& run, std::ostream& out) {
    const auto& p = run.cfg.params;
    const auto& dc = run.dc;
    const double lm = solve_gauge_product(p);
    const double k = p.coupling() / 4.0;

    out << "alpha      " << fmt6(dc.alpha) << '\n'
        << "beta       " << fmt6(dc.beta) << '\n'
        << "gamma      " << fmt6(dc.gamma) << '\n'
        << "Omega      " << fmt6(dc.omega_big) << '\n'
        << "lambda*mu  " << fmt6(dc.product_lm) << '\n'
        << "gamma/Omega " << fmt6(dc.gamma / dc.omega_big) << '\n';

    auto& m = run.manifest;
    const double sub = std::abs(lm * (1.0 - lm) - k) / std::max(std::abs(k), 1e-300);
    m.add_check("gauge_product_substitution", k == 0.0 ? lm == 1.0 : sub < 1e-14, k == 0.0 ? lm - 1.0 : sub, 1e-14);
    const double w_alt = omega_big_from_params(p);
    m.add_check("omega_two_alpha_beta_vs_params", rel(dc.omega_big, w_alt) < 1e-12, rel(dc.omega_big, w_alt), 1e-12);
    const double branch = std::abs((2.0 * lm - 1.0) * (2.0 * lm - 1.0) - (1.0 - p.coupling()));
    m.add_check("branch_consistency", branch < 1e-12, branch, 1e-12);
    const double res = algebra_residual(p, run.gauge);
    m.add_check("algebra_residual", res < 1e-12, res, 1e-12);
    double spread = 0.0;
    for (double r : {0.5, 1.0, 2.0}) {
        spread = std::max(spread, rel(derived_constants(p, make_gauge(p, r)).omega_big, dc.omega_big));
    }
    m.add_check("omega_gauge_invariance", spread < 1e-12, spread, 1e-12);
    if (run.cfg.ratio) {
        const double got = dc.gamma / dc.omega_big;
        m.add_check("gamma_over_omega_target", std::abs(got - run.cfg.ratio->ratio) < 1e-12,
                    std::abs(got - run.cfg.ratio->ratio), 1e-12);
    }
    // The unit-system form omega^2 + gamma^2 - theta eta / hbar^2 only equals
    // Omega^2 when omega = 1; recorded, not checked.
    const double literal = p.omega * p.omega + dc.gamma * dc.gamma - p.coupling();
    m.measured_constants["omega_sq_unit_form_rel_dev"] = rel(dc.omega_big * dc.omega_big, literal);

    json table = {{"alpha", dc.alpha}, {"beta", dc.beta}, {"gamma", dc.gamma}, {"omega_big", dc.omega_big},
                  {"product_lm", dc.product_lm}, {"lambda", run.gauge.lambda}, {"mu", run.gauge.mu}};
    write_output(m, run.dir, "constants.json", table.dump(2) + "\n");
    return run.finish(out);
}

// ---------------------------------------------------------------- simulate

double invariant_drift(const Trajectory& traj) {
    const auto [i10, i20] = invariant_pair(traj.samples.front().state, traj.constants);
    const double scale = std::max({std::abs(i10), std::abs(i20), std::numeric_limits<double>::min()});
    double worst = 0.0;
    for (const auto& s : traj.samples) {
        const auto [i1, i2] = invariant_pair(s.state, traj.constants);
        worst = std::max({worst, std::abs(i1 - i10) / scale, std::abs(i2 - i20) / scale});
    }
    return worst;
}

int cmd_simulate(Run& run, std::ostream& out) {
    const auto& dc = run.dc;
    const double W = dc.omega_big;
    const InitialConditions ic = run.cfg.ic.value_or(ground_mode_ic(dc, run.cfg.params.hbar));
    const double t_end = run.cfg.t_max.value_or(20.0 * kTwoPi) / W;
    const double dt = run.cfg.dt.value_or(kTwoPi / 2000.0) / W;
    auto& m = run.manifest;

    std::optional<Trajectory> analytic, rk4;
    if (run.cfg.integrator != "rk4") {
        analytic = sample_analytic(ic, dc, t_end, dt, run.cfg.stride);
        std::ostringstream csv;
        write_trajectory_csv(csv, *analytic);
        write_output(m, run.dir, "trajectory_analytic.csv", csv.str());
        const double drift = invariant_drift(*analytic);
        m.add_check("analytic_invariant_drift", drift < 1e-10, drift, 1e-10);
    }
    if (run.cfg.integrator != "analytic") {
        rk4 = integrate_numeric(ic, dc, t_end, dt, run.cfg.stride);
        std::ostringstream csv;
        write_trajectory_csv(csv, *rk4);
        write_output(m, run.dir, "trajectory_rk4.csv", csv.str());
        const double drift = invariant_drift(*rk4);
        m.add_check("rk4_invariant_drift", drift < 1e-8, drift, 1e-8);
    }
    if (analytic && rk4) {
        double sup = 0.0;
        for (std::size_t k = 0; k < analytic->samples.size(); ++k) {
            const auto a = analytic->samples[k].state.as_array();
            const auto b = rk4->samples[k].state.as_array();
            for (int c = 0; c < 4; ++c) sup = std::max(sup, std::abs(a[c] - b[c]));
        }
        m.add_check("analytic_vs_rk4_sup_norm", sup < 1e-8, sup, 1e-8);
    }
    m.measured_constants["steps"] = std::ceil(t_end / dt - 1e-9);
    return run.finish(out);
}

// ---------------------------------------------------------------- xi

std::string series_csv(const SectorEnergySeries& s) {
    std::ostringstream csv;
    write_series_csv(csv, s);
    return csv.str();
}

double partition_error(const SectorEnergySeries& s) {
    double worst = 0.0;
    for (std::size_t k = 0; k < s.times.size(); ++k) worst = std::max(worst, std::abs(s.xi1[k] + s.xi2[k] - 1.0));
    return worst;
}

double max_column_diff(const SectorEnergySeries& a, const SectorEnergySeries& b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.times.size(); ++k) {
        worst = std::max({worst, std::abs(a.xi1[k] - b.xi1[k]), std::abs(a.xi2[k] - b.xi2[k])});
    }
    return worst;
}

int cmd_xi(Run& run, std::ostream& out) {
    const XiSource source = xi_source_from_string(run.cfg.source);
    const XiModel model = XiModel::ground_mode(run.cfg.params, run.gauge);
    const auto grid = kernels::linspace(0.0, run.cfg.t_max.value_or(40.0), run.cfg.grid_points.value_or(4000));
    const SectorEnergySeries series = kernels::xi_series(model, source, grid);
    auto& m = run.manifest;
    write_output(m, run.dir, "xi_" + std::string(to_string(source)) + ".csv", series_csv(series));

    if (source == XiSource::closed_form || source == XiSource::closed_signed || source == XiSource::trajectory) {
        const double err = partition_error(series);
        m.add_check("partition_xi1_plus_xi2", err < 1e-10, err, 1e-10);
    }
    if (source != XiSource::trajectory) {
        const auto traj = kernels::xi_series(model, XiSource::trajectory, grid);
        m.measured_constants["max_abs_diff_vs_trajectory"] = max_column_diff(series, traj);
    }
    m.measured_constants["gamma_minus_over_Omega"] = gamma_minus(run.cfg.params) / run.dc.omega_big;
    return run.finish(out);
}

// ---------------------------------------------------------------- wigner

// Deterministic uniform in [0,1) independent of the standard library's distributions.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<PhasePoint> residual_points(std::size_t n, const GaussianWidths& w, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<PhasePoint> pts;
    while (pts.size() < n) {
        std::array<double, 4> u{};
        double r2 = 0.0;
        for (auto& v : u) {
            v = 4.0 * unit_uniform(rng) - 2.0;
            r2 += v * v;
        }
        if (r2 > 4.0) continue;
        pts.push_back({u[0] * w.q, u[1] * w.q, u[2] * w.p, u[3] * w.p});
    }
    return pts;
}

int cmd_wigner(Run& run, std::ostream& out) {
    const auto& dc = run.dc;
    const double hbar = run.cfg.params.hbar;
    const QuantumNumbers qn = run.cfg.qn;
    const GaussianWidths w = gaussian_widths(dc, hbar);
    auto& m = run.manifest;

    // Slice: the two named coordinates vary, the others are zero.
    const std::string& plane = run.cfg.plane;
    auto axis = [&](std::string_view name) -> int {
        if (name == "Q1") return 0;
        if (name == "Q2") return 1;
        if (name == "P1") return 2;
        if (name == "P2") return 3;
        throw ConfigError("plane must name two of Q1,Q2,P1,P2, e.g. Q1P1");
    };
    if (plane.size() != 4) throw ConfigError("plane must name two of Q1,Q2,P1,P2, e.g. Q1P1");
    const int a = axis(std::string_view(plane).substr(0, 2));
    const int b = axis(std::string_view(plane).substr(2, 2));
    if (a == b) throw ConfigError("plane axes must differ");
    const std::size_t n = run.cfg.grid_points.value_or(101);
    auto scale = [&](int ax) { return (ax < 2 ? w.q : w.p) * run.cfg.extent; };
    const auto ga = kernels::linspace(-scale(a), scale(a), n);
    const auto gb = kernels::linspace(-scale(b), scale(b), n);
    std::vector<PhasePoint> pts;
    pts.reserve(n * n);
    for (double va : ga) {
        for (double vb : gb) {
            std::array<double, 4> z{};
            z[a] = va;
            z[b] = vb;
            pts.push_back(PhasePoint::from_array(z));
        }
    }
    const auto rho = kernels::wigner_values(pts, qn, dc, hbar);
    std::ostringstream slice;
    slice << "Q1,Q2,P1,P2,rho\n";
    for (std::size_t k = 0; k < pts.size(); ++k) {
        csv::row(slice, {pts[k].Q1, pts[k].Q2, pts[k].P1, pts[k].P2, rho[k]});
    }
    write_output(m, run.dir, "wigner_slice.csv", slice.str());

    // Stargenvalue residuals at random points within two Gaussian widths.
    const auto rpts = residual_points(run.cfg.residual_points, w, 20240217);
    const auto res = kernels::residual_scan(rpts, qn, dc, hbar);
    const double energy = energy_level(qn, dc, hbar);
    json records = json::array();
    double worst_rel = 0.0, worst_im = 0.0;
    for (std::size_t k = 0; k < rpts.size(); ++k) {
        const double r = wigner_eigenfunction(rpts[k], qn, dc, hbar);
        const double denom = std::abs(energy * r);
        const double relres = std::abs(res[k]) / denom;
        worst_rel = std::max(worst_rel, relres);
        worst_im = std::max(worst_im, std::abs(res[k].imag()) / denom);
        records.push_back({{"point", {rpts[k].Q1, rpts[k].Q2, rpts[k].P1, rpts[k].P2}},
                           {"n1", qn.n1},
                           {"n2", qn.n2},
                           {"residual_re", res[k].real()},
                           {"residual_im", res[k].imag()},
                           {"rel", relres}});
    }
    write_output(m, run.dir, "wigner_residuals.json", records.dump(2) + "\n");
    if (!rpts.empty()) {
        m.add_check("stargen_residual_rel", worst_rel < 1e-6, worst_rel, 1e-6);
        m.add_check("stargen_residual_imag_rel", worst_im < 1e-6, worst_im, 1e-6);
    }

    // Normalisation of the stargenfunction at three quadrature resolutions.
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int nodes : {20, 30, 40}) {
        const double norm = kernels::wigner_overlap(qn, nullptr, dc, hbar, nodes);
        m.measured_constants["normalization_nodes_" + std::to_string(nodes)] = norm;
        lo = std::min(lo, norm);
        hi = std::max(hi, norm);
    }
    m.add_check("normalization_stable_across_grids", hi - lo < 1e-6, hi - lo, 1e-6);
    m.measured_constants["integral_rho_squared"] = kernels::wigner_overlap(qn, &qn, dc, hbar, 40);
    m.measured_constants["energy"] = energy;
    return run.finish(out);
}

// ---------------------------------------------------------------- figure

int cmd_figure(Run& run, std::ostream& out) {
    const XiModel model = XiModel::ground_mode(run.cfg.params, run.gauge);
    const auto& dc = run.dc;
    const double r = dc.gamma / dc.omega_big;
    auto& m = run.manifest;
    const double beat = r > 0.0 ? std::numbers::pi / r : 40.0;  // one beat period in Omega t
    const auto full = kernels::linspace(0.0, run.cfg.t_max.value_or(beat), run.cfg.grid_points.value_or(200000));
    const auto zoom = kernels::linspace(0.0, 40.0, 4000);
    m.measured_constants["gamma_over_Omega"] = r;

    if (run.cfg.which == 1) {
        const auto series = kernels::xi_series(model, XiSource::closed_form, full);
        const auto close = kernels::xi_series(model, XiSource::closed_form, zoom);
        write_output(m, run.dir, "figure1_full.csv", series_csv(series));
        write_output(m, run.dir, "figure1_zoom.csv", series_csv(close));
        const double max1 = *std::max_element(series.xi1.begin(), series.xi1.end());
        const double min2 = *std::min_element(series.xi2.begin(), series.xi2.end());
        m.add_check("envelope_max_xi1", std::abs(max1 - 1.0) <= 1e-3, max1, 1e-3);
        m.add_check("envelope_min_xi2", std::abs(min2) <= 1e-3, min2, 1e-3);
        if (run.cfg.params.eta == 0.0) {
            m.add_check("zoom_start_xi1", std::abs(close.xi1[0] - 0.5 * (1.0 + r)) <= 1e-6, close.xi1[0], 1e-6);
            m.add_check("zoom_start_xi2", std::abs(close.xi2[0] - 0.5 * (1.0 - r)) <= 1e-6, close.xi2[0], 1e-6);
        }
        m.measured_constants["trajectory_start_xi1"] = model.evaluate(XiSource::trajectory, 0.0, Sector::one) /
                                                        (run.cfg.params.hbar * dc.omega_big);
        m.measured_constants["closed_form_start_xi1"] = close.xi1[0];
        return run.finish(out);
    }

    const double unit = run.cfg.params.hbar * dc.omega_big * dc.omega_big;
    auto fig2 = [&](const std::vector<double>& grid) {
        std::ostringstream csv;
        csv << "Omega_t,xidot1_over_hOmega2,xidot1_first_order_over_hOmega2,amplitude_gamma_over_Omega\n";
        for (double wt : grid) {
            const double t = wt / dc.omega_big;
            csv::row(csv, {wt, xi_dot_closed(dc, run.cfg.params, t, Sector::one) / unit,
                           xi_dot_first_order(dc, t, Sector::one, run.cfg.params.hbar) / unit, r});
        }
        return csv.str();
    };
    write_output(m, run.dir, "figure2_full.csv", fig2(full));
    write_output(m, run.dir, "figure2_zoom.csv", fig2(zoom));

    // Oscillation amplitude over the first Omega period of sin(2 Omega t).
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double wt : kernels::linspace(0.0, std::numbers::pi, 20001)) {
        const double v = xi_dot_closed(dc, run.cfg.params, wt / dc.omega_big, Sector::one) / unit;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double amplitude = 0.5 * (hi - lo);
    m.measured_constants["xidot1_amplitude_over_hOmega2"] = amplitude;
    if (r > 0.0) m.add_check("xidot_amplitude_vs_gamma_over_Omega", rel(amplitude, r) < 1e-3, rel(amplitude, r), 1e-3);
    return run.finish(out);
}

// ---------------------------------------------------------------- sweep

int cmd_sweep(const Config& base, const std::vector<std::string>& args, const fs::path& dir, std::ostream& out) {
    json index;
    index["tool_version"] = std::string(kToolVersion);
    index["cells"] = json::array();
    const RatioMode mode = base.ratio ? base.ratio->mode : ratio_mode_from_string(get<std::string>(base.merged, "mode", "single_theta"));
    bool all_pass = true;
    std::vector<double> errors;

    for (std::size_t k = 0; k < base.ratios.size(); ++k) {
        json cell_cfg = base.merged;
        cell_cfg.erase("theta");
        cell_cfg.erase("eta");
        cell_cfg.erase("ratios");
        cell_cfg["ratio"] = base.ratios[k];
        cell_cfg["mode"] = std::string(to_string(mode));
        char name[32];
        std::snprintf(name, sizeof name, "cell_%03zu", k);
        Run run(resolve(cell_cfg), "sweep", args, dir / name);

        const XiModel model = XiModel::ground_mode(run.cfg.params, run.gauge);
        const XiSource exact = run.cfg.params.theta * run.cfg.params.eta == 0.0 ? XiSource::degenerate_form
                                                                                 : XiSource::closed_form;
        const auto grid = kernels::linspace(0.0, run.cfg.t_max.value_or(10.0), run.cfg.grid_points.value_or(10001));
        const auto ex = kernels::xi_series(model, exact, grid);
        const auto fo = kernels::xi_series(model, XiSource::first_order, grid);
        std::ostringstream csv;
        csv << "Omega_t,xi1_exact_over_hOmega,xi1_first_order_over_hOmega,abs_error\n";
        double sup = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double e = std::abs(ex.xi1[i] - fo.xi1[i]);
            sup = std::max(sup, e);
            csv::row(csv, {grid[i], ex.xi1[i], fo.xi1[i], e});
        }
        write_output(run.manifest, run.dir, "first_order_error.csv", csv.str());
        run.manifest.measured_constants["first_order_sup_error"] = sup;
        run.manifest.measured_constants["reference_source"] = std::string(to_string(exact));
        const double part = partition_error(ex);
        run.manifest.add_check("partition_xi1_plus_xi2", part < 1e-10, part, 1e-10);
        std::ostringstream sink;
        const int rc = run.finish(sink);
        all_pass = all_pass && rc == 0;
        errors.push_back(sup);
        index["cells"].push_back({{"ratio", base.ratios[k]},
                                  {"dir", name},
                                  {"run_id", run.manifest.run_id()},
                                  {"first_order_sup_error", sup}});
        out << name << " ratio=" << base.ratios[k] << " first_order_sup_error=" << sup << '\n';
    }
    json orders = json::array();
    for (std::size_t k = 1; k < errors.size(); ++k) {
        orders.push_back(std::log(errors[k] / errors[k - 1]) / std::log(base.ratios[k] / base.ratios[k - 1]));
    }
    index["measured_error_order_in_ratio"] = orders;
    fs::create_directories(dir);
    std::ofstream(dir / "index.json") << index.dump(2) << '\n';
    out << "index " << (dir / "index.json").string() << '\n';
    return all_pass ? 0 : kChecksFailed;
}

// ---------------------------------------------------------------- plumbing

struct Flags {
    std::string config;
    std::string out;
    std::optional<double> ratio, gauge_ratio, t_max, dt, m, omega, hbar, theta, eta, x, y, pi_x, pi_y, extent;
    std::optional<std::string> mode, source, integrator, plane;
    std::optional<long long> grid_points, stride, n1, n2, residual_points;
    std::optional<int> which;
    std::vector<double> ratios;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON config file");
    sub->add_option("--out", f.out, "output root directory (default $NCLAB_OUT or ./nclab_out)");
    sub->add_option("--ratio", f.ratio, "target gamma/Omega");
    sub->add_option("--mode", f.mode, "single_theta | symmetric");
    sub->add_option("--gauge-ratio", f.gauge_ratio, "SW gauge ratio lambda/mu");
    sub->add_option("--grid-points", f.grid_points, "number of grid points");
    sub->add_option("--t-max", f.t_max, "final time, in units of Omega t");
    sub->add_option("--dt", f.dt, "time step, in units of Omega t");
    sub->add_option("--stride", f.stride, "keep every n-th trajectory sample");
    sub->add_option("--m", f.m, "mass");
    sub->add_option("--omega", f.omega, "oscillator frequency");
    sub->add_option("--hbar", f.hbar, "Planck constant");
    sub->add_option("--theta", f.theta, "position noncommutativity");
    sub->add_option("--eta", f.eta, "momentum noncommutativity");
}

json merge(const Flags& f) {
    json merged = json::object();
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw ConfigError("cannot read config file " + f.config);
        try {
            merged = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("invalid JSON in ") + f.config + ": " + e.what());
        }
        if (!merged.is_object()) throw ConfigError("config must be a JSON object");
    }
    auto set = [&](const char* key, const auto& opt) {
        if (opt) merged[key] = *opt;
    };
    if (f.ratio) {
        merged.erase("theta");
        merged.erase("eta");
    }
    if (f.theta || f.eta) merged.erase("ratio");
    set("ratio", f.ratio);
    set("mode", f.mode);
    set("gauge_ratio", f.gauge_ratio);
    set("grid_points", f.grid_points);
    set("t_max", f.t_max);
    set("dt", f.dt);
    set("stride", f.stride);
    set("m", f.m);
    set("omega", f.omega);
    set("hbar", f.hbar);
    set("theta", f.theta);
    set("eta", f.eta);
    set("x", f.x);
    set("y", f.y);
    set("pi_x", f.pi_x);
    set("pi_y", f.pi_y);
    set("source", f.source);
    set("integrator", f.integrator);
    set("n1", f.n1);
    set("n2", f.n2);
    set("plane", f.plane);
    set("extent", f.extent);
    set("residual_points", f.residual_points);
    set("which", f.which);
    if (!f.ratios.empty()) merged["ratios"] = f.ratios;
    return merged;
}

fs::path output_root(const Flags& f) {
    if (!f.out.empty()) return f.out;
    if (const char* env = std::getenv("NCLAB_OUT"); env && *env) return env;
    return "nclab_out";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Noncommutative 2-D oscillator: dynamics, sector energies and Wigner stargenfunctions"};
    app.require_subcommand(1);
    Flags f;

    auto* constants = app.add_subcommand("constants", "derived constants and consistency checks");
    auto* simulate = app.add_subcommand("simulate", "analytic and RK4 trajectories");
    auto* xi = app.add_subcommand("xi", "sector-energy series");
    auto* wigner = app.add_subcommand("wigner", "stargenfunction slices, residuals and normalisation");
    auto* figure = app.add_subcommand("figure", "data behind the sector-energy figures");
    auto* sweep = app.add_subcommand("sweep", "first-order error over a grid of gamma/Omega");
    for (auto* sub : {constants, simulate, xi, wigner, figure, sweep}) add_common(sub, f);

    simulate->add_option("--integrator", f.integrator, "analytic | rk4 | both");
    simulate->add_option("--x", f.x);
    simulate->add_option("--y", f.y);
    simulate->add_option("--pi-x", f.pi_x);
    simulate->add_option("--pi-y", f.pi_y);
    xi->add_option("--source", f.source, "closed_form | closed_signed | degenerate_form | first_order | trajectory");
    wigner->add_option("--n1", f.n1);
    wigner->add_option("--n2", f.n2);
    wigner->add_option("--plane", f.plane, "slice plane, e.g. Q1P1");
    wigner->add_option("--extent", f.extent, "slice half-width in Gaussian widths");
    wigner->add_option("--residual-points", f.residual_points);
    figure->add_option("--which", f.which, "1 or 2");
    sweep->add_option("--ratios", f.ratios, "gamma/Omega values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const json merged = merge(f);
        const Config cfg = resolve(merged);
        const fs::path root = output_root(f);
        if (sweep->parsed()) return cmd_sweep(cfg, args, root / "sweep", out);

        std::string name;
        for (auto* sub : {constants, simulate, xi, wigner, figure}) {
            if (sub->parsed()) name = sub->get_name();
        }
        fs::path dir = root / name;
        if (figure->parsed()) dir = root / ("figure" + std::to_string(cfg.which));
        Run run(cfg, name, args, dir);
        if (constants->parsed()) return cmd_constants(run, out);
        if (simulate->parsed()) return cmd_simulate(run, out);
        if (xi->parsed()) return cmd_xi(run, out);
        if (wigner->parsed()) return cmd_wigner(run, out);
        return cmd_figure(run, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace nclab::cli
