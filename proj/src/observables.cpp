#include "nclab/observables.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>

#include "nclab/csv.hpp"
#include "nclab/errors.hpp"

namespace nclab {

InitialConditions ground_mode_ic(const DerivedConstants& dc, double hbar) {
    const double pos = std::sqrt(dc.beta * hbar / (2.0 * dc.alpha));
    const double mom = std::sqrt(dc.alpha * hbar / (2.0 * dc.beta));
    return {pos, pos, mom, mom};
}

double mode_energy(const PhaseState& s, const DerivedConstants& dc, Sector i) {
    const double q = i == Sector::one ? s.Q1 : s.Q2;
    const double p = i == Sector::one ? s.P1 : s.P2;
    return dc.alpha * dc.beta * (dc.alpha_over_beta() * q * q + dc.beta_over_alpha() * p * p);
}

double mode_energy_closed(const DerivedConstants& dc, double hbar, double t, Sector i) {
    return 0.5 * hbar * dc.omega_big * (1.0 - parity(i) * std::sin(2.0 * dc.gamma * t));
}

double sector_energy(const NCState& nc, const PhysicalParams& params, Sector i) {
    const double q = i == Sector::one ? nc.q1 : nc.q2;
    const double p = i == Sector::one ? nc.p1 : nc.p2;
    return p * p / (2.0 * params.m) + 0.5 * params.m * params.omega * params.omega * q * q;
}

double nc_hamiltonian(const NCState& nc, const PhysicalParams& params) {
    return sector_energy(nc, params, Sector::one) + sector_energy(nc, params, Sector::two);
}

namespace {

// Shared shape of the exact laws:
//   (hbar Omega/2){1 - (-1)^i [c (cos2gt cos2Wt - (g/W) sin2gt sin2Wt) + s sin2gt]}
double xi_law(const DerivedConstants& dc, double hbar, double t, Sector i, double c, double s) {
    const double W = dc.omega_big;
    const double g = dc.gamma;
    const double c2g = std::cos(2.0 * g * t), s2g = std::sin(2.0 * g * t);
    const double c2W = std::cos(2.0 * W * t), s2W = std::sin(2.0 * W * t);
    const double bracket = c * (c2g * c2W - (g / W) * s2g * s2W) + s * s2g;
    return 0.5 * hbar * W * (1.0 - parity(i) * bracket);
}

double xi_law_dot(const DerivedConstants& dc, double hbar, double t, Sector i, double c, double s) {
    const double W = dc.omega_big;
    const double g = dc.gamma;
    const double c2g = std::cos(2.0 * g * t), s2g = std::sin(2.0 * g * t);
    const double c2W = std::cos(2.0 * W * t), s2W = std::sin(2.0 * W * t);
    const double d_cc = -2.0 * g * s2g * c2W - 2.0 * W * c2g * s2W;
    const double d_ss = 2.0 * g * c2g * s2W + 2.0 * W * s2g * c2W;
    const double bracket_dot = c * (d_cc - (g / W) * d_ss) + s * 2.0 * g * c2g;
    return -0.5 * hbar * W * parity(i) * bracket_dot;
}

// Coefficients (c, s) of the closed-form law. 1 - omega^2/Omega^2 is evaluated as
// gamma_minus^2/Omega^2, which is the same quantity without the cancellation
// near Omega = omega.
std::pair<double, double> closed_coefficients(const DerivedConstants& dc, const PhysicalParams& params) {
    const double W = dc.omega_big;
    const double raw_w = 1.0 - (params.omega * params.omega) / (W * W);
    const double raw_g = 1.0 - (dc.gamma * dc.gamma) / (W * W);
    constexpr double slack = 1e-12;
    if (raw_w < -slack || raw_g < -slack) {
        throw DomainError("1 - omega^2/Omega^2 = " + std::to_string(raw_w) + ", 1 - gamma^2/Omega^2 = " +
                          std::to_string(raw_g) + "; both must be >= 0");
    }
    const double gm = gamma_minus(params);
    const double c = std::abs(gm) / W;
    const double s = (params.omega / W) * std::sqrt(std::max(raw_g, 0.0));
    return {c, s};
}

}  // namespace

double xi_closed(const DerivedConstants& dc, const PhysicalParams& params, double t, Sector i) {
    const auto [c, s] = closed_coefficients(dc, params);
    return xi_law(dc, params.hbar, t, i, c, s);
}

double xi_closed_signed(const DerivedConstants& dc, const PhysicalParams& params, double t, Sector i) {
    auto [c, s] = closed_coefficients(dc, params);
    c = gamma_minus(params) / dc.omega_big;
    return xi_law(dc, params.hbar, t, i, c, s);
}

double xi_dot_closed(const DerivedConstants& dc, const PhysicalParams& params, double t, Sector i) {
    const auto [c, s] = closed_coefficients(dc, params);
    return xi_law_dot(dc, params.hbar, t, i, c, s);
}

double xi_closed_degenerate(const DerivedConstants& dc, const PhysicalParams& params, double t, Sector i) {
    if (params.theta * params.eta != 0.0) {
        throw DegenerateFormMisuse("requires theta*eta = 0");
    }
    const double r = dc.gamma / dc.omega_big;
    return xi_law(dc, params.hbar, t, i, r, 1.0 - r * r);
}

double xi_first_order(const DerivedConstants& dc, double t, Sector i, double hbar) {
    const double W = dc.omega_big;
    const double r = dc.gamma / W;
    return 0.5 * hbar * W * (1.0 - parity(i) * r * (2.0 * W * t + std::cos(2.0 * W * t)));
}

double xi_dot_first_order(const DerivedConstants& dc, double t, Sector i, double hbar) {
    const double W = dc.omega_big;
    return -parity(i) * hbar * dc.gamma * W * (1.0 - std::sin(2.0 * W * t));
}

double xi_trajectory(const InitialConditions& ic, const DerivedConstants& dc, const PhysicalParams& params,
                     const GaugeChoice& gauge, double t, Sector i) {
    const PhaseState s = propagate_analytic(ic, dc, t);
    return sector_energy(sw_to_nc(s, params, gauge), params, i);
}

std::string_view to_string(XiSource s) {
    switch (s) {
        case XiSource::closed_form: return "closed_form";
        case XiSource::closed_signed: return "closed_signed";
        case XiSource::degenerate_form: return "degenerate_form";
        case XiSource::first_order: return "first_order";
        case XiSource::trajectory: return "trajectory";
    }
    return "unknown";
}

XiSource xi_source_from_string(std::string_view s) {
    for (auto src : {XiSource::closed_form, XiSource::closed_signed, XiSource::degenerate_form,
                     XiSource::first_order, XiSource::trajectory}) {
        if (to_string(src) == s) return src;
    }
    throw ConfigError("unknown xi source '" + std::string(s) + "'");
}

XiModel XiModel::ground_mode(const PhysicalParams& params, const GaugeChoice& gauge) {
    XiModel model{params, gauge, derived_constants(params, gauge), {}};
    model.ic = ground_mode_ic(model.dc, params.hbar);
    return model;
}

double XiModel::evaluate(XiSource source, double t, Sector i) const {
    switch (source) {
        case XiSource::closed_form: return xi_closed(dc, params, t, i);
        case XiSource::closed_signed: return xi_closed_signed(dc, params, t, i);
        case XiSource::degenerate_form: return xi_closed_degenerate(dc, params, t, i);
        case XiSource::first_order: return xi_first_order(dc, t, i, params.hbar);
        case XiSource::trajectory: return xi_trajectory(ic, dc, params, gauge, t, i);
    }
    return 0.0;
}

void write_series_csv(std::ostream& out, const SectorEnergySeries& series) {
    out << "Omega_t,xi1_over_hOmega,xi2_over_hOmega,source\n";
    const std::string tag(to_string(series.source));
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        out << csv::num(series.times[k]) << ',' << csv::num(series.xi1[k]) << ',' << csv::num(series.xi2[k])
            << ',' << tag << '\n';
    }
}

}  // namespace nclab
