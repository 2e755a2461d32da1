#include "nclab/dynamics.hpp"

#include <cmath>
#include <ostream>

#include "nclab/csv.hpp"
#include "nclab/errors.hpp"

namespace nclab {

PhaseState eom_rhs(const PhaseState& s, const DerivedConstants& dc) {
    const double a2 = 2.0 * dc.alpha * dc.alpha;
    const double b2 = 2.0 * dc.beta * dc.beta;
    const double g = dc.gamma;
    return {
        b2 * s.P1 + g * s.Q2,
        b2 * s.P2 - g * s.Q1,
        -a2 * s.Q1 + g * s.P2,
        -a2 * s.Q2 - g * s.P1,
    };
}

PhaseState propagate_analytic(const InitialConditions& ic, const DerivedConstants& dc, double t) {
    const double cO = std::cos(dc.omega_big * t);
    const double sO = std::sin(dc.omega_big * t);
    const double cg = std::cos(dc.gamma * t);
    const double sg = std::sin(dc.gamma * t);
    const double ba = dc.beta_over_alpha();
    const double ab = dc.alpha_over_beta();
    const auto& [x, y, px, py] = ic;

    PhaseState s;
    s.Q1 = x * cO * cg + y * cO * sg + ba * (py * sO * sg + px * sO * cg);
    s.Q2 = y * cO * cg - x * cO * sg - ba * (px * sO * sg - py * sO * cg);
    s.P1 = px * cO * cg + py * cO * sg - ab * (y * sO * sg + x * sO * cg);
    s.P2 = py * cO * cg - px * cO * sg + ab * (x * sO * sg - y * sO * cg);
    return s;
}

namespace {

PhaseState axpy(const PhaseState& s, double h, const PhaseState& k) {
    return {s.Q1 + h * k.Q1, s.Q2 + h * k.Q2, s.P1 + h * k.P1, s.P2 + h * k.P2};
}

bool finite(const PhaseState& s) {
    return std::isfinite(s.Q1) && std::isfinite(s.Q2) && std::isfinite(s.P1) && std::isfinite(s.P2);
}

std::size_t step_count(double t_end, double dt) {
    if (!(dt > 0.0) || !(t_end > 0.0) || !std::isfinite(dt) || !std::isfinite(t_end)) {
        throw InvalidParams("integration requires dt > 0 and t_end > 0");
    }
    return static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
}

template <typename Advance>
Trajectory build(const DerivedConstants& dc, double t_end, double dt, std::size_t stride,
                 const PhaseState& start, Advance&& advance) {
    if (stride == 0) stride = 1;
    const std::size_t n = step_count(t_end, dt);
    const double h = t_end / static_cast<double>(n);

    Trajectory traj;
    traj.constants = dc;
    traj.step = h * static_cast<double>(stride);
    traj.samples.reserve(n / stride + 2);
    traj.samples.push_back({0.0, start});

    PhaseState s = start;
    for (std::size_t k = 1; k <= n; ++k) {
        const double t = static_cast<double>(k) * h;
        s = advance(s, t, h);
        if (!finite(s)) throw NonFiniteState("state overflowed at t = " + std::to_string(t));
        if (k % stride == 0 || k == n) traj.samples.push_back({t, s});
    }
    return traj;
}

}  // namespace

Trajectory integrate_numeric(const InitialConditions& ic, const DerivedConstants& dc, double t_end,
                             double dt, std::size_t stride) {
    return build(dc, t_end, dt, stride, ic.as_state(),
                 [&dc](const PhaseState& s, double, double h) {
                     const PhaseState k1 = eom_rhs(s, dc);
                     const PhaseState k2 = eom_rhs(axpy(s, 0.5 * h, k1), dc);
                     const PhaseState k3 = eom_rhs(axpy(s, 0.5 * h, k2), dc);
                     const PhaseState k4 = eom_rhs(axpy(s, h, k3), dc);
                     return PhaseState{
                         s.Q1 + h / 6.0 * (k1.Q1 + 2.0 * k2.Q1 + 2.0 * k3.Q1 + k4.Q1),
                         s.Q2 + h / 6.0 * (k1.Q2 + 2.0 * k2.Q2 + 2.0 * k3.Q2 + k4.Q2),
                         s.P1 + h / 6.0 * (k1.P1 + 2.0 * k2.P1 + 2.0 * k3.P1 + k4.P1),
                         s.P2 + h / 6.0 * (k1.P2 + 2.0 * k2.P2 + 2.0 * k3.P2 + k4.P2),
                     };
                 });
}

Trajectory sample_analytic(const InitialConditions& ic, const DerivedConstants& dc, double t_end,
                           double dt, std::size_t stride) {
    return build(dc, t_end, dt, stride, ic.as_state(),
                 [&](const PhaseState&, double t, double) { return propagate_analytic(ic, dc, t); });
}

std::pair<double, double> invariant_pair(const PhaseState& s, const DerivedConstants& dc) {
    const double i1 = dc.alpha_over_beta() * (s.Q1 * s.Q1 + s.Q2 * s.Q2) +
                      dc.beta_over_alpha() * (s.P1 * s.P1 + s.P2 * s.P2);
    const double i2 = s.Q1 * s.P2 - s.Q2 * s.P1;
    return {i1, i2};
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,Omega_t,Q1,Q2,P1,P2\n";
    for (const auto& [t, s] : traj.samples) {
        csv::row(out, {t, traj.constants.omega_big * t, s.Q1, s.Q2, s.P1, s.P2});
    }
}

}  // namespace nclab
