#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "nclab/algebra.hpp"

namespace nclab {

/// Free parameters (x, y, pi_x, pi_y) of the closed-form solution; they are
/// the state at t = 0.
struct InitialConditions {
    double x = 0.0;
    double y = 0.0;
    double pi_x = 0.0;
    double pi_y = 0.0;

    PhaseState as_state() const { return {x, y, pi_x, pi_y}; }
};

struct TrajectorySample {
    double t = 0.0;
    PhaseState state;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double step = 0.0;  // spacing between stored samples
    DerivedConstants constants;
};

/// Hamilton's equations of the commutative-frame Hamiltonian
///   H = alpha^2 Q^2 + beta^2 Pi^2 + gamma (Pi1 Q2 - Pi2 Q1).
PhaseState eom_rhs(const PhaseState& state, const DerivedConstants& dc);

/// Closed-form solution of the equations of motion at time t.
PhaseState propagate_analytic(const InitialConditions& ic, const DerivedConstants& dc, double t);

/// Fixed-step classical RK4. The step is shrunk to t_end / ceil(t_end / dt)
/// so the grid ends exactly on t_end. Every stride-th step is stored (the
/// first and last states are always kept).
Trajectory integrate_numeric(const InitialConditions& ic, const DerivedConstants& dc, double t_end,
                             double dt, std::size_t stride = 1);

/// Analytic trajectory on the same grid as integrate_numeric would use.
Trajectory sample_analytic(const InitialConditions& ic, const DerivedConstants& dc, double t_end,
                           double dt, std::size_t stride = 1);

/// (I1, I2) with I1 = sum (alpha/beta) Q_i^2 + (beta/alpha) Pi_i^2 and
/// I2 = Q1 Pi2 - Q2 Pi1.
std::pair<double, double> invariant_pair(const PhaseState& state, const DerivedConstants& dc);

/// CSV with header t,Omega_t,Q1,Q2,P1,P2.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace nclab
