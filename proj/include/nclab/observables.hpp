#pragma once

#include <iosfwd>
#include <string_view>
#include <vector>

#include "nclab/algebra.hpp"
#include "nclab/dynamics.hpp"

namespace nclab {

/// Oscillator sector / mode index, 1 (x) or 2 (y).
enum class Sector : int { one = 1, two = 2 };

/// (-1)^i for the sector index.
constexpr double parity(Sector i) { return i == Sector::one ? -1.0 : 1.0; }

/// Initial conditions x = y = sqrt(beta hbar / 2 alpha), pi_x = pi_y = sqrt(alpha hbar / 2 beta).
InitialConditions ground_mode_ic(const DerivedConstants& dc, double hbar);

/// Commutative-frame mode energy alpha*beta*((alpha/beta) Q_i^2 + (beta/alpha) Pi_i^2).
double mode_energy(const PhaseState& state, const DerivedConstants& dc, Sector i);

/// Closed-form beating law (hbar Omega / 2)(1 - (-1)^i sin 2 gamma t) for ground-mode ICs.
double mode_energy_closed(const DerivedConstants& dc, double hbar, double t, Sector i);

/// NC-frame sector energy p_i^2/2m + m omega^2 q_i^2 / 2.
double sector_energy(const NCState& nc, const PhysicalParams& params, Sector i);

/// Full NC Hamiltonian p^2/2m + m omega^2 q^2 / 2.
double nc_hamiltonian(const NCState& nc, const PhysicalParams& params);

/// Non-stationary sector energy in closed form, with the
/// coefficient sqrt(1 - omega^2/Omega^2) in front of the Omega-frequency bracket.
/// Throws DomainError when either square-root argument is negative.
double xi_closed(const DerivedConstants& dc, const PhysicalParams& params, double t, Sector i);

/// Same law with sqrt(1 - omega^2/Omega^2) replaced by the signed gamma_minus/Omega.
/// This is what composing the trajectory with the SW map actually produces;
/// it coincides with xi_closed whenever gamma_minus >= 0.
double xi_closed_signed(const DerivedConstants& dc, const PhysicalParams& params, double t, Sector i);

/// Time derivative of xi_closed.
double xi_dot_closed(const DerivedConstants& dc, const PhysicalParams& params, double t, Sector i);

/// Reduced form valid when theta*eta = 0. Throws DegenerateFormMisuse otherwise.
double xi_closed_degenerate(const DerivedConstants& dc, const PhysicalParams& params, double t, Sector i);

/// First order in gamma: (hbar Omega/2)[1 - (-1)^i (gamma/Omega)(2 Omega t + cos 2 Omega t)].
double xi_first_order(const DerivedConstants& dc, double t, Sector i, double hbar);

/// (-1)^(i+1) hbar gamma Omega [1 - sin 2 Omega t].
double xi_dot_first_order(const DerivedConstants& dc, double t, Sector i, double hbar);

/// Propagates ic analytically, maps to the NC frame, and evaluates the sector energy.
double xi_trajectory(const InitialConditions& ic, const DerivedConstants& dc, const PhysicalParams& params,
                     const GaugeChoice& gauge, double t, Sector i);

enum class XiSource { closed_form, closed_signed, degenerate_form, first_order, trajectory };

std::string_view to_string(XiSource s);
XiSource xi_source_from_string(std::string_view s);

/// Sector energies on a grid of dimensionless times Omega*t, in units of hbar*Omega.
struct SectorEnergySeries {
    std::vector<double> times;
    std::vector<double> xi1;
    std::vector<double> xi2;
    XiSource source = XiSource::closed_form;
};

/// Everything needed to evaluate a sector-energy source at a time.
struct XiModel {
    PhysicalParams params;
    GaugeChoice gauge;
    DerivedConstants dc;
    InitialConditions ic;  // used by XiSource::trajectory

    static XiModel ground_mode(const PhysicalParams& params, const GaugeChoice& gauge);

    /// Sector energy at raw time t, in energy units.
    double evaluate(XiSource source, double t, Sector i) const;
};

/// CSV with header Omega_t,xi1_over_hOmega,xi2_over_hOmega,source.
void write_series_csv(std::ostream& out, const SectorEnergySeries& series);

}  // namespace nclab
