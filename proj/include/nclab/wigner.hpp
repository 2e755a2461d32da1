#pragma once

#include <complex>
#include <utility>

#include "nclab/algebra.hpp"

namespace nclab {

using PhasePoint = PhaseState;

struct QuantumNumbers {
    int n1 = 0;
    int n2 = 0;
};

/// Gaussian widths of the stargenfunctions: sqrt(hbar beta/alpha) along Q and
/// sqrt(hbar alpha/beta) along Pi.
struct GaussianWidths {
    double q = 1.0;
    double p = 1.0;
};

GaussianWidths gaussian_widths(const DerivedConstants& dc, double hbar);

/// Laguerre polynomial L_n(x) = L^0_n(x) by upward recurrence.
double laguerre0(int n, double x);

/// (Omega_plus, Omega_minus) = S -/+ 2 (Q1 Pi2 - Q2 Pi1),
/// S = (alpha/beta)|Q|^2 + (beta/alpha)|Pi|^2.
std::pair<double, double> omega_pm(const PhasePoint& pt, const DerivedConstants& dc);

/// Wigner stargenfunction rho_{n1,n2}(Q, Pi).
double wigner_eigenfunction(const PhasePoint& pt, const QuantumNumbers& qn, const DerivedConstants& dc,
                            double hbar);

/// hbar [Omega (n1 + n2 + 1) + gamma (n1 - n2)].
double energy_level(const QuantumNumbers& qn, const DerivedConstants& dc, double hbar);

/// Weyl symbol alpha^2 |Q|^2 + beta^2 |Pi|^2 + gamma (Pi1 Q2 - Pi2 Q1).
double hamiltonian_weyl(const PhasePoint& pt, const DerivedConstants& dc);

struct StarOptions {
    /// Finite-difference base step as a fraction of the Gaussian width.
    double rel_step = 1e-3;
};

/// (H ⋆ rho)(pt) - E rho(pt) via the Moyal product, which terminates at
/// second order for the quadratic H. Derivatives of rho are
/// Richardson-extrapolated central differences (steps h and h/2).
/// Throws StepUnderflow when the finest step is below 1e-10 of a width.
std::complex<double> stargen_residual(const PhasePoint& pt, const QuantumNumbers& qn, const DerivedConstants& dc,
                                      double hbar, StarOptions opts = {});

/// (H ⋆ rho)(pt) alone.
std::complex<double> hamiltonian_star(const PhasePoint& pt, const QuantumNumbers& qn, const DerivedConstants& dc,
                                      double hbar, StarOptions opts = {});

}  // namespace nclab
