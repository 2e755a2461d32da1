#pragma once

#include <array>

namespace nclab {

/// Physical inputs of the noncommutative oscillator. theta and eta are the
/// position and momentum noncommutativity parameters: [q1,q2] = i theta and
/// [p1,p2] = i eta.
struct PhysicalParams {
    double m = 1.0;
    double omega = 1.0;
    double hbar = 1.0;
    double theta = 0.0;
    double eta = 0.0;

    /// theta*eta/hbar^2, the dimensionless coupling that controls invertibility.
    double coupling() const { return theta * eta / (hbar * hbar); }
};

/// Seiberg-Witten scale factors. Only the product lambda*mu is fixed by the
/// physics; the ratio is a gauge freedom.
struct GaugeChoice {
    double lambda = 1.0;
    double mu = 1.0;
};

struct DerivedConstants {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double omega_big = 0.0;  // 2*alpha*beta
    double product_lm = 1.0;

    double alpha_over_beta() const { return alpha / beta; }
    double beta_over_alpha() const { return beta / alpha; }
};

/// Commutative-frame phase-space point (Q1, Q2, Pi1, Pi2).
struct PhaseState {
    double Q1 = 0.0;
    double Q2 = 0.0;
    double P1 = 0.0;
    double P2 = 0.0;

    std::array<double, 4> as_array() const { return {Q1, Q2, P1, P2}; }
    static PhaseState from_array(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }
};

/// Noncommutative-frame point (q1, q2, p1, p2).
struct NCState {
    double q1 = 0.0;
    double q2 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
};

/// Throws InvalidParams when m, omega or hbar are not strictly positive or a
/// field is not finite, and MapNotInvertible when theta*eta >= hbar^2.
void validate(const PhysicalParams& params);

/// lambda*mu on the branch continuous with the commutative limit:
/// (1 + sqrt(1 - theta*eta/hbar^2)) / 2.
double solve_gauge_product(const PhysicalParams& params);

/// Splits the gauge product into lambda = sqrt(lm*ratio), mu = sqrt(lm/ratio).
GaugeChoice make_gauge(const PhysicalParams& params, double ratio = 1.0);

DerivedConstants derived_constants(const PhysicalParams& params, const GaugeChoice& gauge);

/// Omega from the parameters alone, sqrt(omega^2 (1 - theta*eta/hbar^2) + gamma^2).
/// Independent of the gauge, unlike 2*alpha*beta.
double omega_big_from_params(const PhysicalParams& params);

/// gamma_minus = eta/(2 m hbar) - m omega^2 theta/(2 hbar). Its magnitude is
/// sqrt(Omega^2 - omega^2); its sign is lost in the square root.
double gamma_minus(const PhysicalParams& params);

NCState sw_to_nc(const PhaseState& state, const PhysicalParams& params, const GaugeChoice& gauge);
PhaseState sw_to_commutative(const NCState& nc, const PhysicalParams& params, const GaugeChoice& gauge);

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Linear map (Q1,Q2,Pi1,Pi2) -> (q1,q2,p1,p2) as a matrix.
Matrix4 sw_matrix(const PhysicalParams& params, const GaugeChoice& gauge);

/// Max |deviation| of the brackets [q_i,q_j], [q_i,p_j], [p_i,p_j] implied by
/// the SW map from i*theta*eps_ij, i*hbar*delta_ij, i*eta*eps_ij.
double algebra_residual(const PhysicalParams& params, const GaugeChoice& gauge);

}  // namespace nclab
