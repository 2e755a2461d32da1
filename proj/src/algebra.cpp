#include "nclab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nclab/errors.hpp"

namespace nclab {

namespace {

constexpr double eps(int i, int j) {
    if (i == j) return 0.0;
    return i == 0 ? 1.0 : -1.0;
}

double sqrt_one_minus_coupling(const PhysicalParams& params) {
    const double c = params.coupling();
    if (!(c < 1.0)) {
        throw MapNotInvertible("theta*eta/hbar^2 = " + std::to_string(c) +
                               " must be < 1 for the SW map to exist");
    }
    return std::sqrt(1.0 - c);
}

}  // namespace

void validate(const PhysicalParams& params) {
    for (double v : {params.m, params.omega, params.hbar, params.theta, params.eta}) {
        if (!std::isfinite(v)) throw InvalidParams("non-finite physical parameter");
    }
    if (params.m <= 0.0) throw InvalidParams("m must be > 0");
    if (params.omega <= 0.0) throw InvalidParams("omega must be > 0");
    if (params.hbar <= 0.0) throw InvalidParams("hbar must be > 0");
    sqrt_one_minus_coupling(params);
}

double solve_gauge_product(const PhysicalParams& params) {
    validate(params);
    return 0.5 * (1.0 + sqrt_one_minus_coupling(params));
}

GaugeChoice make_gauge(const PhysicalParams& params, double ratio) {
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        throw InvalidGauge("gauge ratio lambda/mu must be finite and > 0");
    }
    const double lm = solve_gauge_product(params);
    return {std::sqrt(lm * ratio), std::sqrt(lm / ratio)};
}

DerivedConstants derived_constants(const PhysicalParams& params, const GaugeChoice& gauge) {
    validate(params);
    if (!(gauge.lambda > 0.0) || !(gauge.mu > 0.0)) {
        throw InvalidGauge("lambda and mu must be > 0");
    }
    const auto& [m, w, hb, th, et] = params;
    const double lam = gauge.lambda;
    const double mu = gauge.mu;

    const double alpha2 = m * w * w * lam * lam / 2.0 + et * et / (8.0 * m * hb * hb * mu * mu);
    const double beta2 = mu * mu / (2.0 * m) + m * w * w * th * th / (8.0 * hb * hb * lam * lam);

    DerivedConstants dc;
    dc.alpha = std::sqrt(alpha2);
    dc.beta = std::sqrt(beta2);
    dc.gamma = m * w * w * th / (2.0 * hb) + et / (2.0 * m * hb);
    dc.omega_big = 2.0 * dc.alpha * dc.beta;
    dc.product_lm = lam * mu;
    return dc;
}

double omega_big_from_params(const PhysicalParams& params) {
    validate(params);
    const double gamma = params.m * params.omega * params.omega * params.theta / (2.0 * params.hbar) +
                         params.eta / (2.0 * params.m * params.hbar);
    const double w2 = params.omega * params.omega;
    return std::sqrt(w2 * (1.0 - params.coupling()) + gamma * gamma);
}

double gamma_minus(const PhysicalParams& params) {
    return params.eta / (2.0 * params.m * params.hbar) -
           params.m * params.omega * params.omega * params.theta / (2.0 * params.hbar);
}

NCState sw_to_nc(const PhaseState& s, const PhysicalParams& params, const GaugeChoice& gauge) {
    const double kq = params.theta / (2.0 * gauge.lambda * params.hbar);
    const double kp = params.eta / (2.0 * gauge.mu * params.hbar);
    // q_i = lambda Q_i - kq eps_ij Pi_j ; p_i = mu Pi_i + kp eps_ij Q_j
    return {
        gauge.lambda * s.Q1 - kq * s.P2,
        gauge.lambda * s.Q2 + kq * s.P1,
        gauge.mu * s.P1 + kp * s.Q2,
        gauge.mu * s.P2 - kp * s.Q1,
    };
}

PhaseState sw_to_commutative(const NCState& nc, const PhysicalParams& params, const GaugeChoice& gauge) {
    const double pref = 1.0 / sqrt_one_minus_coupling(params);
    const double lm = gauge.lambda * gauge.mu;
    const double kq = params.theta / (2.0 * lm * params.hbar);
    const double kp = params.eta / (2.0 * lm * params.hbar);
    const double cq = gauge.mu * pref;
    const double cp = gauge.lambda * pref;
    return {
        cq * (nc.q1 + kq * nc.p2),
        cq * (nc.q2 - kq * nc.p1),
        cp * (nc.p1 - kp * nc.q2),
        cp * (nc.p2 + kp * nc.q1),
    };
}

Matrix4 sw_matrix(const PhysicalParams& params, const GaugeChoice& gauge) {
    const double kq = params.theta / (2.0 * gauge.lambda * params.hbar);
    const double kp = params.eta / (2.0 * gauge.mu * params.hbar);
    Matrix4 M{};
    for (int i = 0; i < 2; ++i) {
        M[i][i] = gauge.lambda;
        M[2 + i][2 + i] = gauge.mu;
        for (int j = 0; j < 2; ++j) {
            M[i][2 + j] = -kq * eps(i, j);
            M[2 + i][j] = kp * eps(i, j);
        }
    }
    return M;
}

double algebra_residual(const PhysicalParams& params, const GaugeChoice& gauge) {
    const Matrix4 M = sw_matrix(params, gauge);
    // Canonical brackets of (Q, Pi): [z_a, z_b] = i hbar J_ab.
    Matrix4 J{};
    J[0][2] = J[1][3] = 1.0;
    J[2][0] = J[3][1] = -1.0;

    Matrix4 target{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            target[i][j] = params.theta * eps(i, j);
            target[2 + i][2 + j] = params.eta * eps(i, j);
            target[i][2 + j] = i == j ? params.hbar : 0.0;
            target[2 + i][j] = i == j ? -params.hbar : 0.0;
        }
    }

    double worst = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            double bracket = 0.0;
            for (int c = 0; c < 4; ++c) {
                for (int d = 0; d < 4; ++d) bracket += M[a][c] * J[c][d] * M[b][d];
            }
            worst = std::max(worst, std::abs(params.hbar * bracket - target[a][b]));
        }
    }
    return worst;
}

}  // namespace nclab
