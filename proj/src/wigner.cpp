#include "nclab/wigner.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "nclab/errors.hpp"

namespace nclab {

namespace {

void check(const QuantumNumbers& qn) {
    if (qn.n1 < 0 || qn.n2 < 0) {
        throw InvalidParams("quantum numbers must be non-negative, got (" + std::to_string(qn.n1) + ", " +
                            std::to_string(qn.n2) + ")");
    }
}

}  // namespace

GaussianWidths gaussian_widths(const DerivedConstants& dc, double hbar) {
    return {std::sqrt(hbar * dc.beta_over_alpha()), std::sqrt(hbar * dc.alpha_over_beta())};
}

double laguerre0(int n, double x) {
    if (n < 0) throw InvalidParams("Laguerre degree must be >= 0");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

std::pair<double, double> omega_pm(const PhasePoint& pt, const DerivedConstants& dc) {
    const double s = dc.alpha_over_beta() * (pt.Q1 * pt.Q1 + pt.Q2 * pt.Q2) +
                     dc.beta_over_alpha() * (pt.P1 * pt.P1 + pt.P2 * pt.P2);
    const double lz = pt.Q1 * pt.P2 - pt.Q2 * pt.P1;
    return {s - 2.0 * lz, s + 2.0 * lz};
}

double wigner_eigenfunction(const PhasePoint& pt, const QuantumNumbers& qn, const DerivedConstants& dc,
                            double hbar) {
    check(qn);
    const double s = dc.alpha_over_beta() * (pt.Q1 * pt.Q1 + pt.Q2 * pt.Q2) +
                     dc.beta_over_alpha() * (pt.P1 * pt.P1 + pt.P2 * pt.P2);
    const auto [op, om] = omega_pm(pt, dc);
    const double sign = (qn.n1 + qn.n2) % 2 == 0 ? 1.0 : -1.0;
    const double norm = sign / (std::numbers::pi * std::numbers::pi * hbar * hbar);
    return norm * std::exp(-s / hbar) * laguerre0(qn.n1, op / hbar) * laguerre0(qn.n2, om / hbar);
}

double energy_level(const QuantumNumbers& qn, const DerivedConstants& dc, double hbar) {
    check(qn);
    return hbar * (dc.omega_big * (qn.n1 + qn.n2 + 1) + dc.gamma * (qn.n1 - qn.n2));
}

double hamiltonian_weyl(const PhasePoint& pt, const DerivedConstants& dc) {
    return dc.alpha * dc.alpha * (pt.Q1 * pt.Q1 + pt.Q2 * pt.Q2) +
           dc.beta * dc.beta * (pt.P1 * pt.P1 + pt.P2 * pt.P2) + dc.gamma * (pt.P1 * pt.Q2 - pt.P2 * pt.Q1);
}

namespace {

// Coordinates ordered (Q1, Q2, Pi1, Pi2).
using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

struct Derivatives {
    Vec4 grad{};
    Mat4 hess{};
};

// Richardson-extrapolated central differences of f at x with per-axis steps h.
template <typename F>
Derivatives finite_differences(F&& f, const Vec4& x, const Vec4& h) {
    auto at = [&](int a, double da, int b, double db) {
        Vec4 y = x;
        y[a] += da;
        if (b >= 0) y[b] += db;
        return f(y);
    };
    const double f0 = f(x);

    auto level = [&](double scale) {
        Derivatives d;
        for (int a = 0; a < 4; ++a) {
            const double ha = h[a] * scale;
            const double fp = at(a, ha, -1, 0.0);
            const double fm = at(a, -ha, -1, 0.0);
            d.grad[a] = (fp - fm) / (2.0 * ha);
            d.hess[a][a] = (fp - 2.0 * f0 + fm) / (ha * ha);
            for (int b = a + 1; b < 4; ++b) {
                const double hb = h[b] * scale;
                const double v = (at(a, ha, b, hb) - at(a, ha, b, -hb) - at(a, -ha, b, hb) + at(a, -ha, b, -hb)) /
                                 (4.0 * ha * hb);
                d.hess[a][b] = d.hess[b][a] = v;
            }
        }
        return d;
    };

    const Derivatives coarse = level(1.0);
    const Derivatives fine = level(0.5);
    Derivatives out;
    for (int a = 0; a < 4; ++a) {
        out.grad[a] = (4.0 * fine.grad[a] - coarse.grad[a]) / 3.0;
        for (int b = 0; b < 4; ++b) out.hess[a][b] = (4.0 * fine.hess[a][b] - coarse.hess[a][b]) / 3.0;
    }
    return out;
}

}  // namespace

std::complex<double> hamiltonian_star(const PhasePoint& pt, const QuantumNumbers& qn, const DerivedConstants& dc,
                                      double hbar, StarOptions opts) {
    check(qn);
    const GaussianWidths w = gaussian_widths(dc, hbar);
    const double hq = opts.rel_step * w.q;
    const double hp = opts.rel_step * w.p;
    if (!(opts.rel_step * 0.5 >= 1e-10) || !(hq * 0.5 > 0.0) || !(hp * 0.5 > 0.0) || !std::isfinite(hq) ||
        !std::isfinite(hp)) {
        throw StepUnderflow("finite-difference step below 1e-10 of the Gaussian width");
    }

    const Vec4 x{pt.Q1, pt.Q2, pt.P1, pt.P2};
    auto rho = [&](const Vec4& y) { return wigner_eigenfunction({y[0], y[1], y[2], y[3]}, qn, dc, hbar); };
    const Derivatives d = finite_differences(rho, x, {hq, hq, hp, hp});
    const double r0 = rho(x);

    // Exact derivatives of H. H = a2 Q^2 + b2 Pi^2 + g (Pi1 Q2 - Pi2 Q1).
    const double a2 = dc.alpha * dc.alpha;
    const double b2 = dc.beta * dc.beta;
    const double g = dc.gamma;
    const Vec4 gradH{2.0 * a2 * pt.Q1 - g * pt.P2, 2.0 * a2 * pt.Q2 + g * pt.P1, 2.0 * b2 * pt.P1 + g * pt.Q2,
                     2.0 * b2 * pt.P2 - g * pt.Q1};
    // d^2 H / dQ_i dPi_j
    const double hQP[2][2] = {{0.0, -g}, {g, 0.0}};

    // First order: sum_i dH/dQ_i drho/dPi_i - dH/dPi_i drho/dQ_i
    double poisson = 0.0;
    for (int i = 0; i < 2; ++i) poisson += gradH[i] * d.grad[2 + i] - gradH[2 + i] * d.grad[i];

    // Second order: H_QQ:rho_PiPi - 2 H_QPi:rho_PiQ + H_PiPi:rho_QQ
    double second = 0.0;
    for (int i = 0; i < 2; ++i) {
        second += 2.0 * a2 * d.hess[2 + i][2 + i] + 2.0 * b2 * d.hess[i][i];
        for (int j = 0; j < 2; ++j) second -= 2.0 * hQP[i][j] * d.hess[2 + i][j];
    }

    const double h0 = hamiltonian_weyl(pt, dc);
    const double re = h0 * r0 - hbar * hbar / 8.0 * second;
    const double im = 0.5 * hbar * poisson;
    return {re, im};
}

std::complex<double> stargen_residual(const PhasePoint& pt, const QuantumNumbers& qn, const DerivedConstants& dc,
                                      double hbar, StarOptions opts) {
    const std::complex<double> hr = hamiltonian_star(pt, qn, dc, hbar, opts);
    return hr - energy_level(qn, dc, hbar) * wigner_eigenfunction(pt, qn, dc, hbar);
}

}  // namespace nclab
