#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nclab/errors.hpp"
#include "nclab/kernels.hpp"
#include "nclab/quadrature.hpp"
#include "nclab/wigner.hpp"
#include "test_support.hpp"

using namespace nclab;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// Explicit sum L_n(x) = sum_k (-1)^k C(n,k) x^k / k!.
double laguerre_sum(int n, double x) {
    double sum = 0.0;
    double binom = 1.0;
    double xk_over_kfact = 1.0;
    for (int k = 0; k <= n; ++k) {
        sum += (k % 2 ? -1.0 : 1.0) * binom * xk_over_kfact;
        binom = binom * (n - k) / (k + 1);
        xk_over_kfact *= x / (k + 1);
    }
    return sum;
}

DerivedConstants coupled_constants() {
    const PhysicalParams p{1.3, 0.8, 0.9, 0.35, 0.2};
    return derived_constants(p, make_gauge(p, 1.5));
}

}  // namespace

TEST_CASE("Gauss-Hermite rule") {
    const GaussHermiteRule two(2);
    CHECK(two.nodes[0] == doctest::Approx(-1 / std::sqrt(2.0)));
    CHECK(two.nodes[1] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(two.weights[0] == doctest::Approx(std::sqrt(std::numbers::pi) / 2));

    for (int n : {5, 20, 40, 41}) {
        const GaussHermiteRule rule(n);
        double m0 = 0, m2 = 0, m8 = 0;
        for (int i = 0; i < n; ++i) {
            const double x = rule.nodes[i], w = rule.weights[i];
            m0 += w;
            m2 += w * x * x;
            m8 += w * std::pow(x, 8);
        }
        CHECK(m0 == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
        CHECK(m2 == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-13));
        if (n >= 5) CHECK(m8 == doctest::Approx(105.0 / 16 * std::sqrt(std::numbers::pi)).epsilon(1e-12));
        for (int i = 1; i < n; ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    }
    CHECK_THROWS_AS(GaussHermiteRule(0), InvalidParams);
}

TEST_CASE("laguerre0") {
    CHECK(laguerre0(0, 3.7) == 1.0);
    CHECK(laguerre0(1, 0.4) == doctest::Approx(0.6));
    CHECK(laguerre0(2, 2.0) == doctest::Approx(-1.0));
    for (int n = 0; n <= 6; ++n) {
        for (double x : {0.0, 0.3, 1.7, 4.0, 9.5}) CHECK(laguerre0(n, x) == doctest::Approx(laguerre_sum(n, x)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(laguerre0(-1, 0.0), InvalidParams);
}

TEST_CASE("omega_pm") {
    DerivedConstants dc;
    dc.alpha = dc.beta = 1 / std::sqrt(2.0);
    const auto [o0p, o0m] = omega_pm({}, dc);
    CHECK(o0p == 0.0);
    CHECK(o0m == 0.0);
    const auto [op, om] = omega_pm({1, 0, 0, 1}, dc);
    CHECK(op == doctest::Approx(0.0));
    CHECK(om == doctest::Approx(4.0));

    const DerivedConstants c = coupled_constants();
    const PhasePoint pt{0.3, -0.5, 0.8, 0.1};
    const auto [a, b] = omega_pm(pt, c);
    const double s = c.alpha / c.beta * (0.09 + 0.25) + c.beta / c.alpha * (0.64 + 0.01);
    CHECK(a + b == doctest::Approx(2 * s));
    CHECK(a >= 0.0);
    CHECK(b >= 0.0);
}

TEST_CASE("wigner_eigenfunction at the origin") {
    const DerivedConstants dc = coupled_constants();
    CHECK(wigner_eigenfunction({}, {0, 0}, dc, 1.0) == doctest::Approx(1 / kPi2));
    CHECK(wigner_eigenfunction({}, {1, 0}, dc, 1.0) == doctest::Approx(-1 / kPi2));
    for (int n1 = 0; n1 <= 3; ++n1) {
        for (int n2 = 0; n2 <= 3; ++n2) {
            const double sign = (n1 + n2) % 2 ? -1.0 : 1.0;
            CHECK(wigner_eigenfunction({}, {n1, n2}, dc, 0.7) == sign / (kPi2 * 0.49));
        }
    }
    CHECK_THROWS_AS(wigner_eigenfunction({}, {-1, 0}, dc, 1.0), InvalidParams);
}

TEST_CASE("energy_level") {
    const DerivedConstants dc = coupled_constants();
    const double hb = 0.9;
    CHECK(energy_level({0, 0}, dc, hb) == doctest::Approx(hb * dc.omega_big));
    CHECK(energy_level({1, 0}, dc, hb) == doctest::Approx(hb * (2 * dc.omega_big + dc.gamma)));
    CHECK(energy_level({0, 1}, dc, hb) == doctest::Approx(hb * (2 * dc.omega_big - dc.gamma)));
    for (int n1 = 0; n1 <= 6; ++n1)
        for (int n2 = 0; n2 <= 6; ++n2)
            CHECK(energy_level({n1, n2}, dc, hb) + energy_level({n2, n1}, dc, hb) ==
                  doctest::Approx(2 * hb * dc.omega_big * (n1 + n2 + 1)).epsilon(1e-15));

    const PhysicalParams p0{1, 1.7, 1, 0, 0};
    const DerivedConstants d0 = derived_constants(p0, make_gauge(p0));
    CHECK(energy_level({2, 3}, d0, 1.0) == doctest::Approx(1.7 * 6));
}

TEST_CASE("hamiltonian_weyl") {
    DerivedConstants dc;
    dc.alpha = dc.beta = std::sqrt(0.5);
    CHECK(hamiltonian_weyl({}, dc) == 0.0);
    CHECK(hamiltonian_weyl({1, 0, 1, 0}, dc) == doctest::Approx(1.0));

    // The Weyl symbol evaluated on SW-mapped points equals the NC Hamiltonian, in every gauge.
    const PhysicalParams p{1.3, 0.8, 0.9, 0.35, 0.2};
    const NCState nc{0.4, -0.2, 0.9, 1.3};
    const double h_nc = (nc.p1 * nc.p1 + nc.p2 * nc.p2) / (2 * p.m) +
                        0.5 * p.m * p.omega * p.omega * (nc.q1 * nc.q1 + nc.q2 * nc.q2);
    for (double ratio : {0.5, 1.0, 2.0}) {
        const GaugeChoice g = make_gauge(p, ratio);
        const DerivedConstants d = derived_constants(p, g);
        CHECK(hamiltonian_weyl(sw_to_commutative(nc, p, g), d) == doctest::Approx(h_nc).epsilon(1e-13));
    }
}

TEST_CASE("stargen residual vanishes for the stargenfunctions") {
    const double hbar = 0.9;
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const DerivedConstants& dc : {coupled_constants(), derived_constants({1, 1, 1, 0, 0}, {1, 1})}) {
        const GaussianWidths w = gaussian_widths(dc, hbar);
        for (QuantumNumbers qn : {QuantumNumbers{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 3}}) {
            const double e = energy_level(qn, dc, hbar);
            for (int k = 0; k < 10; ++k) {
                const PhasePoint pt{u(rng) * w.q, u(rng) * w.q, u(rng) * w.p, u(rng) * w.p};
                const double rho = wigner_eigenfunction(pt, qn, dc, hbar);
                if (std::abs(rho) < 1e-3 / (kPi2 * hbar * hbar)) continue;  // skip nodal surfaces
                const auto res = stargen_residual(pt, qn, dc, hbar);
                CHECK(std::abs(res) < 1e-6 * std::abs(e * rho));
                CHECK(std::abs(res.imag()) < 1e-6 * std::abs(e * rho));
            }
        }
    }
}

TEST_CASE("stargen residual detects a wrong eigenvalue") {
    const DerivedConstants dc = coupled_constants();
    const PhasePoint pt{0.2, 0.1, -0.3, 0.4};
    // rho_{1,0} with the levels of rho_{0,1}: residual is -2 hbar gamma rho.
    const auto star = hamiltonian_star(pt, {1, 0}, dc, 1.0);
    const double rho = wigner_eigenfunction(pt, {1, 0}, dc, 1.0);
    CHECK(star.real() - energy_level({0, 1}, dc, 1.0) * rho == doctest::Approx(2 * dc.gamma * rho).epsilon(1e-6));
}

TEST_CASE("stargen step underflow") {
    const DerivedConstants dc = coupled_constants();
    CHECK_THROWS_AS(stargen_residual({0.1, 0, 0, 0}, {0, 0}, dc, 1.0, {1e-11}), StepUnderflow);
    CHECK_NOTHROW(stargen_residual({0.1, 0, 0, 0}, {0, 0}, dc, 1.0, {1e-4}));
}

TEST_CASE("normalisation and orthogonality by quadrature") {
    const DerivedConstants dc = coupled_constants();
    const double hbar = 0.9;
    CHECK(kernels::wigner_overlap({0, 0}, nullptr, dc, hbar, 20) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(kernels::wigner_overlap({2, 1}, nullptr, dc, hbar, 20) == doctest::Approx(1.0).epsilon(1e-10));
    const QuantumNumbers q00{0, 0}, q10{1, 0};
    CHECK(std::abs(kernels::wigner_overlap(q00, &q10, dc, hbar, 20)) < 1e-6);
    // Diagonal overlap of a pure-state Wigner function is 1/(2 pi hbar)^2.
    const double purity = 1 / std::pow(2 * std::numbers::pi * hbar, 2);
    CHECK(kernels::wigner_overlap(q10, &q10, dc, hbar, 20) == doctest::Approx(purity).epsilon(1e-10));
}
