#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "nclab/errors.hpp"
#include "nclab/observables.hpp"
#include "test_support.hpp"

using namespace nclab;
using nclab::testing::rel_err;

namespace {

DerivedConstants constants_for(const PhysicalParams& p, double ratio = 1.0) {
    return derived_constants(p, make_gauge(p, ratio));
}

}  // namespace

TEST_CASE("ground_mode_ic") {
    DerivedConstants sym;
    sym.alpha = sym.beta = 0.7;
    const InitialConditions a = ground_mode_ic(sym, 1.3);
    CHECK(a.x == doctest::Approx(std::sqrt(0.65)));
    CHECK(a.pi_y == doctest::Approx(std::sqrt(0.65)));

    DerivedConstants skew;
    skew.alpha = 2.0;
    skew.beta = 1.0;
    const InitialConditions b = ground_mode_ic(skew, 1.0);
    CHECK(b.x == doctest::Approx(0.5));
    CHECK(b.y == doctest::Approx(0.5));
    CHECK(b.pi_x == doctest::Approx(1.0));
    CHECK(b.pi_y == doctest::Approx(1.0));
}

TEST_CASE("mode_energy follows the beating law") {
    const PhysicalParams p{1.2, 0.9, 0.8, 0.05, 0.03};
    const DerivedConstants dc = constants_for(p);
    const InitialConditions ic = ground_mode_ic(dc, p.hbar);
    const double hw = p.hbar * dc.omega_big;

    CHECK(mode_energy(ic.as_state(), dc, Sector::one) == doctest::Approx(hw / 2));
    CHECK(mode_energy(ic.as_state(), dc, Sector::two) == doctest::Approx(hw / 2));

    const double t_peak = std::numbers::pi / (4 * dc.gamma);
    const PhaseState s = propagate_analytic(ic, dc, t_peak);
    CHECK(mode_energy(s, dc, Sector::one) == doctest::Approx(hw).epsilon(1e-12));
    CHECK(std::abs(mode_energy(s, dc, Sector::two)) < 1e-12);

    for (double t : {0.3, 4.0, 55.0, 300.0}) {
        const PhaseState st = propagate_analytic(ic, dc, t);
        const double e1 = mode_energy(st, dc, Sector::one);
        const double e2 = mode_energy(st, dc, Sector::two);
        CHECK(std::abs(e1 + e2 - hw) < 1e-12 * hw);
        CHECK(std::abs(e1 - mode_energy_closed(dc, p.hbar, t, Sector::one)) < 1e-10 * hw);
    }
}

TEST_CASE("sector_energy") {
    const PhysicalParams p{1, 1, 1, 0, 0};
    CHECK(sector_energy({}, p, Sector::one) == 0.0);
    CHECK(sector_energy({1, 0, 1, 0}, p, Sector::one) == 1.0);

    const PhysicalParams q{1.5, 0.7, 1, 0.2, 0.1};
    const NCState nc{0.3, -0.8, 1.1, 0.4};
    const double h = (nc.p1 * nc.p1 + nc.p2 * nc.p2) / (2 * q.m) +
                     0.5 * q.m * q.omega * q.omega * (nc.q1 * nc.q1 + nc.q2 * nc.q2);
    CHECK(sector_energy(nc, q, Sector::one) + sector_energy(nc, q, Sector::two) == doctest::Approx(h));
    CHECK(nc_hamiltonian(nc, q) == doctest::Approx(h));
}

TEST_CASE("xi_closed") {
    SUBCASE("commutative limit is stationary") {
        const PhysicalParams p{1, 1.4, 0.9, 0, 0};
        const DerivedConstants dc = constants_for(p);
        for (double t : {0.0, 1.0, 17.0}) {
            CHECK(xi_closed(dc, p, t, Sector::one) == doctest::Approx(0.5 * 0.9 * 1.4).epsilon(1e-14));
            CHECK(xi_closed(dc, p, t, Sector::two) == doctest::Approx(0.5 * 0.9 * 1.4).epsilon(1e-14));
        }
    }
    SUBCASE("value at t = 0") {
        const PhysicalParams p{1, 1, 1, 0.3, 0.2};
        const DerivedConstants dc = constants_for(p);
        const double W = dc.omega_big;
        const double c = std::sqrt(1 - 1 / (W * W));
        CHECK(xi_closed(dc, p, 0.0, Sector::one) == doctest::Approx(W / 2 * (1 + c)).epsilon(1e-12));
        CHECK(xi_closed(dc, p, 0.0, Sector::two) == doctest::Approx(W / 2 * (1 - c)).epsilon(1e-12));
    }
    SUBCASE("partition") {
        nclab::testing::ParamGenerator gen(4);
        for (int k = 0; k < 20; ++k) {
            const PhysicalParams p = gen.next();
            const DerivedConstants dc = constants_for(p);
            const double t = gen.uniform(0, 100);
            const double sum = xi_closed(dc, p, t, Sector::one) + xi_closed(dc, p, t, Sector::two);
            CHECK(std::abs(sum - p.hbar * dc.omega_big) < 1e-12 * p.hbar * dc.omega_big);
        }
    }
    SUBCASE("inconsistent constants are rejected") {
        const PhysicalParams p{1, 1, 1, 0.3, 0.2};
        DerivedConstants dc = constants_for(p);
        dc.omega_big = 0.5;
        CHECK_THROWS_AS(xi_closed(dc, p, 1.0, Sector::one), DomainError);
    }
}

TEST_CASE("xi_closed against the trajectory composition") {
    // gamma_minus >= 0: xi_closed and the trajectory agree.
    const PhysicalParams agree{1, 1, 1, 0.1, 0.4};
    REQUIRE(gamma_minus(agree) > 0);
    // gamma_minus < 0: only the signed law agrees.
    const PhysicalParams flip{1, 1, 1, 0.4, 0.1};
    REQUIRE(gamma_minus(flip) < 0);

    for (double ratio : {0.5, 1.0, 2.0}) {
        const GaugeChoice ga = make_gauge(agree, ratio);
        const DerivedConstants da = derived_constants(agree, ga);
        const InitialConditions ica = ground_mode_ic(da, agree.hbar);
        const GaugeChoice gf = make_gauge(flip, ratio);
        const DerivedConstants df = derived_constants(flip, gf);
        const InitialConditions icf = ground_mode_ic(df, flip.hbar);
        double worst_flip = 0.0;
        for (int k = 0; k < 200; ++k) {
            const double t = 0.37 * k;
            for (Sector i : {Sector::one, Sector::two}) {
                const double ta = xi_trajectory(ica, da, agree, ga, t, i);
                CHECK(std::abs(ta - xi_closed(da, agree, t, i)) < 1e-9 * agree.hbar * da.omega_big);
                const double tf = xi_trajectory(icf, df, flip, gf, t, i);
                CHECK(std::abs(tf - xi_closed_signed(df, flip, t, i)) < 1e-9 * flip.hbar * df.omega_big);
                worst_flip = std::max(worst_flip, std::abs(tf - xi_closed(df, flip, t, i)));
            }
        }
        // xi_closed differs by 2|gamma_minus|/Omega times the bracket.
        CHECK(worst_flip > 0.1);
    }
}

TEST_CASE("xi_trajectory is gauge invariant and stationary without noncommutativity") {
    const PhysicalParams p0{1, 1.3, 1, 0, 0};
    const GaugeChoice g0 = make_gauge(p0);
    const DerivedConstants d0 = derived_constants(p0, g0);
    const InitialConditions ic0 = ground_mode_ic(d0, 1.0);
    for (double t : {0.0, 2.2, 31.0}) {
        CHECK(xi_trajectory(ic0, d0, p0, g0, t, Sector::one) == doctest::Approx(0.65).epsilon(1e-13));
    }

    const PhysicalParams p{0.8, 1.2, 0.9, 0.25, -0.15};
    const XiModel ref = XiModel::ground_mode(p, make_gauge(p, 1.0));
    for (double ratio : {0.5, 2.0}) {
        const XiModel other = XiModel::ground_mode(p, make_gauge(p, ratio));
        for (double t : {0.0, 1.1, 7.5, 90.0}) {
            CHECK(std::abs(other.evaluate(XiSource::trajectory, t, Sector::one) -
                           ref.evaluate(XiSource::trajectory, t, Sector::one)) < 1e-10);
        }
    }
}

TEST_CASE("xi_closed_degenerate") {
    const PhysicalParams p{1, 1, 1, 0, 0.004};
    const DerivedConstants dc = constants_for(p);
    for (double t : {0.0, 3.0, 100.0, 700.0}) {
        for (Sector i : {Sector::one, Sector::two}) {
            CHECK(std::abs(xi_closed_degenerate(dc, p, t, i) - xi_closed(dc, p, t, i)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(xi_closed_degenerate(dc, {1, 1, 1, 0.1, 0.1}, 0.0, Sector::one), DegenerateFormMisuse);

    // gamma/Omega = 0.002 with hbar*Omega = 1.
    DerivedConstants unit;
    unit.alpha = unit.beta = std::sqrt(0.5);
    unit.omega_big = 1.0;
    unit.gamma = 0.002;
    const PhysicalParams q{1, 1, 1, 0.004, 0};
    CHECK(xi_closed_degenerate(unit, q, 0.0, Sector::one) == doctest::Approx(0.501).epsilon(1e-14));
    CHECK(xi_closed_degenerate(unit, q, 0.0, Sector::two) == doctest::Approx(0.499).epsilon(1e-14));

    unit.gamma = 0.0;
    CHECK(xi_closed_degenerate(unit, q, 12.0, Sector::one) == doctest::Approx(0.5));
}

TEST_CASE("xi_first_order") {
    DerivedConstants dc;
    dc.alpha = dc.beta = std::sqrt(0.5);
    dc.omega_big = 1.0;
    dc.gamma = 0.0;
    CHECK(xi_first_order(dc, 5.0, Sector::one, 1.0) == 0.5);

    dc.gamma = 0.002;
    const PhysicalParams p{1, 1, 1, 0, 0.004};
    CHECK(xi_first_order(dc, 0.0, Sector::one, 1.0) == doctest::Approx(xi_closed_degenerate(dc, p, 0.0, Sector::one)));
    CHECK(xi_first_order(dc, 0.0, Sector::two, 1.0) == doctest::Approx(xi_closed_degenerate(dc, p, 0.0, Sector::two)));

    // The truncation error over Omega t in [0, 10] is cubic in gamma/Omega:
    // the exact bracket has no second-order term.
    auto sup_error = [&](double r) {
        DerivedConstants d = dc;
        d.gamma = r;
        double sup = 0.0;
        for (int k = 0; k <= 20000; ++k) {
            const double t = 10.0 * k / 20000;
            sup = std::max(sup, std::abs(xi_first_order(d, t, Sector::one, 1.0) -
                                         xi_closed_degenerate(d, p, t, Sector::one)));
        }
        return sup;
    };
    CHECK(sup_error(0.002) / sup_error(0.001) == doctest::Approx(8.0).epsilon(0.01));
}

TEST_CASE("xi_dot_first_order") {
    DerivedConstants dc;
    dc.alpha = dc.beta = std::sqrt(0.5);
    dc.omega_big = 1.3;
    dc.gamma = 0.002;
    const double hbar = 0.9;
    const double amp = hbar * dc.gamma * dc.omega_big;
    CHECK(xi_dot_first_order(dc, 0.0, Sector::one, hbar) == doctest::Approx(amp));
    CHECK(xi_dot_first_order(dc, 0.0, Sector::two, hbar) == doctest::Approx(-amp));
    CHECK(std::abs(xi_dot_first_order(dc, std::numbers::pi / (4 * dc.omega_big), Sector::one, hbar)) < 1e-18);

    const double h = 1e-5 / dc.omega_big;
    for (double t : {0.1, 1.0, 4.4, 9.0}) {
        const double fd = (xi_first_order(dc, t + h, Sector::one, hbar) - xi_first_order(dc, t - h, Sector::one, hbar)) /
                          (2 * h);
        const double exact = xi_dot_first_order(dc, t, Sector::one, hbar);
        CHECK(std::abs(fd - exact) < 1e-6 * amp);
    }
}

TEST_CASE("xi_dot_closed matches a finite difference of xi_closed") {
    const PhysicalParams p{1, 1, 1, 0.3, 0.2};
    const DerivedConstants dc = constants_for(p);
    const double h = 1e-5;
    for (double t : {0.2, 3.0, 25.0}) {
        for (Sector i : {Sector::one, Sector::two}) {
            const double fd = (xi_closed(dc, p, t + h, i) - xi_closed(dc, p, t - h, i)) / (2 * h);
            CHECK(xi_dot_closed(dc, p, t, i) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("series CSV and source names") {
    SectorEnergySeries s;
    s.times = {0.0, 0.5};
    s.xi1 = {0.625, 0.25};
    s.xi2 = {0.375, 0.75};
    s.source = XiSource::trajectory;
    std::ostringstream out;
    write_series_csv(out, s);
    CHECK(out.str() == "Omega_t,xi1_over_hOmega,xi2_over_hOmega,source\n"
                       "0,0.625,0.375,trajectory\n"
                       "0.5,0.25,0.75,trajectory\n");
    for (auto src : {XiSource::closed_form, XiSource::closed_signed, XiSource::degenerate_form,
                     XiSource::first_order, XiSource::trajectory}) {
        CHECK(xi_source_from_string(to_string(src)) == src);
    }
    CHECK_THROWS_AS(xi_source_from_string("nope"), ConfigError);
}
