#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "radlab/errors.hpp"
#include "radlab/radial_solver.hpp"

using namespace radlab;
using oracle::pi;

namespace {

RadialProblem laplace3(PowerSumNonlinearity nl) {
    RadialProblem prob;
    prob.n = 3.0;
    prob.p = 2.0;
    prob.nl = std::move(nl);
    return prob;
}

RadialProblem linear_eigen() { return laplace3(PowerSumNonlinearity(pi * pi)); }

RadialProblem bn(double lambda) { return laplace3(brezis_nirenberg(lambda, 5.0)); }

// max over the interior points shared with a 65-point grid of
// |(r^(n-1) phi_p(u'))' + r^(n-1) f(u)|, derivative by central differences
double flux_defect(const RadialProblem& prob, const Trajectory& traj, std::size_t points, double r_lo) {
    const RadialSolution s = traj.resample(points);
    const std::size_t stride = (points - 1) / 64;
    const double h = s.grid[1];
    double worst = 0.0;
    for (std::size_t i = stride; i + stride < points; i += stride) {
        if (s.grid[i] < r_lo) continue;
        auto w = [&](std::size_t k) { return std::pow(s.grid[k], prob.n - 1) * phi_p(s.uprime[k], prob.p); };
        const double dw = (w(i + 1) - w(i - 1)) / (2 * h);
        worst = std::max(worst, std::abs(dw + std::pow(s.grid[i], prob.n - 1) * prob.nl.f(s.u[i])));
    }
    return worst;
}

}  // namespace

TEST_CASE("phi_p and its inverse") {
    for (double t : {-3.0, -0.2, 0.0, 0.7, 5.0}) CHECK(phi_p(t, 2.0) == t);
    CHECK(phi_p(-2.0, 3.0) == doctest::Approx(-4.0));
    CHECK(phi_p(0.0, 1.5) == 0.0);
    CHECK(phi_p_inv(phi_p(1.7, 2.5), 2.5) == doctest::Approx(1.7).epsilon(1e-15));

    oracle::Gen g(3);
    for (int i = 0; i < 1000; ++i) {
        const double p = g.uniform(1.05, 6.0);
        const double t = g.uniform(-10, 10);
        CHECK(phi_p_inv(phi_p(t, p), p) == doctest::Approx(t).epsilon(1e-12));
    }
}

TEST_CASE("integrate_ivp reproduces sin(pi r)/(pi r)") {
    const RadialSolution s = integrate_ivp(linear_eigen(), 1.0, 1.0);
    double sup = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) sup = std::max(sup, std::abs(s.u[i] - oracle::sinc_pi(s.grid[i])));
    CHECK(sup < 1e-6);
    CHECK(std::abs(s.u.back()) < 1e-8);
    CHECK(s.uprime.back() == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(s.uprime[0] == 0.0);
    CHECK(s.u[0] == 1.0);
    CHECK(s.alpha == 1.0);
    CHECK(s.grid.size() == 2049);

    double sup_d = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        sup_d = std::max(sup_d, std::abs(s.uprime[i] - oracle::sinc_pi_prime(s.grid[i])));
    }
    CHECK(sup_d < 1e-6);
}

TEST_CASE("integrate_ivp reproduces the Emden-Fowler bubble on [0, 2]") {
    const RadialProblem prob = laplace3(PowerSumNonlinearity(0.0, {{1.0, 5.0}}));
    const RadialSolution s = integrate_ivp(prob, std::pow(3.0, 0.25), 2.0);
    double sup = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        sup = std::max(sup, std::abs(s.u[i] - oracle::emden_fowler_bubble(s.grid[i])));
    }
    CHECK(sup < 1e-8);
    CHECK(s.grid.back() == 2.0);
}

TEST_CASE("zero amplitude stays zero") {
    for (const auto& prob : {bn(3.0), linear_eigen()}) {
        const RadialSolution s = integrate_ivp(prob, 0.0, 1.0);
        CHECK(std::all_of(s.u.begin(), s.u.end(), [](double v) { return v == 0.0; }));
        CHECK(std::all_of(s.uprime.begin(), s.uprime.end(), [](double v) { return v == 0.0; }));
    }
}

TEST_CASE("precondition and numerical errors") {
    RadialProblem bad = linear_eigen();
    bad.p = 1.0;
    CHECK_THROWS_AS(integrate_ivp(bad, 1.0, 1.0), PreconditionViolation);
    bad = linear_eigen();
    bad.n = 1.5;
    CHECK_THROWS_AS(integrate_ivp(bad, 1.0, 1.0), PreconditionViolation);
    CHECK_THROWS_AS(integrate_ivp(linear_eigen(), 1.0, 0.0), PreconditionViolation);
    CHECK_THROWS_AS(integrate_ivp(linear_eigen(), NAN, 1.0), PreconditionViolation);

    SolverControls few;
    few.max_steps = 5;
    CHECK_THROWS_AS(integrate_ivp(linear_eigen(), 1.0, 1.0, few), StepFailure);

    // u'' + (2/r)u' - u^3 ... with c < 0 the solution blows up before r = 1
    const RadialProblem blowup = laplace3(PowerSumNonlinearity(0.0, {{-1.0, 3.0}}));
    CHECK_THROWS_AS(integrate_ivp(blowup, 50.0, 1.0), NumericalError);
}

TEST_CASE("shoot_bvp finds the Brezis-Nirenberg solution inside the existence window") {
    const RadialSolution s = shoot_bvp(bn(0.75 * pi * pi), 0.1, 10.0);
    CHECK(s.is_bvp);
    CHECK(s.boundary_defect <= SolverControls{}.bvp_tol);
    CHECK(s.alpha > 0.1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) CHECK(s.u[i] > 0.0);
    // positive solutions are radially decreasing
    for (std::size_t i = 1; i < s.size(); ++i) CHECK(s.uprime[i] < 0.0);
}

TEST_CASE("linear eigenfunction: every amplitude is a boundary-value solution") {
    for (double a : {0.01, 0.5, 1.0, 7.0}) {
        const RadialSolution s = integrate_ivp(linear_eigen(), a, 1.0);
        CHECK(s.boundary_defect < 1e-10 * std::max(1.0, a));
    }
    const RadialSolution s = shoot_bvp(linear_eigen(), 0.5, 2.0);
    CHECK(s.is_bvp);
    CHECK(s.alpha == doctest::Approx(0.5));
}

TEST_CASE("shoot_bvp reports NoBracket below pi^2/4") {
    CHECK_THROWS_AS(shoot_bvp(bn(0.1), 0.1, 1e4), NoBracket);
    CHECK_THROWS_AS(shoot_bvp(bn(0.75 * pi * pi), 2.0, 1.0), PreconditionViolation);
}

TEST_CASE("first_zero") {
    SUBCASE("linear: sin(rho)/rho") {
        const ZeroCrossing z = first_zero(laplace3(PowerSumNonlinearity(1.0)), 1.0);
        CHECK(z.rho0 == doctest::Approx(pi).epsilon(1e-10));
        CHECK(z.slope_at_zero == doctest::Approx(-1.0 / pi).epsilon(1e-8));
    }
    SUBCASE("small amplitude approaches the linearization") {
        const ZeroCrossing z = first_zero(laplace3(brezis_nirenberg(1.0, 5.0)), 1e-4);
        CHECK(z.rho0 == doctest::Approx(pi).epsilon(1e-6));
    }
    SUBCASE("large amplitude approaches pi/2 from above") {
        const RadialProblem prob = laplace3(brezis_nirenberg(1.0, 5.0));
        const double r100 = first_zero(prob, 100.0).rho0;
        const double r1000 = first_zero(prob, 1000.0).rho0;
        CHECK(r100 > pi / 2);
        CHECK(r1000 > pi / 2);
        CHECK(r1000 < r100);
        CHECK(r1000 - pi / 2 < 1e-3);
    }
    SUBCASE("no zero") {
        SolverControls ctl;
        ctl.r_max = 5.0;
        CHECK_THROWS_AS(first_zero(laplace3(PowerSumNonlinearity(-1.0)), 1.0, ctl), NoZero);
        CHECK_THROWS_AS(first_zero(laplace3(PowerSumNonlinearity(1.0)), 0.0), PreconditionViolation);
    }
}

TEST_CASE("property: flux defect converges at O(h^2) under grid refinement") {
    struct Case {
        RadialProblem prob;
        double alpha;
        double r_lo;
    };
    RadialProblem p3 = laplace3(brezis_nirenberg(1.0, 2.0));
    p3.p = 3.0;
    RadialProblem p15 = laplace3(PowerSumNonlinearity(1.0));
    p15.p = 1.5;
    RadialProblem n4 = laplace3(PowerSumNonlinearity(2.0, {{1.0, 3.0}}));
    n4.n = 4.0;
    const Case cases[] = {{bn(0.75 * pi * pi), 2.0155, 0.0}, {p3, 0.5, 0.1}, {p15, 0.8, 0.1}, {n4, 3.0, 0.0}};
    for (const auto& c : cases) {
        const Trajectory traj = integrate_trajectory(c.prob, c.alpha, 0.9);
        const double coarse = flux_defect(c.prob, traj, 257, c.r_lo);
        const double fine = flux_defect(c.prob, traj, 513, c.r_lo);
        CAPTURE(c.prob.p);
        CAPTURE(c.prob.n);
        CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.15));
    }
}

TEST_CASE("property: w(r) = -int_0^r s^(n-1) f(u(s)) ds") {
    RadialProblem p3 = laplace3(brezis_nirenberg(1.0, 2.0));
    p3.p = 3.0;
    RadialProblem p15 = laplace3(PowerSumNonlinearity(1.0));
    p15.p = 1.5;
    for (const auto& [prob, alpha] : {std::pair{bn(0.75 * pi * pi), 2.0}, std::pair{p3, 0.5}, std::pair{p15, 0.8}}) {
        const Trajectory traj = integrate_trajectory(prob, alpha, 1.0);
        for (double r : {0.25, 0.5, 0.75, 1.0}) {
            const double integral = oracle::gauss_legendre(
                [&](double s) { return std::pow(s, prob.n - 1) * prob.nl.f(traj.u(s)); }, 0.0, r, 50);
            const RadialState st = traj.at(r);
            CHECK(st.w == doctest::Approx(-integral).epsilon(1e-8));
            CHECK(st.w == doctest::Approx(std::pow(r, prob.n - 1) * phi_p(st.uprime, prob.p)).epsilon(1e-12));
        }
    }
}

TEST_CASE("property: halving tolerances moves u(1) by less than the coarser tolerance") {
    oracle::Gen g(5);
    for (int trial = 0; trial < 20; ++trial) {
        const RadialProblem prob = laplace3(brezis_nirenberg(g.uniform(0.5, 9.0), g.uniform(2.0, 6.0)));
        const double alpha = g.log_uniform(0.05, 5.0);
        SolverControls coarse;
        coarse.rtol = 1e-8;
        coarse.atol = 1e-10;
        const double u1 = shooting_map(prob, alpha, coarse);
        const double u2 = shooting_map(prob, alpha, coarse.tightened(0.5));
        CHECK(std::abs(u1 - u2) < coarse.rtol * std::max(1.0, alpha));
    }
}

TEST_CASE("property: shot solutions stay solutions at tighter tolerance") {
    SolverControls ctl;
    for (double frac : {0.3, 0.5, 0.75, 0.9}) {
        const RadialProblem prob = bn(frac * pi * pi);
        const RadialSolution s = shoot_bvp(prob, 0.01, 1e3, ctl);
        const RadialSolution t = integrate_ivp(prob, s.alpha, 1.0, ctl.tightened(1e-2));
        CAPTURE(frac);
        CHECK(t.boundary_defect < 10 * ctl.bvp_tol);
    }
}

TEST_CASE("sample_exact lands on the requested abscissae") {
    const RadialProblem prob = linear_eigen();
    const std::vector<double> pts{0.0, 0.1, 0.3, 0.30001, 0.9};
    const auto st = sample_exact(prob, 1.0, pts);
    REQUIRE(st.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(st[i].r == pts[i]);
        CHECK(st[i].u == doctest::Approx(oracle::sinc_pi(pts[i])).epsilon(1e-10));
    }
    const std::vector<double> unsorted{0.5, 0.2};
    CHECK_THROWS_AS(sample_exact(prob, 1.0, unsorted), BadGrid);
}
