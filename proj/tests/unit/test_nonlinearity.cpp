#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "radlab/errors.hpp"
#include "radlab/nonlinearity.hpp"

using namespace radlab;

TEST_CASE("eval_f on the quintic family") {
    const PowerSumNonlinearity nl(1.0, {{1.0, 5.0}});
    CHECK(eval_f(nl, 0.0) == 0.0);
    CHECK(eval_f(nl, 2.0) == doctest::Approx(34.0));
    CHECK(eval_f(PowerSumNonlinearity(0.0, {{1.0, 5.0}}), -1.0) == doctest::Approx(-1.0));
}

TEST_CASE("eval_F is the antiderivative with F(0) = 0") {
    const PowerSumNonlinearity nl(1.0, {{1.0, 5.0}});
    CHECK(eval_F(nl, 0.0) == 0.0);
    CHECK(eval_F(PowerSumNonlinearity(3.0, {{2.0, 2.5}}), 0.0) == 0.0);
    CHECK(eval_F(nl, 2.0) == doctest::Approx(2.0 + 64.0 / 6.0));
    CHECK(eval_F(PowerSumNonlinearity(oracle::pi * oracle::pi), 1.0) == doctest::Approx(oracle::pi * oracle::pi / 2));
}

TEST_CASE("eval_fprime") {
    const PowerSumNonlinearity nl(1.0, {{1.0, 5.0}});
    CHECK(eval_fprime(nl, 0.0) == 1.0);
    CHECK(eval_fprime(nl, 1.0) == doctest::Approx(6.0));

    // finite-difference oracle for the (lambda=0, 2 u|u|^2) case at u = -2
    const PowerSumNonlinearity cubic(0.0, {{2.0, 3.0}});
    const double fd = oracle::central_difference([&](double u) { return cubic.f(u); }, -2.0, 1e-5);
    CHECK(fd == doctest::Approx(24.0).epsilon(1e-8));
    CHECK(eval_fprime(cubic, -2.0) == doctest::Approx(24.0).epsilon(1e-14));
}

TEST_CASE("exponents must exceed one") {
    CHECK_THROWS_AS(PowerSumNonlinearity(1.0, {{1.0, 1.0}}), PreconditionViolation);
    CHECK_THROWS_AS(PowerSumNonlinearity(1.0, {{1.0, 0.5}}), PreconditionViolation);
    CHECK_THROWS_AS(PowerSumNonlinearity(NAN), PreconditionViolation);
    CHECK_NOTHROW(PowerSumNonlinearity(1.0, {{1.0, 1.0001}}));
}

TEST_CASE("property: oddness of f, evenness of F") {
    oracle::Gen g(11);
    for (int trial = 0; trial < 200; ++trial) {
        const PowerSumNonlinearity nl(g.uniform(-5, 5), {{g.uniform(-2, 2), g.uniform(1.01, 7)},
                                                         {g.uniform(-2, 2), g.uniform(1.01, 7)}});
        const double u = g.uniform(-3, 3);
        CHECK(nl.f(-u) == doctest::Approx(-nl.f(u)).epsilon(1e-14));
        CHECK(nl.F(-u) == doctest::Approx(nl.F(u)).epsilon(1e-14));
    }
}

TEST_CASE("property: F' = f and f' matches central differences at O(h^2)") {
    oracle::Gen g(12);
    for (int trial = 0; trial < 50; ++trial) {
        const PowerSumNonlinearity nl(g.uniform(-3, 3), {{g.uniform(0.5, 2), g.uniform(2.2, 6)}});
        const double u = g.uniform(0.3, 2.0) * (trial % 2 ? 1 : -1);
        auto ratio = [&](auto&& fun, double target) {
            const double h = 0.02;
            const double e1 = std::abs(oracle::central_difference(fun, u, h) - target);
            const double e2 = std::abs(oracle::central_difference(fun, u, h / 2) - target);
            return e1 / e2;
        };
        const double rF = ratio([&](double x) { return nl.F(x); }, nl.f(u));
        const double rf = ratio([&](double x) { return nl.f(x); }, nl.fprime(u));
        CHECK(rF == doctest::Approx(4.0).epsilon(0.05));
        CHECK(rf == doctest::Approx(4.0).epsilon(0.05));
    }
}

TEST_CASE("two-term power sum") {
    const PowerSumNonlinearity nl(2.0, {{1.0, 5.0}, {1.0, 7.0}});
    CHECK(nl.f(1.5) == doctest::Approx(3.0 + std::pow(1.5, 5) + std::pow(1.5, 7)));
    CHECK(nl.F(1.5) == doctest::Approx(2.25 + std::pow(1.5, 6) / 6 + std::pow(1.5, 8) / 8));
    CHECK(nl.with_lambda(0.0).lambda() == 0.0);
    CHECK(nl.with_lambda(0.0).terms() == nl.terms());
}
