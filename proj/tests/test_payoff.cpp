#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "jumpvex/payoff.hpp"

using namespace jumpvex;

TEST_CASE("payoff evaluation matches the contract definitions") {
    CHECK(Payoff::put(1.0)(0.4) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(Payoff::call(1.0)(1.0) == 0.0);
    CHECK(Payoff::linear(1.0, 0.0)(3.2) == doctest::Approx(3.2).epsilon(1e-15));
    CHECK(Payoff::power(2.0, 1.0)(3.0) == doctest::Approx(9.0));
    CHECK_THROWS_AS(Payoff::put(1.0)(-1.0), std::domain_error);
    CHECK_THROWS_AS(Payoff::put(1.0)(0.0), std::domain_error);
}

TEST_CASE("convexity decisions are exact for the parametric families") {
    CHECK(is_convex_payoff(Payoff::put(1.0)).first);
    CHECK(is_convex_payoff(Payoff::power(2.0, 1.0)).first);
    CHECK(is_convex_payoff(Payoff::call(2.0)).first);
    CHECK(is_convex_payoff(Payoff::smoothed_put(1.0, 0.05)).first);

    const auto [convex, witness] = is_convex_payoff(Payoff::piecewise({0.0, 1.0, 2.0}, {0.0, 1.0, 1.5}));
    CHECK(!convex);
    REQUIRE(witness.has_value());
    CHECK(*witness == doctest::Approx(1.0));

    CHECK(is_convex_payoff(Payoff::piecewise({0.5, 1.0, 2.0}, {0.5, 0.0, 1.0})).first);
}

TEST_CASE("convex payoffs pass random three-point chord checks") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(0.05, 5.0), uw(0.0, 1.0);
    const Payoff payoffs[] = {Payoff::call(1.0), Payoff::put(1.3), Payoff::power(2.0, 0.5),
                              Payoff::smoothed_put(1.0, 0.1),
                              Payoff::piecewise({0.5, 1.0, 2.0}, {0.5, 0.0, 1.0})};
    for (const Payoff& g : payoffs) {
        for (int i = 0; i < 500; ++i) {
            const double a = ux(rng), b = ux(rng), w = uw(rng);
            const double mid = w * a + (1.0 - w) * b;
            if (!(mid > 0.0)) continue;
            CHECK(g(mid) <= w * g(a) + (1.0 - w) * g(b) + 1e-12);
        }
    }
}

TEST_CASE("smoothed put converges to the put as the width shrinks") {
    for (double eps : {0.2, 0.05, 0.0125}) {
        const Payoff smooth = Payoff::smoothed_put(1.0, eps);
        const Payoff kinked = Payoff::put(1.0);
        for (double x = 0.2; x <= 2.0; x += 0.004) {
            const double diff = std::abs(smooth(x) - kinked(x));
            if (x < 1.0 - eps || x > 1.0 + eps) {
                CHECK(diff <= eps / 2.0);
            } else {
                CHECK(diff <= eps);
            }
        }
    }
    // eps = 0 degenerates to the put exactly
    const Payoff degenerate = Payoff::smoothed_put(1.0, 0.0);
    CHECK(degenerate(0.7) == Payoff::put(1.0)(0.7));
}

TEST_CASE("declared growth degree bounds samples on [1, 1e6]") {
    const Payoff payoffs[] = {Payoff::call(1.0), Payoff::put(1.0), Payoff::linear(2.0, 1.0),
                              Payoff::power(3.0, 0.1)};
    for (const Payoff& g : payoffs) {
        const int degree = g.growth_degree();
        // fit C on a coarse sample, then check a finer one
        double fitted = 0.0;
        for (double x = 1.0; x <= 1e6; x *= 10.0)
            fitted = std::max(fitted, std::abs(g(x)) / (1.0 + std::pow(x, degree)));
        for (double x = 1.0; x <= 1e6; x *= 3.0)
            CHECK(std::abs(g(x)) <= 1.0001 * (fitted + 1e-12) * (1.0 + std::pow(x, degree)));
    }
}

TEST_CASE("payoff parser round-trips the CLI syntax") {
    CHECK(parse_payoff("call:K=1.0")(2.0) == doctest::Approx(1.0));
    CHECK(parse_payoff("put:K=1.5")(1.0) == doctest::Approx(0.5));
    CHECK(parse_payoff("linear:a=1,b=0")(2.5) == doctest::Approx(2.5));
    CHECK(parse_payoff("power:p=2,c=1")(3.0) == doctest::Approx(9.0));
    CHECK(parse_payoff("sput:K=1.0,eps=0.01")(1.0) == doctest::Approx(0.01 / 4.0));
    const Payoff pwl = parse_payoff("pwl:0:0,1:1,2:1.5");
    CHECK(pwl(1.5) == doctest::Approx(1.25));
    CHECK_THROWS_AS(parse_payoff("straddle:K=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_payoff("call:K"), std::invalid_argument);
    CHECK_THROWS_AS(parse_payoff("put"), std::invalid_argument);
}
