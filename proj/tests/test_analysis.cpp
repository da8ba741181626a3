#include <doctest.h>

#include <cmath>

#include "jumpvex/analysis.hpp"
#include "oracles.hpp"
#include "test_models.hpp"

using namespace jumpvex;

namespace {

Grid default_grid(double x0 = 1.0, std::size_t n_x = 161, std::size_t n_t = 81) {
    return Grid::geometric_through(x0, x0 / 8.0, 8.0 * x0 * 1.3, n_x, 1.0, n_t);
}

}  // namespace

TEST_CASE("surfaces of linear payoffs are flat in curvature") {
    const PriceSurface s = solve_pide(test_models::constant_relative_jump(),
                                      Payoff::linear(1.0, 0.0), default_grid(), SchemeConfig{});
    const ConvexityReport rep = check_convexity(s, 1e-9);
    CHECK(rep.is_convex);
    CHECK(std::abs(rep.min_second_difference) <= 1e-6);
}

TEST_CASE("counterexample surface is not convex; the chord at 0.6 sits below the value") {
    const Model m = counterexample_model();
    const Grid grid = Grid::uniform(0.1, 2.9, 225, 1.0, 101);
    const PriceSurface s = solve_pide(m, Payoff::put(1.0), grid, SchemeConfig{});
    const std::size_t last = grid.n_t() - 1;
    const double u_half = s.at_node(32, last);   // x = 0.5
    const double u_mid = s.at_node(40, last);    // x = 0.6
    const double u_one = s.at_node(72, last);    // x = 1.0
    CHECK(u_half == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(u_one == doctest::Approx(0.0).epsilon(1e-9));
    // chord of u between 0.5 and 1.0 evaluated at 0.6
    const double chord = u_half + (u_one - u_half) * (0.6 - 0.5) / (1.0 - 0.5);
    CHECK(u_mid > chord);

    const ConvexityReport rep = check_convexity(s, 1e-6 * 2.8);
    CHECK(!rep.is_convex);
    CHECK(rep.min_x > 0.5);
    CHECK(rep.min_x < 1.0);
}

TEST_CASE("linear-in-x jumps preserve convexity of a call surface") {
    const Model m = test_models::constant_relative_jump(0.2, 0.1, 1.0);
    const PriceSurface s = solve_pide(m, Payoff::call(1.0), default_grid(), SchemeConfig{});
    double max_abs = 0.0;
    for (double v : s.values) max_abs = std::max(max_abs, std::abs(v));
    const ConvexityReport rep = check_convexity(s, 1e-6 * max_abs);
    CHECK(rep.is_convex);

    SUBCASE("spot-check convexity against the mixture oracle by chords") {
        for (double x : {0.6, 0.9, 1.0, 1.4, 2.0}) {
            const double h = 0.05;
            const double left = oracles::merton_fixed_jump_call(x - h, 1.0, 0.2, 0.1, 1.0, 1.0);
            const double mid = oracles::merton_fixed_jump_call(x, 1.0, 0.2, 0.1, 1.0, 1.0);
            const double right = oracles::merton_fixed_jump_call(x + h, 1.0, 0.2, 0.1, 1.0, 1.0);
            CHECK(mid <= 0.5 * (left + right) + 1e-12);
        }
    }
}

TEST_CASE("convexity verdict is invariant under adding an affine function") {
    const PriceSurface s = solve_pide(test_models::constant_relative_jump(), Payoff::call(1.0),
                                      default_grid(1.0, 81, 41), SchemeConfig{});
    PriceSurface shifted = s;
    for (std::size_t j = 0; j < s.grid.n_t(); ++j)
        for (std::size_t i = 0; i < s.grid.n_x(); ++i)
            shifted.values[j * s.grid.n_x() + i] += 3.0 * s.grid.x[i] - 7.0;
    const ConvexityReport a = check_convexity(s, 1e-9);
    const ConvexityReport b = check_convexity(shifted, 1e-9);
    CHECK(a.min_second_difference == doctest::Approx(b.min_second_difference).epsilon(1e-10));
    CHECK(std::abs(a.min_second_difference - b.min_second_difference) <= 1e-12 * 100.0);
}

TEST_CASE("scaling a convex payoff by 2 doubles the surface and keeps verdicts") {
    const Model m = test_models::constant_relative_jump();
    const Grid grid = default_grid(1.0, 81, 41);
    const PriceSurface s1 = solve_pide(m, Payoff::power(2.0, 0.5), grid, SchemeConfig{});
    const PriceSurface s2 = solve_pide(m, Payoff::power(2.0, 1.0), grid, SchemeConfig{});
    for (std::size_t k = 0; k < s1.values.size(); ++k)
        CHECK(s2.values[k] == doctest::Approx(2.0 * s1.values[k]).epsilon(1e-10));
}

TEST_CASE("compare_models: a model dominates itself") {
    const Model m = test_models::constant_relative_jump();
    CompareConfig cfg;
    cfg.grid = default_grid(1.0, 81, 41);
    const ComparisonReport rep = compare_models(m, m, Payoff::call(1.0), cfg);
    CHECK(rep.dominated);
    CHECK(rep.hypotheses_met);
    CHECK(std::abs(rep.max_violation) <= 1e-12);
    CHECK(!rep.beta_differs);
    CHECK(!rep.phi_differs);
}

TEST_CASE("compare_models: jump model dominates its no-jump twin") {
    const Model hi = test_models::constant_relative_jump(0.2, 0.1, 1.0);
    Model lo = hi;
    lo.label = "no_jumps";
    lo.jump_size = JumpSizeSpec::zero();
    CompareConfig cfg;
    cfg.grid = default_grid(1.0, 161, 81);
    const ComparisonReport rep = compare_models(hi, lo, Payoff::call(1.0), cfg);
    CHECK(rep.hypotheses_met);
    CHECK(rep.dominated);
    CHECK(rep.phi_differs);
    CHECK(!rep.beta_differs);
    // the gap at the money must be genuine, not a tolerance artifact
    CHECK(rep.price_hi - rep.price_lo > rep.tolerance);
}

TEST_CASE("compare_models: lower intensity prices lower, checked by both routes") {
    const Model hi = test_models::constant_relative_jump(0.2, 0.1, 1.0);
    Model lo = hi;
    lo.label = "half_intensity";
    lo.intensity = CoefficientSpec::constant(0.5);
    CompareConfig cfg;
    cfg.grid = default_grid(1.0, 161, 81);
    SUBCASE("finite differences") {
        const ComparisonReport rep = compare_models(hi, lo, Payoff::call(1.0), cfg);
        CHECK(rep.hypotheses_met);
        CHECK(rep.lambda_differs);
        CHECK(rep.dominated);
        CHECK(rep.price_hi - rep.price_lo > rep.tolerance);
        const double gap_oracle = oracles::merton_fixed_jump_call(1.0, 1.0, 0.2, 0.1, 1.0, 1.0) -
                                  oracles::merton_fixed_jump_call(1.0, 1.0, 0.2, 0.1, 0.5, 1.0);
        CHECK(rep.price_hi - rep.price_lo == doctest::Approx(gap_oracle).epsilon(0.05));
    }
    SUBCASE("monte carlo with a shared seed ladder") {
        cfg.method = CompareMethod::mc;
        cfg.mc.n_paths = 20000;
        cfg.mc.n_steps = 64;
        const ComparisonReport rep = compare_models(hi, lo, Payoff::call(1.0), cfg);
        CHECK(rep.dominated);
        CHECK(rep.method == "mc");
    }
}

TEST_CASE("compare_models: swapped arguments expose the same gap with opposite sign") {
    const Model hi = test_models::constant_relative_jump(0.2, 0.1, 1.0);
    Model lo = hi;
    lo.intensity = CoefficientSpec::constant(0.25);
    CompareConfig cfg;
    cfg.grid = default_grid(1.0, 81, 41);
    const ComparisonReport fwd = compare_models(hi, lo, Payoff::call(1.0), cfg);
    const ComparisonReport rev = compare_models(lo, hi, Payoff::call(1.0), cfg);
    CHECK(!rev.hypotheses_met);  // the screen catches the inverted intensities
    CHECK(rev.max_violation > 0.0);
    // max over the grid of (u_hi - u_lo) equals -min of (u_lo - u_hi): here both
    // solves are shared, so the reversed report's violation is the forward gap
    CHECK(rev.max_violation == doctest::Approx(fwd.price_hi - fwd.price_lo).epsilon(0.25));
}

TEST_CASE("compare_models refuses nonconvex payoffs") {
    CompareConfig cfg;
    cfg.grid = default_grid(1.0, 41, 21);
    const Payoff bad = Payoff::piecewise({0.5, 1.0, 2.0}, {0.0, 1.0, 1.5});
    CHECK_THROWS_AS(compare_models(test_models::diffusion_only(), test_models::diffusion_only(),
                                   bad, cfg),
                    std::invalid_argument);
}

TEST_CASE("lcp probes: curvature-free jump sizes never violate") {
    const std::vector<double> xs{0.5, 0.8, 1.0, 1.6, 2.5};
    const std::vector<double> ts{0.0, 0.5};
    const std::vector<double> ws{0.05, 0.1, 0.2};
    for (const Model& m :
         {test_models::diffusion_only(), test_models::constant_relative_jump(),
          test_models::time_modulated_lambda(), test_models::truncated_density(4)}) {
        const LcpReport rep = lcp_scan(m, xs, ts, ws);
        INFO("model ", m.label);
        CHECK(!rep.violation_found);
    }
}

TEST_CASE("lcp probes: the counterexample is caught in the bump region") {
    std::vector<double> xs;
    for (double x = 0.45; x <= 0.8001; x += 0.0125) xs.push_back(x);
    const std::vector<double> ts{0.0};
    const std::vector<double> ws{0.05, 0.1, 0.2};
    const LcpReport rep = lcp_scan(counterexample_model(), xs, ts, ws);
    CHECK(rep.violation_found);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->value < -rep.tolerance);
    CHECK(rep.witness->x0 >= 0.45);
    CHECK(rep.witness->x0 <= 0.8);
}

TEST_CASE("lcp probes reject infinite-activity models and empty probe lists") {
    const std::vector<double> xs{1.0};
    const std::vector<double> ts{0.0};
    const std::vector<double> ws{0.1};
    CHECK_THROWS_AS(lcp_scan(test_models::density_model(), xs, ts, ws), std::domain_error);
    CHECK_THROWS_AS(lcp_scan(test_models::diffusion_only(), {}, ts, ws), std::invalid_argument);
}
