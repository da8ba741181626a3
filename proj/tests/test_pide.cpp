#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <sstream>

#include "jumpvex/pide.hpp"
#include "jumpvex/reference.hpp"
#include "oracles.hpp"
#include "test_models.hpp"

using namespace jumpvex;

namespace {

std::vector<double> sample(const Grid& g, double (*f)(double)) {
    std::vector<double> u(g.n_x());
    for (std::size_t i = 0; i < g.n_x(); ++i) u[i] = f(g.x[i]);
    return u;
}

double identity(double x) { return x; }
double square(double x) { return x * x; }

}  // namespace

TEST_CASE("generator annihilates linear slices") {
    const Grid grid = Grid::geometric(0.25, 4.0, 101, 1.0, 2);
    const SchemeConfig config;
    for (const Model& m : {test_models::constant_relative_jump(), counterexample_model(),
                           test_models::truncated_density(4)}) {
        const auto out = apply_generator(m, sample(grid, identity), grid, 0.0, config);
        for (std::size_t i = 0; i < grid.n_x(); ++i) {
            INFO("model ", m.label, " node ", i);
            CHECK(std::abs(out[i]) <= 1e-11 * (1.0 + grid.x[i]));
        }
    }
}

TEST_CASE("generator on x^2 without jumps gives sigma^2 x^2 at interior nodes") {
    const Grid grid = Grid::geometric(0.25, 4.0, 101, 1.0, 2);
    Model m = test_models::diffusion_only(0.2);
    m.intensity = CoefficientSpec::constant(1.0);  // jump size is zero anyway
    const auto out = apply_generator(m, sample(grid, square), grid, 0.0, SchemeConfig{});
    for (std::size_t i = 1; i + 1 < grid.n_x(); ++i) {
        const double expected = 0.04 * grid.x[i] * grid.x[i];
        CHECK(out[i] == doctest::Approx(expected).epsilon(1e-10));
    }
    CHECK(out[0] == 0.0);  // zero-curvature boundary rows
    CHECK(out[grid.n_x() - 1] == 0.0);
}

TEST_CASE("generator on x^2 with relative jumps adds lambda c^2 x^2") {
    const Grid grid = Grid::uniform(0.25, 4.0, 751, 1.0, 2);
    const Model m = test_models::constant_relative_jump(0.2, 0.1, 1.0);
    const auto out = apply_generator(m, sample(grid, square), grid, 0.0, SchemeConfig{});
    for (std::size_t i = 1; i + 1 < grid.n_x(); ++i) {
        const double x = grid.x[i];
        if (1.1 * x >= grid.x.back()) break;  // keep destinations interior
        const double expected = (0.04 + 1.0 * 0.01) * x * x;
        CHECK(out[i] == doctest::Approx(expected).epsilon(2e-3));
    }
}

TEST_CASE("generator flags nonpositive jump destinations") {
    const Grid grid = Grid::uniform(0.5, 2.0, 11, 1.0, 2);
    Model m = test_models::constant_relative_jump(0.2, -1.5, 1.0);  // phi = -1.5 x crosses zero
    m.gamma = -0.99;
    CHECK_THROWS_AS(apply_generator(m, sample(grid, identity), grid, 0.0, SchemeConfig{}),
                    std::domain_error);
}

TEST_CASE("parallel generator matches the serial reference bit for bit") {
    const Grid grid = Grid::geometric(0.2, 5.0, 173, 1.0, 2);
    const Model m = test_models::truncated_density(4);
    std::vector<double> u(grid.n_x());
    for (std::size_t i = 0; i < grid.n_x(); ++i) u[i] = std::max(1.3 - grid.x[i], 0.0);
    const auto parallel = apply_generator(m, u, grid, 0.3, SchemeConfig{});
    const auto serial = reference::apply_generator_serial(m, u, grid, 0.3, SchemeConfig{});
    REQUIRE(parallel.size() == serial.size());
    const int saved = omp_get_max_threads();
    for (int threads : {1, 2, 8}) {
        omp_set_num_threads(threads);
        const auto again = apply_generator(m, u, grid, 0.3, SchemeConfig{});
        for (std::size_t i = 0; i < parallel.size(); ++i) CHECK(again[i] == parallel[i]);
    }
    omp_set_num_threads(saved);
    for (std::size_t i = 0; i < parallel.size(); ++i) CHECK(parallel[i] == serial[i]);
}

TEST_CASE("payoff slice is reproduced bit-identically at tau = 0") {
    const Grid grid = Grid::geometric(0.25, 4.0, 51, 1.0, 11);
    const Payoff g = Payoff::put(1.0);
    const PriceSurface s =
        solve_pide(test_models::constant_relative_jump(), g, grid, SchemeConfig{});
    for (std::size_t i = 0; i < grid.n_x(); ++i) CHECK(s.at_node(i, 0) == g(grid.x[i]));
}

TEST_CASE("martingale models preserve the identity payoff") {
    const Grid grid = Grid::geometric(0.125, 8.0, 151, 1.0, 101);
    for (const Model& m :
         {test_models::diffusion_only(), test_models::constant_relative_jump(),
          test_models::time_modulated_lambda(), test_models::truncated_density(4)}) {
        const PriceSurface s = solve_pide(m, Payoff::linear(1.0, 0.0), grid, SchemeConfig{});
        for (std::size_t j = 0; j < grid.n_t(); ++j)
            for (std::size_t i = 1; i + 1 < grid.n_x(); ++i) {
                INFO("model ", m.label);
                CHECK(s.at_node(i, j) == doctest::Approx(grid.x[i]).epsilon(1e-6));
            }
    }
}

TEST_CASE("one explicit Euler step from the payoff equals payoff + dt * generator") {
    // With no diffusion the implicit half is the identity, so a single solver
    // step IS the explicit Euler step.
    const Model m = counterexample_model();
    const Grid grid = Grid::uniform(0.1, 2.9, 225, 0.01, 2);
    SchemeConfig config;
    config.smoothing_startup_steps = 0;
    const Payoff g = Payoff::put(1.0);
    const PriceSurface s = solve_pide(m, g, grid, config);
    std::vector<double> payoff_slice(grid.n_x());
    for (std::size_t i = 0; i < grid.n_x(); ++i) payoff_slice[i] = g(grid.x[i]);
    const auto lg = apply_generator(m, payoff_slice, grid, grid.horizon(), config);
    for (std::size_t i = 0; i < grid.n_x(); ++i) {
        const double manual = payoff_slice[i] + grid.dt() * lg[i];
        CHECK(s.at_node(i, 1) == doctest::Approx(manual).epsilon(1e-12));
    }
}

TEST_CASE("counterexample surface: frozen off the bump, strictly above payoff at 0.6") {
    const Model m = counterexample_model();
    const Grid grid = Grid::uniform(0.1, 2.9, 225, 1.0, 101);
    const PriceSurface s = solve_pide(m, Payoff::put(1.0), grid, SchemeConfig{});
    const std::size_t last = grid.n_t() - 1;
    // nodes: 0.5 -> 32, 0.6 -> 40, 1.0 -> 72
    CHECK(grid.x[32] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::abs(s.at_node(32, last) - 0.5) <= 1e-9);
    CHECK(std::abs(s.at_node(72, last) - 0.0) <= 1e-9);
    CHECK(s.at_node(40, last) > 0.4 + 1e-3);
}

TEST_CASE("explicit stability bound is enforced with a helpful message") {
    Model m = test_models::constant_relative_jump(0.2, 0.1, 30.0);  // lambda m dt = 30/10 > 1
    const Grid grid = Grid::geometric(0.25, 4.0, 21, 1.0, 11);
    try {
        solve_pide(m, Payoff::call(1.0), grid, SchemeConfig{});
        FAIL("expected stability failure");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("N_t") != std::string::npos);
        CHECK(msg.find("dt") != std::string::npos);
    }
}

TEST_CASE("monotonicity in the contract data") {
    const Grid grid = Grid::geometric(0.25, 4.0, 101, 1.0, 51);
    const Model m = test_models::constant_relative_jump();
    const PriceSurface lo = solve_pide(m, Payoff::call(1.1), grid, SchemeConfig{});
    const PriceSurface hi = solve_pide(m, Payoff::call(0.9), grid, SchemeConfig{});
    for (std::size_t k = 0; k < lo.values.size(); ++k)
        CHECK(lo.values[k] <= hi.values[k] + 1e-12);
}

TEST_CASE("Jensen bound on the surface for convex payoffs") {
    const Grid grid = Grid::geometric(0.125, 8.0, 151, 1.0, 101);
    for (const Model& m : {test_models::diffusion_only(), test_models::constant_relative_jump()}) {
        const Payoff g = Payoff::put(1.0);
        const PriceSurface s = solve_pide(m, g, grid, SchemeConfig{});
        for (std::size_t j = 0; j < grid.n_t(); ++j)
            for (std::size_t i = 0; i < grid.n_x(); ++i)
                CHECK(s.at_node(i, j) >= g(grid.x[i]) - 5e-4 * (1.0 + grid.x[i]));
    }
}

TEST_CASE("step-doubling refinement contracts successive differences") {
    const Model m = test_models::constant_relative_jump();
    const Payoff g = Payoff::call(1.0);
    auto price = [&](std::size_t n_x, std::size_t n_t) {
        const Grid grid = Grid::geometric_through(1.0, 0.125, 8.0, n_x, 1.0, n_t);
        const PriceSurface s = solve_pide(m, g, grid, SchemeConfig{});
        return s.at(1.0, 1.0);
    };
    const double coarse = price(101, 26);
    const double mid = price(201, 51);
    const double fine = price(401, 101);
    const double d1 = std::abs(coarse - mid);
    const double d2 = std::abs(mid - fine);
    CHECK(d1 >= 1.5 * d2);
}

TEST_CASE("fd price agrees with mc and the jump-mixture series") {
    const Model m = test_models::constant_relative_jump(0.2, 0.1, 1.0);
    const Payoff g = Payoff::call(1.0);
    const Grid grid = Grid::geometric_through(1.0, 0.125, 8.8, 321, 1.0, 201);
    const PriceSurface s = solve_pide(m, g, grid, SchemeConfig{});
    const double fd = s.at(1.0, 1.0);
    const double series = oracles::merton_fixed_jump_call(1.0, 1.0, 0.2, 0.1, 1.0, 1.0);
    CHECK(fd == doctest::Approx(series).epsilon(5e-3));
}

TEST_CASE("bermudan with no exercise dates is the European surface") {
    const Grid grid = Grid::geometric(0.25, 4.0, 51, 1.0, 21);
    const Model m = test_models::diffusion_only();
    const PriceSurface eu = solve_pide(m, Payoff::put(1.0), grid, SchemeConfig{});
    const PriceSurface be = solve_bermudan(m, Payoff::put(1.0), grid, SchemeConfig{}, {});
    CHECK(eu.values == be.values);
}

TEST_CASE("bermudan with all grid dates dominates the European surface and the payoff") {
    const Grid grid = Grid::geometric(0.25, 4.0, 101, 1.0, 41);
    const Model m = test_models::diffusion_only();
    const Payoff g = Payoff::put(1.0);
    std::vector<double> dates;
    for (std::size_t j = 1; j + 1 < grid.n_t(); ++j) dates.push_back(1.0 - grid.tau[j]);
    const PriceSurface eu = solve_pide(m, g, grid, SchemeConfig{});
    const PriceSurface be = solve_bermudan(m, g, grid, SchemeConfig{}, dates);
    for (std::size_t k = 0; k < eu.values.size(); ++k) CHECK(be.values[k] >= eu.values[k] - 1e-12);
    const std::size_t last = grid.n_t() - 1;
    for (std::size_t i = 0; i < grid.n_x(); ++i)
        CHECK(be.at_node(i, last) >= g(grid.x[i]) - 5e-4 * (1.0 + grid.x[i]));
}

TEST_CASE("nested exercise ladders never lose value") {
    const Grid grid = Grid::geometric_through(1.0, 0.25, 4.0, 101, 1.0, 61);  // 60 steps
    const Model m = test_models::diffusion_only();
    const Payoff g = Payoff::put(1.0);
    auto ladder = [&](int k) {
        std::vector<double> dates;
        for (int j = 1; j <= k; ++j) dates.push_back(static_cast<double>(j) / k);
        const PriceSurface s = solve_bermudan(m, g, grid, SchemeConfig{}, dates);
        return s.at(1.0, 1.0);
    };
    const double three = ladder(3), six = ladder(6), twelve = ladder(12);
    CHECK(six >= three - 1e-12);
    CHECK(twelve >= six - 1e-12);
}

TEST_CASE("bermudan rejects off-grid exercise dates") {
    const Grid grid = Grid::geometric(0.25, 4.0, 21, 1.0, 11);
    const std::vector<double> dates{0.123456};
    CHECK_THROWS_AS(
        solve_bermudan(test_models::diffusion_only(), Payoff::put(1.0), grid, SchemeConfig{}, dates),
        std::invalid_argument);
}

TEST_CASE("surface csv uses the pinned header and 17 significant digits") {
    const Grid grid = Grid::uniform(0.5, 1.5, 3, 1.0, 2);
    const Model m = test_models::diffusion_only();
    const PriceSurface s = solve_pide(m, Payoff::put(1.0), grid, SchemeConfig{});
    std::ostringstream os;
    write_surface_csv(os, s);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "x,tau,u");
    std::getline(is, line);
    double x, tau, u;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &tau, &u) == 3);
    CHECK(x == 0.5);
    CHECK(tau == 0.0);
    CHECK(u == s.at_node(0, 0));  // 17 digits round-trip doubles exactly
}
