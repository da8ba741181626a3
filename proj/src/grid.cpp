#include "jumpvex/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace jumpvex {

namespace {

std::vector<double> uniform_times(double T, std::size_t n_t) {
    std::vector<double> tau(n_t);
    for (std::size_t j = 0; j < n_t; ++j) tau[j] = T * static_cast<double>(j) / (n_t - 1);
    tau.back() = T;
    return tau;
}

}  // namespace

Grid Grid::uniform(double x_min, double x_max, std::size_t n_x, double T, std::size_t n_t) {
    Grid g;
    g.x.resize(n_x);
    for (std::size_t i = 0; i < n_x; ++i)
        g.x[i] = x_min + (x_max - x_min) * static_cast<double>(i) / (n_x - 1);
    g.x.back() = x_max;
    g.tau = uniform_times(T, n_t);
    validate_grid(g);
    return g;
}

Grid Grid::geometric(double x_min, double x_max, std::size_t n_x, double T, std::size_t n_t) {
    Grid g;
    g.x.resize(n_x);
    const double ratio = std::log(x_max / x_min);
    for (std::size_t i = 0; i < n_x; ++i)
        g.x[i] = x_min * std::exp(ratio * static_cast<double>(i) / (n_x - 1));
    g.x.back() = x_max;
    g.tau = uniform_times(T, n_t);
    validate_grid(g);
    return g;
}

Grid Grid::geometric_through(double x0, double x_min, double x_max, std::size_t n_x, double T,
                             std::size_t n_t) {
    Grid g = geometric(x_min, x_max, n_x, T, n_t);
    double best = g.x.front();
    for (double xi : g.x)
        if (std::abs(std::log(xi / x0)) < std::abs(std::log(best / x0))) best = xi;
    const double shift = x0 / best;
    for (double& xi : g.x) xi *= shift;
    // pin the nearest node to x0 exactly
    for (double& xi : g.x)
        if (std::abs(xi - x0) < 1e-12 * x0) xi = x0;
    validate_grid(g);
    return g;
}

void validate_grid(const Grid& grid) {
    if (grid.x.size() < 3) throw std::invalid_argument("grid: need at least 3 x-nodes");
    if (grid.tau.size() < 2) throw std::invalid_argument("grid: need at least 2 time levels");
    if (!(grid.x.front() > 0.0)) throw std::invalid_argument("grid: x_min must be positive");
    for (std::size_t i = 1; i < grid.x.size(); ++i)
        if (!(grid.x[i] > grid.x[i - 1]))
            throw std::invalid_argument("grid: x-nodes must be strictly increasing");
    for (std::size_t j = 1; j < grid.tau.size(); ++j)
        if (!(grid.tau[j] > grid.tau[j - 1]))
            throw std::invalid_argument("grid: time levels must be strictly increasing");
}

}  // namespace jumpvex
