#pragma once

#include <cstddef>
#include <vector>

namespace jumpvex {

/// Space-time grid for the pricing solver: positive, strictly increasing
/// x-nodes (uniform or geometric) and a uniform partition of [0, T] used as
/// time-to-maturity levels.
struct Grid {
    std::vector<double> x;    // size N_x >= 3, x.front() > 0
    std::vector<double> tau;  // size N_t >= 2, uniform from 0 to T

    std::size_t n_x() const { return x.size(); }
    std::size_t n_t() const { return tau.size(); }
    double horizon() const { return tau.back(); }
    double dt() const { return tau[1] - tau[0]; }

    static Grid uniform(double x_min, double x_max, std::size_t n_x, double T, std::size_t n_t);
    static Grid geometric(double x_min, double x_max, std::size_t n_x, double T, std::size_t n_t);

    /// Geometric grid multiplicatively shifted so that x0 lies exactly on a
    /// node (pricing points should be nodes, not interpolants).
    static Grid geometric_through(double x0, double x_min, double x_max, std::size_t n_x, double T,
                                  std::size_t n_t);
};

void validate_grid(const Grid& grid);

}  // namespace jumpvex
