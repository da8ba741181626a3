#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "jumpvex/grid.hpp"
#include "jumpvex/model.hpp"
#include "jumpvex/payoff.hpp"

namespace jumpvex {

/// Discretization knobs for the pricing equation u_t = a u_xx + B u, stepped
/// in time-to-maturity. Outside [x_min, x_max] the solution is extended
/// linearly (zero second derivative), consistent with linear payoff wings;
/// jump destinations beyond the grid use the same extrapolation.
struct SchemeConfig {
    int z_quadrature_nodes = 64;
    int smoothing_startup_steps = 4;  // initial steps run as two half-steps each
};

/// u(x_i, tau_j) on a grid, tau = time to maturity. values[.][0] is the
/// payoff slice, reproduced exactly.
struct PriceSurface {
    Grid grid;
    std::vector<double> values;  // index j * n_x + i
    std::string model_label;
    std::string payoff_desc;

    double at_node(std::size_t i, std::size_t j) const { return values[j * grid.n_x() + i]; }
    std::span<const double> slice(std::size_t j) const {
        return {values.data() + j * grid.n_x(), grid.n_x()};
    }
    /// Bilinear interpolation inside the grid; clamps outside.
    double at(double x, double tau) const;
};

/// (L u)(x_i, t) for a slice sampled on grid.x: central second and first
/// differences (three-point nonuniform weights, zero curvature at the ends)
/// plus the nonlocal term
///   lambda(t) * integral of [u(x + phi) - u - phi u_x] m(dz)
/// with u at jump destinations taken by linear interpolation and linear
/// extrapolation beyond the grid. Throws std::domain_error if a destination
/// x_i + phi is nonpositive.
std::vector<double> apply_generator(const Model& model, std::span<const double> u_slice,
                                    const Grid& grid, double t, const SchemeConfig& config);

/// Pointwise generator value for an analytically known test function f with
/// derivatives fx, fxx; no grid interpolation enters the nonlocal term.
double generator_at(const Model& model, const std::function<double(double)>& f,
                    const std::function<double(double)>& fx,
                    const std::function<double(double)>& fxx, double x, double t,
                    const SchemeConfig& config);

/// Solves u_t = L u from the payoff slice by IMEX stepping: diffusion
/// implicit via a tridiagonal solve, nonlocal term explicit from the previous
/// slice. The first smoothing_startup_steps steps are taken as two half
/// steps. Throws std::invalid_argument when the explicit part violates
/// max(lambda) * m(Z) * dt <= 1 (the message carries the offending dt and the
/// minimal N_t).
PriceSurface solve_pide(const Model& model, const Payoff& payoff, const Grid& grid,
                        const SchemeConfig& config);

/// Same stepping with the slice replaced by max(slice, payoff) at each
/// exercise date (calendar times, each of which must be a grid time level).
PriceSurface solve_bermudan(const Model& model, const Payoff& payoff, const Grid& grid,
                            const SchemeConfig& config, std::span<const double> exercise_times);

/// CSV export, header "x,tau,u", one row per node, 17 significant digits.
void write_surface_csv(std::ostream& os, const PriceSurface& surface);

}  // namespace jumpvex
