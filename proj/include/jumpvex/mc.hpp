#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jumpvex/model.hpp"
#include "jumpvex/payoff.hpp"

namespace jumpvex {

struct MCConfig {
    std::int64_t n_paths = 100000;
    int n_steps = 256;  // uniform Euler steps on [t0, T]
    std::uint64_t seed = 42;
    bool antithetic = false;
    int z_quadrature_nodes = 64;  // compensator integral resolution
};

struct Path {
    std::vector<double> times;
    std::vector<double> values;      // strictly positive (floored at x_floor)
    std::vector<double> jump_times;  // step times at which a jump applied
    std::int64_t floor_events = 0;
};

struct MCEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::int64_t n_paths = 0;
    std::uint64_t seed = 0;
    std::string model_label;
    std::string payoff_desc;
    std::int64_t floor_events = 0;  // Euler positivity-floor hits across all paths
};

/// The Euler positivity floor: the continuous process stays strictly
/// positive, but a discrete diffusion increment can overshoot; overshoots are
/// clipped here and counted so the bias is observable.
inline constexpr double kPositivityFloor = 1e-12;

/// One Euler path of the jump-diffusion on n_steps uniform steps of [t0, T].
/// Per step: diffusion increment beta(X,t) dW, a Poisson number of jumps with
/// mean lambda(t) m(Z) dt whose labels are drawn from the normalized measure,
/// and the compensator drift -lambda(t) dt * integral of phi against m.
/// Randomness is derived deterministically from (seed, path_index).
/// Throws std::domain_error for an untruncated infinite-activity measure and
/// std::invalid_argument for t0 >= T.
Path simulate_path(const Model& model, double x0, double t0, double T, const MCConfig& config,
                   std::int64_t path_index);

/// Mean of payoff(X(T)) over n_paths independent paths. Bit-reproducible for
/// fixed (seed, n_paths, n_steps) at any thread count: per-path results fill
/// a vector indexed by path and are combined by a fixed-order pairwise sum.
MCEstimate price_mc(const Model& model, const Payoff& payoff, double x0, double t0, double T,
                    const MCConfig& config);

/// Fixed-order pairwise summation used by the MC reduction.
double pairwise_sum(const double* data, std::size_t n);

}  // namespace jumpvex
