#pragma once

#include <span>
#include <vector>

#include "jumpvex/grid.hpp"
#include "jumpvex/mc.hpp"
#include "jumpvex/pide.hpp"

namespace jumpvex::reference {

/// Serial re-implementations of the parallel kernels. These are the
/// correctness baselines: plain loops, no OpenMP, same stream derivation and
/// reduction order, so results must match the parallel versions bit for bit.

MCEstimate price_mc_serial(const Model& model, const Payoff& payoff, double x0, double t0,
                           double T, const MCConfig& config);

std::vector<double> apply_generator_serial(const Model& model, std::span<const double> u_slice,
                                           const Grid& grid, double t, const SchemeConfig& config);

}  // namespace jumpvex::reference
