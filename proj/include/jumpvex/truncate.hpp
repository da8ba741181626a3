#pragma once

#include <span>
#include <vector>

#include "jumpvex/model.hpp"

namespace jumpvex {

/// Greatest convex minorant of the sampled values on x_grid, with the right
/// derivative capped at slope_cap. An implicit anchor (0, 0) is prepended:
/// the linear-growth bound forces the jump size to vanish at x -> 0, and the
/// continuum minorant is anchored there. Values must be nonnegative.
std::vector<double> convex_minorant_capped(std::span<const double> x_grid,
                                           std::span<const double> values, double slope_cap);

/// Mirror image for nonpositive values: least concave majorant with the right
/// derivative bounded below by slope_floor (typically (1-n)/n <= 0).
std::vector<double> concave_majorant_floored(std::span<const double> x_grid,
                                             std::span<const double> values, double slope_floor);

/// Finite-intensity approximation of a general-measure model: restricts the
/// measure to [1/n, n] and replaces the jump size, per (t, z), by its capped
/// convex minorant (where positive) or floored concave majorant (where
/// negative), tabulated on x_grid. The replacement vanishes for labels
/// outside [1/n, n].
///
/// Throws std::domain_error when the measure is lebesgue_unit (already
/// finite-intensity) or when the jump size changes sign along x at some
/// (t, z) sample.
Model truncate_model(const Model& model, int n, std::span<const double> x_grid,
                     std::span<const double> t_grid = {});

}  // namespace jumpvex
