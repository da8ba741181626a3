#pragma once

#include <string>

#include "jumpvex/coefficients.hpp"
#include "jumpvex/jump_size.hpp"
#include "jumpvex/measure.hpp"

namespace jumpvex {

struct Coefficients {
    double diffusion = 0.0;  // beta(x, t)
    double jump_size = 0.0;  // phi(x, t, z)
    double intensity = 0.0;  // lambda(t)
};

/// A one-dimensional jump-diffusion market model
///
///   dX = diffusion(X,t) dW + integral of jump_size(X,t,z) against the
///        compensated jump measure with intensity(t) dt x measure(dz).
///
/// gamma is the relative lower bound the jump size is expected to respect,
/// jump_size(x,t,z) > gamma * x with gamma > -1, which keeps the price
/// strictly positive. Immutable after construction; safe to share across
/// threads.
struct Model {
    std::string label;
    CoefficientSpec diffusion;                    // beta
    JumpSizeSpec jump_size;                       // phi
    CoefficientSpec intensity;                    // lambda, time-dependence only
    MeasureSpec measure;
    double gamma = -0.5;

    /// Coefficient values at (x, t, z). Throws std::domain_error when x <= 0,
    /// t is outside [0, horizon], or z is outside the measure's label space.
    Coefficients eval(double x, double t, double z,
                      double horizon = std::numeric_limits<double>::infinity()) const;

    double intensity_at(double t) const { return intensity(1.0, t); }
};

/// Structural validation: gamma > -1, lambda time-only and nonnegative on
/// [0, horizon]. Throws std::invalid_argument on violation.
void validate_model(const Model& model, double horizon);

/// The model that breaks preservation of convexity: no diffusion, unit
/// intensity on [0,1] labels, and a nonnegative trapezoidal jump bump
/// phi = 0 outside (0.5, 0.75) with phi > 1 on (0.55, 0.70).
Model counterexample_model();

}  // namespace jumpvex
