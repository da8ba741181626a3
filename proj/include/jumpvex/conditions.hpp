#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>

#include "jumpvex/model.hpp"

namespace jumpvex {

enum class ConditionStatus { pass, fail, not_applicable };

struct ConditionEntry {
    ConditionStatus status = ConditionStatus::not_applicable;
    /// Smallest constant making the inequality hold on the sample cloud
    /// (fitted C), or the sharpest gamma for the jump floor.
    std::optional<double> best_constant;
    /// A sample (x, t, z) violating the inequality by more than the report
    /// tolerance; present for every fail.
    std::optional<std::array<double, 3>> witness;
    std::string note;
};

struct SamplingResolution {
    std::size_t n_x = 0, n_t = 0, n_z = 0;
    double x_min = 0.0, x_max = 0.0;
    double max_dx = 0.0;  // coarsest x spacing used for discrete derivatives
};

/// Verdicts for the model's structural hypotheses, each fitted or refuted on
/// a sample cloud. Insufficient sampling shows up in `resolution`, never as a
/// silent pass.
struct ConditionReport {
    ConditionEntry quadratic_growth;      // beta^2 + phi^2 <= C x^2
    ConditionEntry lipschitz;             // |d beta| + |d phi| <= C |dx|
    ConditionEntry jump_floor;            // phi > gamma x for the model's gamma
    ConditionEntry signed_convexity;      // phi convex in x where phi > 0, concave where phi < 0
    ConditionEntry curvature_sign;        // phi_xx * phi >= 0
    ConditionEntry integrated_growth;     // beta^2 + int phi^2 m(dz) <= C x^2
    ConditionEntry integrated_lipschitz;  // (d beta)^2 + int (d phi)^2 m(dz) <= C dx^2
    ConditionEntry moment_growth;         // int |phi|^p m(dz) <= C_p (1 + x^p), p = 1..4
    SamplingResolution resolution;
    double tolerance = 1e-9;  // relative tolerance for the discrete-derivative checks
};

/// Samples every condition on the cloud x_samples x t_samples x z_samples.
/// The second-derivative checks use central differences on consecutive
/// x-sample triples. Throws std::invalid_argument for empty or non-positive
/// sample lists.
ConditionReport check_conditions(const Model& model, std::span<const double> x_samples,
                                 std::span<const double> t_samples,
                                 std::span<const double> z_samples);

const char* to_string(ConditionStatus status);

}  // namespace jumpvex
