#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jumpvex/mc.hpp"
#include "jumpvex/pide.hpp"

namespace jumpvex {

/// Discrete spatial-convexity verdict on a price surface: three-point second
/// differences (nonuniform weights) per time-to-maturity slice.
struct ConvexityReport {
    bool is_convex = true;                 // every slice convex within tolerance
    std::vector<char> slice_convex;        // per tau-slice verdicts
    double min_second_difference = 0.0;
    double min_x = 0.0;
    double min_tau = 0.0;
    double tolerance = 0.0;
    std::size_t n_x = 0, n_t = 0;          // grid provenance
    std::string model_label;
    std::string payoff_desc;
};

ConvexityReport check_convexity(const PriceSurface& surface, double tolerance);

enum class CompareMethod { fd, mc };

struct CompareConfig {
    CompareMethod method = CompareMethod::fd;
    Grid grid;              // fd: solve grid (also supplies T for mc)
    SchemeConfig scheme;
    MCConfig mc;            // mc: estimator settings, shared seed ladder
    double x0 = 1.0;        // mc: evaluation point
};

/// Outcome of the dominance check between a model expected to price higher
/// and one expected lower. The hypothesis screen samples |beta_lo| <= |beta|,
/// lambda_lo <= lambda, phi/phi_lo >= 1 where phi_lo != 0, and the signed
/// convexity of one of the two jump sizes; an unmet screen is reported, not
/// fatal.
struct ComparisonReport {
    bool dominated = false;     // max_violation <= tolerance
    double max_violation = 0.0; // max over the grid (fd) or at x0 (mc) of u_lo - u_hi
    double violation_x = 0.0;
    double violation_tau = 0.0;
    bool hypotheses_met = true;
    std::string unmet_hypotheses;
    bool beta_differs = false, lambda_differs = false, phi_differs = false;
    std::string method;
    double tolerance = 0.0;
    double price_hi = 0.0, price_lo = 0.0;  // at x0 (or nearest node), tau = T
    std::string model_hi_label, model_lo_label;
};

/// Prices both models identically (same grid for fd, same seed ladder for mc)
/// and reports the largest violation of u_lo <= u_hi. Throws
/// std::invalid_argument for a nonconvex payoff or incompatible grids.
ComparisonReport compare_models(const Model& model_hi, const Model& model_lo,
                                const Payoff& payoff, const CompareConfig& config);

struct LcpProbe {
    double x0 = 0.0;
    double t0 = 0.0;
    double width = 0.0;
    double value = 0.0;  // second x-derivative of (L f) at the probe point
};

/// Necessary-condition scan for local convexity preservation: for each probe
/// point and width w the quartic f(x) = ((x - x0)/w)^4 * w (convex, with
/// vanishing second derivative at x0) is pushed through the generator and
/// the second derivative of x -> (L f)(x) is measured at x0 by a fourth-order
/// central stencil. A negative value beyond tolerance certifies a violation;
/// absence of violations is NOT a proof that the property holds.
struct LcpReport {
    bool violation_found = false;
    std::optional<LcpProbe> witness;        // most negative violating probe
    std::vector<LcpProbe> minima;           // per (x0, t0): min over widths
    double tolerance = 0.0;
    std::string model_label;
};

LcpReport lcp_scan(const Model& model, std::span<const double> x_points,
                   std::span<const double> t_points, std::span<const double> family_widths,
                   const SchemeConfig& config = {});

}  // namespace jumpvex
