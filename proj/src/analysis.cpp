#include "jumpvex/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jumpvex {

ConvexityReport check_convexity(const PriceSurface& surface, double tolerance) {
    const auto& xs = surface.grid.x;
    const std::size_t n_x = surface.grid.n_x();
    const std::size_t n_t = surface.grid.n_t();
    ConvexityReport rep;
    rep.tolerance = tolerance;
    rep.n_x = n_x;
    rep.n_t = n_t;
    rep.model_label = surface.model_label;
    rep.payoff_desc = surface.payoff_desc;
    rep.slice_convex.assign(n_t, 1);
    rep.min_second_difference = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n_t; ++j) {
        const auto u = surface.slice(j);
        for (std::size_t i = 1; i + 1 < n_x; ++i) {
            const double hm = xs[i] - xs[i - 1];
            const double hp = xs[i + 1] - xs[i];
            const double d2 =
                2.0 * (hm * u[i + 1] - (hm + hp) * u[i] + hp * u[i - 1]) / (hm * hp * (hm + hp));
            if (d2 < rep.min_second_difference) {
                rep.min_second_difference = d2;
                rep.min_x = xs[i];
                rep.min_tau = surface.grid.tau[j];
            }
            if (d2 < -tolerance) rep.slice_convex[j] = 0;
        }
        if (!rep.slice_convex[j]) rep.is_convex = false;
    }
    return rep;
}

namespace {

// Hypothesis screen sampling: x spread geometrically over the grid span,
// a handful of times, and the measure's quadrature labels.
void screen_hypotheses(const Model& hi, const Model& lo, const CompareConfig& config,
                       ComparisonReport& rep) {
    const double T = config.grid.horizon();
    const double x_lo = config.grid.x.front();
    const double x_hi = config.grid.x.back();
    std::vector<double> xs(33), ts(9);
    for (std::size_t i = 0; i < xs.size(); ++i)
        xs[i] = x_lo * std::pow(x_hi / x_lo, static_cast<double>(i) / (xs.size() - 1));
    for (std::size_t j = 0; j < ts.size(); ++j) ts[j] = T * static_cast<double>(j) / (ts.size() - 1);
    const MeasureQuadrature q_hi = hi.measure.quadrature(16);
    const MeasureQuadrature q_lo = lo.measure.quadrature(16);
    std::vector<double> zs = q_hi.node;
    zs.insert(zs.end(), q_lo.node.begin(), q_lo.node.end());

    const double tol = 1e-12;
    std::string unmet;
    auto note = [&](const std::string& s) {
        if (!unmet.empty()) unmet += "; ";
        unmet += s;
    };

    bool beta_ok = true, lambda_ok = true, ratio_ok = true;
    for (double t : ts) {
        if (lo.intensity_at(t) > hi.intensity_at(t) + tol) lambda_ok = false;
        if (std::abs(lo.intensity_at(t) - hi.intensity_at(t)) > tol) rep.lambda_differs = true;
        for (double x : xs) {
            const double b_hi = hi.diffusion(x, t), b_lo = lo.diffusion(x, t);
            if (std::abs(b_lo) > std::abs(b_hi) + tol) beta_ok = false;
            if (std::abs(b_lo - b_hi) > tol) rep.beta_differs = true;
            for (double z : zs) {
                if (!hi.measure.label_in_space(z) || !lo.measure.label_in_space(z)) continue;
                const double p_hi = hi.jump_size(x, t, z), p_lo = lo.jump_size(x, t, z);
                if (std::abs(p_hi - p_lo) > tol) rep.phi_differs = true;
                if (std::abs(p_lo) > tol && p_hi / p_lo < 1.0 - 1e-9) ratio_ok = false;
            }
        }
    }
    if (!beta_ok) note("|beta_lo| <= |beta_hi| fails on samples");
    if (!lambda_ok) note("lambda_lo <= lambda_hi fails on samples");
    if (!ratio_ok) note("phi_hi/phi_lo >= 1 fails on samples");

    // signed convexity must hold for at least one of the two jump sizes
    auto signed_convex_ok = [&](const Model& m) {
        for (double t : ts)
            for (double z : zs) {
                if (!m.measure.label_in_space(z)) continue;
                int sign_seen = 0;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    const double v = m.jump_size(xs[i], t, z);
                    const double s = 1e-9 * std::max(1.0, xs[i]);
                    if (v > s) {
                        if (sign_seen < 0) return false;
                        sign_seen = 1;
                    } else if (v < -s) {
                        if (sign_seen > 0) return false;
                        sign_seen = -1;
                    }
                    if (i >= 1 && i + 1 < xs.size()) {
                        const double hm = xs[i] - xs[i - 1], hp = xs[i + 1] - xs[i];
                        const double vm = m.jump_size(xs[i - 1], t, z);
                        const double vp = m.jump_size(xs[i + 1], t, z);
                        const double d2 =
                            2.0 * (hm * vp - (hm + hp) * v + hp * vm) / (hm * hp * (hm + hp));
                        const double scale = std::max({std::abs(vm), std::abs(v), std::abs(vp), 1.0});
                        const double d2_tol = 1e-9 * scale / (hm * hp);
                        if (v > s && d2 < -d2_tol) return false;
                        if (v < -s && d2 > d2_tol) return false;
                    }
                }
            }
        return true;
    };
    if (!signed_convex_ok(hi) && !signed_convex_ok(lo))
        note("neither jump size is convex-where-positive / concave-where-negative on samples");

    rep.hypotheses_met = unmet.empty();
    rep.unmet_hypotheses = unmet;
}

double nearest_node_value(const PriceSurface& s, double x0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.grid.n_x(); ++i)
        if (std::abs(s.grid.x[i] - x0) < std::abs(s.grid.x[best] - x0)) best = i;
    return s.at_node(best, s.grid.n_t() - 1);
}

}  // namespace

ComparisonReport compare_models(const Model& model_hi, const Model& model_lo,
                                const Payoff& payoff, const CompareConfig& config) {
    const auto [convex, witness] = is_convex_payoff(payoff);
    if (!convex)
        throw std::invalid_argument(
            "compare_models: payoff is not convex (dominance needs a convex contract)");

    ComparisonReport rep;
    rep.model_hi_label = model_hi.label;
    rep.model_lo_label = model_lo.label;
    screen_hypotheses(model_hi, model_lo, config, rep);

    if (config.method == CompareMethod::fd) {
        rep.method = "fd";
        const PriceSurface u_hi = solve_pide(model_hi, payoff, config.grid, config.scheme);
        const PriceSurface u_lo = solve_pide(model_lo, payoff, config.grid, config.scheme);

        // Solver error estimate by step-doubling the model_hi solve.
        Grid fine = config.grid;
        fine.tau.resize(2 * config.grid.n_t() - 1);
        for (std::size_t j = 0; j < fine.tau.size(); ++j)
            fine.tau[j] = config.grid.horizon() * static_cast<double>(j) / (fine.tau.size() - 1);
        const PriceSurface u_fine = solve_pide(model_hi, payoff, fine, config.scheme);
        double err_est = 0.0;
        const std::size_t last = config.grid.n_t() - 1;
        for (std::size_t i = 0; i < config.grid.n_x(); ++i)
            err_est = std::max(err_est, std::abs(u_hi.at_node(i, last) -
                                                 u_fine.at_node(i, u_fine.grid.n_t() - 1)));
        rep.tolerance = 2.0 * err_est;

        rep.max_violation = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < config.grid.n_t(); ++j) {
            for (std::size_t i = 0; i < config.grid.n_x(); ++i) {
                const double gap = u_lo.at_node(i, j) - u_hi.at_node(i, j);
                if (gap > rep.max_violation) {
                    rep.max_violation = gap;
                    rep.violation_x = config.grid.x[i];
                    rep.violation_tau = config.grid.tau[j];
                }
            }
        }
        rep.price_hi = nearest_node_value(u_hi, config.x0);
        rep.price_lo = nearest_node_value(u_lo, config.x0);
    } else {
        rep.method = "mc";
        const double T = config.grid.horizon();
        const MCEstimate e_hi = price_mc(model_hi, payoff, config.x0, 0.0, T, config.mc);
        const MCEstimate e_lo = price_mc(model_lo, payoff, config.x0, 0.0, T, config.mc);
        rep.price_hi = e_hi.mean;
        rep.price_lo = e_lo.mean;
        rep.max_violation = e_lo.mean - e_hi.mean;
        rep.violation_x = config.x0;
        rep.violation_tau = T;
        rep.tolerance = 3.0 * std::sqrt(e_hi.stderr_ * e_hi.stderr_ + e_lo.stderr_ * e_lo.stderr_);
    }
    rep.dominated = rep.max_violation <= rep.tolerance;
    return rep;
}

LcpReport lcp_scan(const Model& model, std::span<const double> x_points,
                   std::span<const double> t_points, std::span<const double> family_widths,
                   const SchemeConfig& config) {
    if (!model.measure.finite_activity())
        throw std::domain_error("lcp_scan: infinite-activity model; truncate it first");
    if (x_points.empty() || t_points.empty() || family_widths.empty())
        throw std::invalid_argument("lcp_scan: probe lists must be nonempty");

    LcpReport rep;
    rep.model_label = model.label;
    double most_negative = 0.0;

    for (double t0 : t_points) {
        for (double x0 : x_points) {
            LcpProbe best{x0, t0, 0.0, std::numeric_limits<double>::infinity()};
            for (double w : family_widths) {
                if (!(w > 0.0)) throw std::invalid_argument("lcp_scan: widths must be positive");
                const double inv_w3 = 1.0 / (w * w * w);
                auto f = [&](double x) {
                    const double d = x - x0;
                    return d * d * d * d * inv_w3;
                };
                auto fx = [&](double x) {
                    const double d = x - x0;
                    return 4.0 * d * d * d * inv_w3;
                };
                auto fxx = [&](double x) {
                    const double d = x - x0;
                    return 12.0 * d * d * inv_w3;
                };
                // fourth-order central second difference of x -> (L f)(x)
                const double h = std::min(w / 16.0, 0.25 * x0);
                double g[5];
                double g_scale = 0.0;
                for (int k = -2; k <= 2; ++k) {
                    g[k + 2] = generator_at(model, f, fx, fxx, x0 + k * h, t0, config);
                    g_scale = std::max(g_scale, std::abs(g[k + 2]));
                }
                const double d2 =
                    (-g[0] + 16.0 * g[1] - 30.0 * g[2] + 16.0 * g[3] - g[4]) / (12.0 * h * h);
                const double noise =
                    std::numeric_limits<double>::epsilon() * g_scale * 64.0 / (12.0 * h * h);
                rep.tolerance = std::max(rep.tolerance, std::max(1e-9, 1e3 * noise));
                if (d2 < best.value) {
                    best.value = d2;
                    best.width = w;
                }
            }
            rep.minima.push_back(best);
            if (best.value < most_negative) most_negative = best.value;
        }
    }
    for (const LcpProbe& probe : rep.minima) {
        if (probe.value < -rep.tolerance) {
            if (!rep.violation_found || probe.value < rep.witness->value) {
                rep.violation_found = true;
                rep.witness = probe;
            }
        }
    }
    return rep;
}

}  // namespace jumpvex
