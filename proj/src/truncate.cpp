#include "jumpvex/truncate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jumpvex {

namespace {

// Lower convex hull values of the points (xs[i], ys[i]) evaluated back on xs,
// computed by a monotone-chain sweep over the already-sorted abscissae.
std::vector<double> lower_hull_values(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> hull;
    hull.reserve(n);
    auto cross = [&](std::size_t a, std::size_t b, std::size_t c) {
        return (xs[b] - xs[a]) * (ys[c] - ys[a]) - (ys[b] - ys[a]) * (xs[c] - xs[a]);
    };
    for (std::size_t i = 0; i < n; ++i) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), i) <= 0.0)
            hull.pop_back();
        hull.push_back(i);
    }
    std::vector<double> out(n);
    std::size_t seg = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (seg + 1 < hull.size() && xs[hull[seg + 1]] < xs[i]) ++seg;
        if (hull[seg] == i || seg + 1 >= hull.size()) {
            out[i] = (hull[seg] == i) ? ys[i] : ys[hull.back()];
            continue;
        }
        const std::size_t a = hull[seg], b = hull[seg + 1];
        const double w = (xs[i] - xs[a]) / (xs[b] - xs[a]);
        out[i] = ys[a] + w * (ys[b] - ys[a]);
    }
    return out;
}

}  // namespace

std::vector<double> convex_minorant_capped(std::span<const double> x_grid,
                                           std::span<const double> values, double slope_cap) {
    if (x_grid.size() != values.size())
        throw std::invalid_argument("convex minorant: grid/value size mismatch");
    if (x_grid.empty()) return {};
    if (!(x_grid.front() > 0.0))
        throw std::invalid_argument("convex minorant: grid must be positive");
    // Anchor at the origin, where the jump size vanishes.
    std::vector<double> xs(x_grid.size() + 1), ys(values.size() + 1);
    xs[0] = 0.0;
    ys[0] = 0.0;
    std::copy(x_grid.begin(), x_grid.end(), xs.begin() + 1);
    std::copy(values.begin(), values.end(), ys.begin() + 1);

    std::vector<double> hull = lower_hull_values(xs, ys);
    // Clamp: hull slopes are nondecreasing, so once a segment exceeds the cap
    // the maximal admissible continuation is the straight line at the cap.
    for (std::size_t i = 1; i < hull.size(); ++i) {
        const double dx = xs[i] - xs[i - 1];
        if (hull[i] - hull[i - 1] > slope_cap * dx) {
            for (std::size_t j = i; j < hull.size(); ++j)
                hull[j] = hull[i - 1] + slope_cap * (xs[j] - xs[i - 1]);
            break;
        }
    }
    return {hull.begin() + 1, hull.end()};
}

std::vector<double> concave_majorant_floored(std::span<const double> x_grid,
                                             std::span<const double> values, double slope_floor) {
    std::vector<double> negated(values.size());
    std::transform(values.begin(), values.end(), negated.begin(), [](double v) { return -v; });
    std::vector<double> hull = convex_minorant_capped(x_grid, negated, -slope_floor);
    std::transform(hull.begin(), hull.end(), hull.begin(), [](double v) { return -v; });
    return hull;
}

Model truncate_model(const Model& model, int n, std::span<const double> x_grid,
                     std::span<const double> t_grid) {
    if (n < 1) throw std::invalid_argument("truncate_model: n must be positive");
    if (model.measure.is_lebesgue_unit())
        throw std::domain_error("truncate_model: model is already finite-intensity");
    if (x_grid.size() < 2) throw std::invalid_argument("truncate_model: x_grid needs >= 2 nodes");
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (!(x_grid[i] > 0.0)) throw std::invalid_argument("truncate_model: x_grid must be positive");
        if (i > 0 && !(x_grid[i] > x_grid[i - 1]))
            throw std::invalid_argument("truncate_model: x_grid must be strictly increasing");
    }

    const double lo = 1.0 / n, hi = static_cast<double>(n);
    const MeasureSpec restricted = model.measure.restricted(lo, hi);
    const MeasureQuadrature q = restricted.quadrature(64);

    std::vector<double> ts(t_grid.begin(), t_grid.end());
    if (ts.empty()) ts.push_back(0.0);
    if (ts.size() == 1 && model.jump_size.depends_on_time())
        throw std::invalid_argument(
            "truncate_model: time-dependent jump size needs an explicit t_grid");

    const double slope_cap = static_cast<double>(n);
    const double slope_floor = (1.0 - n) / static_cast<double>(n);

    TabulatedXZ tab;
    tab.x.assign(x_grid.begin(), x_grid.end());
    tab.z = q.node;
    tab.t = ts;
    tab.z_support_lo = lo;
    tab.z_support_hi = hi;
    tab.value.assign(ts.size() * tab.x.size() * tab.z.size(), 0.0);

    std::vector<double> slice(x_grid.size());
    for (std::size_t it = 0; it < ts.size(); ++it) {
        for (std::size_t iz = 0; iz < tab.z.size(); ++iz) {
            bool has_pos = false, has_neg = false;
            for (std::size_t ix = 0; ix < x_grid.size(); ++ix) {
                slice[ix] = model.jump_size(x_grid[ix], ts[it], tab.z[iz]);
                if (slice[ix] > 0.0) has_pos = true;
                if (slice[ix] < 0.0) has_neg = true;
            }
            if (has_pos && has_neg)
                throw std::domain_error(
                    "truncate_model: jump size changes sign along x at (t, z) = (" +
                    std::to_string(ts[it]) + ", " + std::to_string(tab.z[iz]) + ")");
            std::vector<double> repl;
            if (has_pos)
                repl = convex_minorant_capped(x_grid, slice, slope_cap);
            else if (has_neg)
                repl = concave_majorant_floored(x_grid, slice, slope_floor);
            else
                repl.assign(x_grid.size(), 0.0);
            for (std::size_t ix = 0; ix < x_grid.size(); ++ix)
                tab.value[(it * tab.x.size() + ix) * tab.z.size() + iz] = repl[ix];
        }
    }

    Model out = model;
    out.label = model.label + "_trunc" + std::to_string(n);
    out.measure = restricted;
    out.jump_size = JumpSizeSpec(std::move(tab));
    return out;
}

}  // namespace jumpvex
