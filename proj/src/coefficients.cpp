#include "jumpvex/coefficients.hpp"

#include <algorithm>
#include <cmath>

namespace jumpvex {

void require_strictly_increasing(const std::vector<double>& v, const std::string& what) {
    if (v.empty()) throw std::invalid_argument(what + ": empty grid");
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1]))
            throw std::invalid_argument(what + ": grid not strictly increasing at index " +
                                        std::to_string(i));
    }
}

double interp_flat(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + w * (ys[hi] - ys[lo]);
}

double PiecewiseLinearT::operator()(double tt) const { return interp_flat(t, value, tt); }

double BumpX::operator()(double x) const {
    if (x <= x_lo || x >= x_hi) return 0.0;
    if (x < x_rise) return height * (x - x_lo) / (x_rise - x_lo);
    if (x <= x_fall) return height;
    return height * (x_hi - x) / (x_hi - x_fall);
}

double TabulatedXT::at(double xx, double tt) const {
    const std::size_t nt = t.size();
    auto clamp_cell = [](const std::vector<double>& g, double v, std::size_t& lo, double& w) {
        if (v <= g.front()) {
            lo = 0;
            w = 0.0;
        } else if (v >= g.back()) {
            lo = g.size() - 2;
            w = 1.0;
        } else {
            const auto it = std::upper_bound(g.begin(), g.end(), v);
            lo = static_cast<std::size_t>(it - g.begin()) - 1;
            w = (v - g[lo]) / (g[lo + 1] - g[lo]);
        }
    };
    if (x.size() == 1 && nt == 1) return value[0];
    if (x.size() == 1) {
        std::size_t jt;
        double wt;
        clamp_cell(t, tt, jt, wt);
        return value[jt] + wt * (value[jt + 1] - value[jt]);
    }
    if (nt == 1) {
        std::size_t ix;
        double wx;
        clamp_cell(x, xx, ix, wx);
        return value[ix] + wx * (value[ix + 1] - value[ix]);
    }
    std::size_t ix, jt;
    double wx, wt;
    clamp_cell(x, xx, ix, wx);
    clamp_cell(t, tt, jt, wt);
    const double v00 = value[ix * nt + jt];
    const double v01 = value[ix * nt + jt + 1];
    const double v10 = value[(ix + 1) * nt + jt];
    const double v11 = value[(ix + 1) * nt + jt + 1];
    const double lo = v00 + wt * (v01 - v00);
    const double hi = v10 + wt * (v11 - v10);
    return lo + wx * (hi - lo);
}

CoefficientSpec::CoefficientSpec(Node node) : node_(std::move(node)) {
    if (const auto* p = std::get_if<PiecewiseLinearX>(&node_)) {
        require_strictly_increasing(p->x, "piecewise_x");
        if (p->x.size() != p->value.size())
            throw std::invalid_argument("piecewise_x: knot/value length mismatch");
    } else if (const auto* b = std::get_if<BumpX>(&node_)) {
        if (!(b->x_lo < b->x_rise && b->x_rise <= b->x_fall && b->x_fall < b->x_hi))
            throw std::invalid_argument("bump_x: knots must satisfy x_lo < x_rise <= x_fall < x_hi");
    } else if (const auto* m = std::get_if<TimeModulatedCoeff>(&node_)) {
        if (!m->base) throw std::invalid_argument("time_modulated: missing base");
        require_strictly_increasing(m->factor.t, "time_modulated factor");
        if (m->factor.t.size() != m->factor.value.size())
            throw std::invalid_argument("time_modulated: factor knot/value length mismatch");
    } else if (const auto* tab = std::get_if<TabulatedXT>(&node_)) {
        require_strictly_increasing(tab->x, "tabulated x");
        require_strictly_increasing(tab->t, "tabulated t");
        if (tab->value.size() != tab->x.size() * tab->t.size())
            throw std::invalid_argument("tabulated: values size must be |x|*|t|");
    }
}

double CoefficientSpec::operator()(double x, double t) const {
    return std::visit(
        [&](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ZeroCoeff>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, ConstantCoeff>) {
                return n.c;
            } else if constexpr (std::is_same_v<T, ProportionalCoeff>) {
                return n.c * x;
            } else if constexpr (std::is_same_v<T, PowerCoeff>) {
                return n.c * std::pow(x, n.p);
            } else if constexpr (std::is_same_v<T, PiecewiseLinearX>) {
                return interp_flat(n.x, n.value, x);
            } else if constexpr (std::is_same_v<T, BumpX>) {
                return n(x);
            } else if constexpr (std::is_same_v<T, TimeModulatedCoeff>) {
                return (*n.base)(x, t) * n.factor(t);
            } else {
                return n.at(x, t);
            }
        },
        node_);
}

bool CoefficientSpec::is_time_only() const {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ZeroCoeff> || std::is_same_v<T, ConstantCoeff>) {
                return true;
            } else if constexpr (std::is_same_v<T, TimeModulatedCoeff>) {
                return n.base->is_time_only();
            } else if constexpr (std::is_same_v<T, TabulatedXT>) {
                return n.x.size() == 1;
            } else {
                return false;
            }
        },
        node_);
}

bool CoefficientSpec::depends_on_time() const {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, TimeModulatedCoeff>) {
                return true;
            } else if constexpr (std::is_same_v<T, TabulatedXT>) {
                return n.t.size() > 1;
            } else {
                return false;
            }
        },
        node_);
}

CoefficientSpec CoefficientSpec::piecewise_x(std::vector<double> x, std::vector<double> value) {
    return CoefficientSpec(PiecewiseLinearX{std::move(x), std::move(value)});
}

CoefficientSpec CoefficientSpec::bump_x(double x_lo, double x_rise, double x_fall, double x_hi,
                                        double height) {
    return CoefficientSpec(BumpX{x_lo, x_rise, x_fall, x_hi, height});
}

CoefficientSpec CoefficientSpec::time_modulated(CoefficientSpec base, PiecewiseLinearT factor) {
    return CoefficientSpec(TimeModulatedCoeff{
        std::make_shared<const CoefficientSpec>(std::move(base)), std::move(factor)});
}

CoefficientSpec CoefficientSpec::tabulated(std::vector<double> x, std::vector<double> t,
                                           std::vector<double> value) {
    return CoefficientSpec(TabulatedXT{std::move(x), std::move(t), std::move(value)});
}

}  // namespace jumpvex
