#include "jumpvex/jump_size.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace jumpvex {

ZFunction::ZFunction(Node node) : node_(std::move(node)) {
    if (const auto* t = std::get_if<TabulatedZ>(&node_)) {
        require_strictly_increasing(t->z, "zeta z-grid");
        if (t->z.size() != t->value.size())
            throw std::invalid_argument("zeta: grid/value length mismatch");
    }
}

double ZFunction::operator()(double z) const {
    if (const auto* a = std::get_if<AffineZ>(&node_)) return a->a + a->b * z;
    const auto& t = std::get<TabulatedZ>(node_);
    return interp_flat(t.z, t.value, z);
}

ZFunction ZFunction::tabulated(std::vector<double> z, std::vector<double> value) {
    return ZFunction(TabulatedZ{std::move(z), std::move(value)});
}

double TabulatedXZ::at(double xx, double tt, double zz) const {
    if (zz < z_support_lo || zz > z_support_hi) return 0.0;
    const std::size_t nx = x.size();
    const std::size_t nz = z.size();
    auto cell = [](const std::vector<double>& g, double v, std::size_t& lo, double& w) {
        if (g.size() == 1 || v <= g.front()) {
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
    auto slice_value = [&](std::size_t it_slice) -> double {
        const double* base = value.data() + it_slice * nx * nz;
        std::size_t ix, iz;
        double wx, wz;
        cell(x, xx, ix, wx);
        cell(z, zz, iz, wz);
        const std::size_t ix1 = (nx == 1) ? ix : ix + 1;
        const std::size_t iz1 = (nz == 1) ? iz : iz + 1;
        const double v00 = base[ix * nz + iz];
        const double v01 = base[ix * nz + iz1];
        const double v10 = base[ix1 * nz + iz];
        const double v11 = base[ix1 * nz + iz1];
        const double lo = v00 + wz * (v01 - v00);
        const double hi = v10 + wz * (v11 - v10);
        return lo + wx * (hi - lo);
    };
    if (t.size() == 1) return slice_value(0);
    std::size_t jt;
    double wt;
    cell(t, tt, jt, wt);
    const double a = slice_value(jt);
    const double b = slice_value(jt + 1);
    return a + wt * (b - a);
}

JumpSizeSpec::JumpSizeSpec(Node node) : node_(std::move(node)) {
    if (const auto* tab = std::get_if<TabulatedXZ>(&node_)) {
        require_strictly_increasing(tab->x, "tabulated_xz x");
        require_strictly_increasing(tab->z, "tabulated_xz z");
        require_strictly_increasing(tab->t, "tabulated_xz t");
        if (tab->value.size() != tab->x.size() * tab->z.size() * tab->t.size())
            throw std::invalid_argument("tabulated_xz: values size must be |t|*|x|*|z|");
        if (!(tab->z_support_lo <= tab->z_support_hi))
            throw std::invalid_argument("tabulated_xz: empty z support window");
    } else if (const auto* b = std::get_if<BumpJump>(&node_)) {
        if (!(b->bump.x_lo < b->bump.x_rise && b->bump.x_rise <= b->bump.x_fall &&
              b->bump.x_fall < b->bump.x_hi))
            throw std::invalid_argument("bump jump: bad trapezoid knots");
    }
}

double JumpSizeSpec::operator()(double x, double t, double z) const {
    return std::visit(
        [&](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ZeroJump>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, RelativeConstant>) {
                return n.c * x;
            } else if constexpr (std::is_same_v<T, RelativeOfZ>) {
                return x * n.zeta(z);
            } else if constexpr (std::is_same_v<T, SeparableJump>) {
                return n.psi(x, t) * n.zeta(z);
            } else if constexpr (std::is_same_v<T, BumpJump>) {
                return n.bump(x);
            } else {
                return n.at(x, t, z);
            }
        },
        node_);
}

namespace {

SignPattern classify(double lo, double hi) {
    if (lo >= 0.0) return SignPattern::nonnegative;
    if (hi <= 0.0) return SignPattern::nonpositive;
    return SignPattern::mixed;
}

SignPattern zfun_pattern(const ZFunction& zeta, double z_hint) {
    if (const auto* a = std::get_if<AffineZ>(&zeta.node())) {
        const double v0 = a->a;
        const double v1 = a->a + a->b * z_hint;
        return classify(std::min(v0, v1), std::max(v0, v1));
    }
    const auto& t = std::get<TabulatedZ>(zeta.node());
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : t.value) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return classify(lo, hi);
}

}  // namespace

SignPattern JumpSizeSpec::sign_pattern(double z_hint) const {
    return std::visit(
        [&](const auto& n) -> SignPattern {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ZeroJump>) {
                return SignPattern::nonnegative;
            } else if constexpr (std::is_same_v<T, RelativeConstant>) {
                return n.c >= 0.0 ? SignPattern::nonnegative : SignPattern::nonpositive;
            } else if constexpr (std::is_same_v<T, RelativeOfZ>) {
                return zfun_pattern(n.zeta, z_hint);
            } else if constexpr (std::is_same_v<T, SeparableJump>) {
                // psi is sampled crudely; a sign flip in psi makes the product mixed
                double lo = std::numeric_limits<double>::infinity(), hi = -lo;
                for (double xx : {0.25, 0.5, 1.0, 2.0, 4.0})
                    for (double tt : {0.0, 0.5, 1.0}) {
                        const double v = n.psi(xx, tt);
                        lo = std::min(lo, v);
                        hi = std::max(hi, v);
                    }
                const SignPattern ps = classify(lo, hi);
                const SignPattern zs = zfun_pattern(n.zeta, z_hint);
                if (ps == SignPattern::mixed || zs == SignPattern::mixed) return SignPattern::mixed;
                return ps == zs ? SignPattern::nonnegative : SignPattern::nonpositive;
            } else if constexpr (std::is_same_v<T, BumpJump>) {
                return n.bump.height >= 0.0 ? SignPattern::nonnegative : SignPattern::nonpositive;
            } else {
                double lo = std::numeric_limits<double>::infinity(), hi = -lo;
                for (double v : n.value) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                return classify(lo, hi);
            }
        },
        node_);
}

bool JumpSizeSpec::depends_on_time() const {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, SeparableJump>) {
                return n.psi.depends_on_time();
            } else if constexpr (std::is_same_v<T, TabulatedXZ>) {
                return n.t.size() > 1;
            } else {
                return false;
            }
        },
        node_);
}

}  // namespace jumpvex
