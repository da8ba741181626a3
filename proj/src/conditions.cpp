#include "jumpvex/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jumpvex {

const char* to_string(ConditionStatus status) {
    switch (status) {
        case ConditionStatus::pass: return "pass";
        case ConditionStatus::fail: return "fail";
        default: return "not_applicable";
    }
}

namespace {

struct Cloud {
    std::span<const double> x, t, z;
};

// Fit the smallest C with value(x,t,z) <= C * scale(x) over the cloud.
template <typename Value, typename Scale>
double fit_constant(const Cloud& c, Value&& value, Scale&& scale) {
    double best = 0.0;
    for (double x : c.x)
        for (double t : c.t)
            for (double z : c.z) best = std::max(best, value(x, t, z) / scale(x));
    return best;
}

}  // namespace

ConditionReport check_conditions(const Model& model, std::span<const double> x_samples,
                                 std::span<const double> t_samples,
                                 std::span<const double> z_samples) {
    if (x_samples.empty() || t_samples.empty() || z_samples.empty())
        throw std::invalid_argument("check_conditions: sample lists must be nonempty");
    for (double x : x_samples)
        if (!(x > 0.0)) throw std::invalid_argument("check_conditions: x samples must be positive");

    ConditionReport rep;
    const Cloud cloud{x_samples, t_samples, z_samples};
    const double tol = rep.tolerance;

    rep.resolution.n_x = x_samples.size();
    rep.resolution.n_t = t_samples.size();
    rep.resolution.n_z = z_samples.size();
    rep.resolution.x_min = *std::min_element(x_samples.begin(), x_samples.end());
    rep.resolution.x_max = *std::max_element(x_samples.begin(), x_samples.end());
    for (std::size_t i = 1; i < x_samples.size(); ++i)
        rep.resolution.max_dx = std::max(rep.resolution.max_dx, x_samples[i] - x_samples[i - 1]);

    auto beta = [&](double x, double t) { return model.diffusion(x, t); };
    auto phi = [&](double x, double t, double z) { return model.jump_size(x, t, z); };

    // quadratic growth: beta^2 + phi^2 <= C x^2
    rep.quadratic_growth.status = ConditionStatus::pass;
    rep.quadratic_growth.best_constant = fit_constant(
        cloud,
        [&](double x, double t, double z) {
            const double b = beta(x, t), p = phi(x, t, z);
            return b * b + p * p;
        },
        [](double x) { return x * x; });

    // Lipschitz in x: |d beta| + |d phi| <= C |dx| on consecutive sample pairs
    {
        double best = 0.0;
        for (std::size_t i = 1; i < x_samples.size(); ++i) {
            const double dx = x_samples[i] - x_samples[i - 1];
            for (double t : t_samples)
                for (double z : z_samples) {
                    const double db = std::abs(beta(x_samples[i], t) - beta(x_samples[i - 1], t));
                    const double dp =
                        std::abs(phi(x_samples[i], t, z) - phi(x_samples[i - 1], t, z));
                    best = std::max(best, (db + dp) / dx);
                }
        }
        rep.lipschitz.status = ConditionStatus::pass;
        rep.lipschitz.best_constant = best;
    }

    // jump floor: phi > gamma x; the best constant is the sharpest admissible
    // gamma, min over the cloud of phi / x.
    {
        double sharpest = std::numeric_limits<double>::infinity();
        std::optional<std::array<double, 3>> witness;
        for (double x : x_samples)
            for (double t : t_samples)
                for (double z : z_samples) {
                    const double ratio = phi(x, t, z) / x;
                    if (ratio < sharpest) sharpest = ratio;
                    if (ratio <= model.gamma - tol && !witness) witness = {{x, t, z}};
                }
        rep.jump_floor.best_constant = sharpest;
        if (witness) {
            rep.jump_floor.status = ConditionStatus::fail;
            rep.jump_floor.witness = witness;
            rep.jump_floor.note = "jump size fails phi > gamma*x for declared gamma";
        } else {
            rep.jump_floor.status = ConditionStatus::pass;
        }
    }

    // signed convexity: for each (t, z), phi(., t, z) must be convex on the
    // region where it is positive and concave where negative; a sign change
    // along x at fixed (t, z) is itself a failure.
    // curvature sign: phi_xx * phi >= 0 at interior sample triples.
    {
        ConditionEntry& sc = rep.signed_convexity;
        ConditionEntry& cs = rep.curvature_sign;
        sc.status = ConditionStatus::pass;
        cs.status = ConditionStatus::pass;
        bool any_signed_point = false;
        for (double t : t_samples) {
            for (double z : z_samples) {
                int sign_seen = 0;  // -1, 0, +1 tracker for the slice
                for (double x : x_samples) {
                    const double v = phi(x, t, z);
                    const double s = tol * std::max(1.0, std::abs(x));
                    if (v > s) {
                        any_signed_point = true;
                        if (sign_seen < 0 && sc.status == ConditionStatus::pass) {
                            sc.status = ConditionStatus::fail;
                            sc.witness = {{x, t, z}};
                            sc.note = "jump size changes sign along x at fixed (t, z)";
                        }
                        sign_seen = 1;
                    } else if (v < -s) {
                        any_signed_point = true;
                        if (sign_seen > 0 && sc.status == ConditionStatus::pass) {
                            sc.status = ConditionStatus::fail;
                            sc.witness = {{x, t, z}};
                            sc.note = "jump size changes sign along x at fixed (t, z)";
                        }
                        sign_seen = -1;
                    }
                }
                for (std::size_t i = 1; i + 1 < x_samples.size(); ++i) {
                    const double xm = x_samples[i - 1], xc = x_samples[i], xp = x_samples[i + 1];
                    const double hm = xc - xm, hp = xp - xc;
                    const double vm = phi(xm, t, z), vc = phi(xc, t, z), vp = phi(xp, t, z);
                    const double d2 =
                        2.0 * (hm * vp - (hm + hp) * vc + hp * vm) / (hm * hp * (hm + hp));
                    const double scale = std::max({std::abs(vm), std::abs(vc), std::abs(vp), 1.0});
                    const double d2_tol = tol * scale / (hm * hp);
                    if (vc > tol * scale && d2 < -d2_tol && sc.status == ConditionStatus::pass) {
                        sc.status = ConditionStatus::fail;
                        sc.witness = {{xc, t, z}};
                        sc.note = "jump size not convex where positive";
                    }
                    if (vc < -tol * scale && d2 > d2_tol && sc.status == ConditionStatus::pass) {
                        sc.status = ConditionStatus::fail;
                        sc.witness = {{xc, t, z}};
                        sc.note = "jump size not concave where negative";
                    }
                    if (d2 * vc < -d2_tol * scale && cs.status == ConditionStatus::pass) {
                        cs.status = ConditionStatus::fail;
                        cs.witness = {{xc, t, z}};
                        cs.note = "phi_xx * phi < 0";
                    }
                }
            }
        }
        if (!any_signed_point) {
            sc.note = "vacuous: jump size identically zero on the sample cloud";
        }
    }

    // Integrated conditions only make sense against a general jump measure;
    // the unit-interval model is covered by the pointwise ones.
    if (model.measure.is_lebesgue_unit() || !model.measure.finite_activity()) {
        const char* why = model.measure.is_lebesgue_unit()
                              ? "lebesgue_unit measure: pointwise conditions apply"
                              : "infinite-activity measure: integrate after truncation";
        rep.integrated_growth.note = why;
        rep.integrated_lipschitz.note = why;
        rep.moment_growth.note = why;
    } else {
        const MeasureQuadrature q = model.measure.quadrature(64);
        rep.integrated_growth.status = ConditionStatus::pass;
        rep.integrated_growth.best_constant = fit_constant(
            Cloud{x_samples, t_samples, std::span<const double>(&q.node[0], 1)},
            [&](double x, double t, double) {
                const double b = beta(x, t);
                return b * b + q.integrate([&](double z) {
                    const double p = phi(x, t, z);
                    return p * p;
                });
            },
            [](double x) { return x * x; });

        double best_lip = 0.0;
        for (std::size_t i = 1; i < x_samples.size(); ++i) {
            const double dx = x_samples[i] - x_samples[i - 1];
            for (double t : t_samples) {
                const double db = beta(x_samples[i], t) - beta(x_samples[i - 1], t);
                const double integral = q.integrate([&](double z) {
                    const double dp = phi(x_samples[i], t, z) - phi(x_samples[i - 1], t, z);
                    return dp * dp;
                });
                best_lip = std::max(best_lip, (db * db + integral) / (dx * dx));
            }
        }
        rep.integrated_lipschitz.status = ConditionStatus::pass;
        rep.integrated_lipschitz.best_constant = best_lip;

        double best_moment = 0.0;
        for (int p = 1; p <= 4; ++p) {
            for (double x : x_samples)
                for (double t : t_samples) {
                    const double integral = q.integrate(
                        [&](double z) { return std::pow(std::abs(phi(x, t, z)), p); });
                    best_moment = std::max(best_moment, integral / (1.0 + std::pow(x, p)));
                }
        }
        rep.moment_growth.status = ConditionStatus::pass;
        rep.moment_growth.best_constant = best_moment;
    }

    return rep;
}

}  // namespace jumpvex
