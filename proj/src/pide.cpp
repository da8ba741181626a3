#include "jumpvex/pide.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace jumpvex {

namespace {

// Linear interpolation on the grid with linear extrapolation outside, using
// the end-segment slopes (zero-curvature wings).
double interp_extrap(std::span<const double> xs, std::span<const double> us, double x) {
    const std::size_t n = xs.size();
    if (x <= xs[0]) {
        const double slope = (us[1] - us[0]) / (xs[1] - xs[0]);
        return us[0] + slope * (x - xs[0]);
    }
    if (x >= xs[n - 1]) {
        const double slope = (us[n - 1] - us[n - 2]) / (xs[n - 1] - xs[n - 2]);
        return us[n - 1] + slope * (x - xs[n - 1]);
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return us[lo] + w * (us[hi] - us[lo]);
}

double first_difference(std::span<const double> xs, std::span<const double> us, std::size_t i) {
    const std::size_t n = xs.size();
    if (i == 0) return (us[1] - us[0]) / (xs[1] - xs[0]);
    if (i == n - 1) return (us[n - 1] - us[n - 2]) / (xs[n - 1] - xs[n - 2]);
    const double hm = xs[i] - xs[i - 1];
    const double hp = xs[i + 1] - xs[i];
    return (hm * hm * us[i + 1] - hp * hp * us[i - 1] + (hp * hp - hm * hm) * us[i]) /
           (hm * hp * (hm + hp));
}

double second_difference(std::span<const double> xs, std::span<const double> us, std::size_t i) {
    if (i == 0 || i + 1 >= xs.size()) return 0.0;  // linear wings
    const double hm = xs[i] - xs[i - 1];
    const double hp = xs[i + 1] - xs[i];
    return 2.0 * (hm * us[i + 1] - (hm + hp) * us[i] + hp * us[i - 1]) / (hm * hp * (hm + hp));
}

// Nonlocal term lambda(t) * integral of [u(x+phi) - u - phi u_x] m(dz) per
// node. Each node is independent; the inner quadrature runs in a fixed order,
// so the result does not depend on the thread count.
void integral_term(const Model& model, std::span<const double> xs, std::span<const double> us,
                   double t, const MeasureQuadrature& quad, std::span<double> out) {
    const double lam = model.intensity_at(t);
    const std::int64_t n = static_cast<std::int64_t>(xs.size());
    if (lam == 0.0 || quad.total_mass == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    int bad_destination = 0;
#pragma omp parallel for schedule(static) reduction(| : bad_destination)
    for (std::int64_t i = 0; i < n; ++i) {
        const double x = xs[i];
        const double ux = first_difference(xs, us, i);
        double acc = 0.0;
        for (std::size_t k = 0; k < quad.node.size(); ++k) {
            const double phi = model.jump_size(x, t, quad.node[k]);
            const double dest = x + phi;
            if (dest <= 0.0) {
                bad_destination = 1;
                continue;
            }
            acc += quad.weight[k] * (interp_extrap(xs, us, dest) - us[i] - phi * ux);
        }
        out[i] = lam * acc;
    }
    if (bad_destination)
        throw std::domain_error(
            "generator: jump destination x + phi <= 0 at a quadrature node; the jump size "
            "violates its floor or the truncation is inconsistent");
}

// Solves (1 - dt * a_i * D2) u_new = rhs with identity rows at both ends.
struct TridiagonalWorkspace {
    std::vector<double> lower, diag, upper, scratch;

    void resize(std::size_t n) {
        lower.assign(n, 0.0);
        diag.assign(n, 1.0);
        upper.assign(n, 0.0);
        scratch.assign(n, 0.0);
    }

    void assemble(const Model& model, std::span<const double> xs, double t, double dt) {
        const std::size_t n = xs.size();
        diag[0] = 1.0;
        upper[0] = 0.0;
        lower[n - 1] = 0.0;
        diag[n - 1] = 1.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double beta = model.diffusion(xs[i], t);
            const double a = 0.5 * beta * beta;
            const double hm = xs[i] - xs[i - 1];
            const double hp = xs[i + 1] - xs[i];
            const double wm = 2.0 / (hm * (hm + hp));
            const double wp = 2.0 / (hp * (hm + hp));
            lower[i] = -dt * a * wm;
            diag[i] = 1.0 + dt * a * (wm + wp);
            upper[i] = -dt * a * wp;
        }
    }

    void solve(std::span<double> rhs) {
        const std::size_t n = diag.size();
        scratch[0] = upper[0] / diag[0];
        rhs[0] /= diag[0];
        for (std::size_t i = 1; i < n; ++i) {
            const double denom = diag[i] - lower[i] * scratch[i - 1];
            scratch[i] = upper[i] / denom;
            rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / denom;
        }
        for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= scratch[i] * rhs[i + 1];
    }
};

struct Stepper {
    const Model& model;
    const Grid& grid;
    const SchemeConfig& config;
    MeasureQuadrature quad;
    TridiagonalWorkspace tri;
    std::vector<double> jump_term;

    Stepper(const Model& m, const Grid& g, const SchemeConfig& c)
        : model(m), grid(g), config(c), quad(m.measure.quadrature(c.z_quadrature_nodes)) {
        tri.resize(g.n_x());
        jump_term.resize(g.n_x());
    }

    // One IMEX sub-step from time-to-maturity tau to tau + dt, in place.
    void advance(std::vector<double>& u, double tau, double dt) {
        const double T = grid.horizon();
        const double t_explicit = T - tau;
        const double t_implicit = T - (tau + dt);
        integral_term(model, grid.x, u, t_explicit, quad, jump_term);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += dt * jump_term[i];
        tri.assemble(model, grid.x, t_implicit, dt);
        tri.solve(u);
    }
};

void check_explicit_stability(const Model& model, const Grid& grid, const MeasureQuadrature& quad) {
    double lam_max = 0.0;
    for (double tau : grid.tau) lam_max = std::max(lam_max, model.intensity_at(grid.horizon() - tau));
    const double dt = grid.dt();
    if (lam_max * quad.total_mass * dt > 1.0 + 1e-12) {
        const double T = grid.horizon();
        const std::size_t n_t_min =
            static_cast<std::size_t>(std::ceil(lam_max * quad.total_mass * T)) + 1;
        throw std::invalid_argument(
            "solve_pide: explicit jump term unstable: lambda*m(Z)*dt = " +
            std::to_string(lam_max * quad.total_mass * dt) + " > 1 (dt = " + std::to_string(dt) +
            "); use at least N_t = " + std::to_string(n_t_min));
    }
}

PriceSurface solve_impl(const Model& model, const Payoff& payoff, const Grid& grid,
                        const SchemeConfig& config, std::span<const double> exercise_times) {
    validate_grid(grid);
    validate_model(model, grid.horizon());
    if (payoff.growth_degree() > 8)
        throw std::invalid_argument("solve_pide: payoff growth degree exceeds the solver envelope");

    Stepper stepper(model, grid, config);
    check_explicit_stability(model, grid, stepper.quad);

    // Map exercise dates (calendar) to time-to-maturity levels.
    const double T = grid.horizon();
    std::vector<char> exercise_at(grid.n_t(), 0);
    for (double date : exercise_times) {
        const double tau_e = T - date;
        bool found = false;
        for (std::size_t j = 0; j < grid.n_t(); ++j) {
            if (std::abs(grid.tau[j] - tau_e) <= 1e-9 * std::max(1.0, T)) {
                exercise_at[j] = 1;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("solve_bermudan: exercise time " + std::to_string(date) +
                                        " is not a grid time level");
    }

    PriceSurface surface;
    surface.grid = grid;
    surface.model_label = model.label;
    surface.payoff_desc = payoff.describe();
    surface.values.resize(grid.n_x() * grid.n_t());

    std::vector<double> payoff_slice(grid.n_x());
    for (std::size_t i = 0; i < grid.n_x(); ++i) payoff_slice[i] = payoff(grid.x[i]);
    std::copy(payoff_slice.begin(), payoff_slice.end(), surface.values.begin());

    std::vector<double> u = payoff_slice;
    for (std::size_t m = 0; m + 1 < grid.n_t(); ++m) {
        const double tau = grid.tau[m];
        const double dt = grid.tau[m + 1] - tau;
        if (static_cast<int>(m) < config.smoothing_startup_steps) {
            stepper.advance(u, tau, 0.5 * dt);
            stepper.advance(u, tau + 0.5 * dt, 0.5 * dt);
        } else {
            stepper.advance(u, tau, dt);
        }
        if (exercise_at[m + 1]) {
            for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::max(u[i], payoff_slice[i]);
        }
        std::copy(u.begin(), u.end(), surface.values.begin() + (m + 1) * grid.n_x());
    }
    return surface;
}

}  // namespace

double PriceSurface::at(double x, double tau) const {
    const auto& xs = grid.x;
    const auto& ts = grid.tau;
    auto cell = [](const std::vector<double>& g, double v, std::size_t& lo, double& w) {
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
    std::size_t i, j;
    double wx, wt;
    cell(xs, x, i, wx);
    cell(ts, tau, j, wt);
    const double v00 = at_node(i, j), v10 = at_node(i + 1, j);
    const double v01 = at_node(i, j + 1), v11 = at_node(i + 1, j + 1);
    const double lo = v00 + wx * (v10 - v00);
    const double hi = v01 + wx * (v11 - v01);
    return lo + wt * (hi - lo);
}

std::vector<double> apply_generator(const Model& model, std::span<const double> u_slice,
                                    const Grid& grid, double t, const SchemeConfig& config) {
    if (u_slice.size() != grid.n_x())
        throw std::invalid_argument("apply_generator: slice length must match the grid");
    const MeasureQuadrature quad = model.measure.quadrature(config.z_quadrature_nodes);
    std::vector<double> out(grid.n_x());
    integral_term(model, grid.x, u_slice, t, quad, out);
    for (std::size_t i = 0; i < grid.n_x(); ++i) {
        const double beta = model.diffusion(grid.x[i], t);
        out[i] += 0.5 * beta * beta * second_difference(grid.x, u_slice, i);
    }
    return out;
}

double generator_at(const Model& model, const std::function<double(double)>& f,
                    const std::function<double(double)>& fx,
                    const std::function<double(double)>& fxx, double x, double t,
                    const SchemeConfig& config) {
    const MeasureQuadrature quad = model.measure.quadrature(config.z_quadrature_nodes);
    const double beta = model.diffusion(x, t);
    const double lam = model.intensity_at(t);
    const double fv = f(x);
    const double fxv = fx(x);
    double nonlocal = 0.0;
    for (std::size_t k = 0; k < quad.node.size(); ++k) {
        const double phi = model.jump_size(x, t, quad.node[k]);
        const double dest = x + phi;
        if (dest <= 0.0)
            throw std::domain_error("generator: jump destination x + phi <= 0 at a quadrature node");
        nonlocal += quad.weight[k] * (f(dest) - fv - phi * fxv);
    }
    return 0.5 * beta * beta * fxx(x) + lam * nonlocal;
}

PriceSurface solve_pide(const Model& model, const Payoff& payoff, const Grid& grid,
                        const SchemeConfig& config) {
    return solve_impl(model, payoff, grid, config, {});
}

PriceSurface solve_bermudan(const Model& model, const Payoff& payoff, const Grid& grid,
                            const SchemeConfig& config, std::span<const double> exercise_times) {
    for (double date : exercise_times)
        if (date < 0.0 || date > grid.horizon())
            throw std::invalid_argument("solve_bermudan: exercise time outside [0, T]");
    return solve_impl(model, payoff, grid, config, exercise_times);
}

void write_surface_csv(std::ostream& os, const PriceSurface& surface) {
    os << "x,tau,u\n";
    char line[128];
    for (std::size_t j = 0; j < surface.grid.n_t(); ++j) {
        for (std::size_t i = 0; i < surface.grid.n_x(); ++i) {
            std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n", surface.grid.x[i],
                          surface.grid.tau[j], surface.at_node(i, j));
            os << line;
        }
    }
}

}  // namespace jumpvex
