#include "jumpvex/reference.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace jumpvex::reference {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 make_stream(std::uint64_t seed, std::int64_t path_index, std::uint64_t stream) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ (0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(path_index)));
    s = splitmix64(s ^ stream);
    return std::mt19937_64(s);
}

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 == 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int poisson_count(std::mt19937_64& rng, double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    int k = 0;
    double prod = uniform01(rng);
    while (prod > limit) {
        ++k;
        prod *= uniform01(rng);
    }
    return k;
}

double interp_extrap(std::span<const double> xs, std::span<const double> us, double x) {
    const std::size_t n = xs.size();
    if (x <= xs[0]) return us[0] + (us[1] - us[0]) / (xs[1] - xs[0]) * (x - xs[0]);
    if (x >= xs[n - 1])
        return us[n - 1] + (us[n - 1] - us[n - 2]) / (xs[n - 1] - xs[n - 2]) * (x - xs[n - 1]);
    std::size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        (xs[mid] <= x ? lo : hi) = mid;
    }
    const double w = (x - xs[lo]) / (xs[lo + 1] - xs[lo]);
    return us[lo] + w * (us[lo + 1] - us[lo]);
}

}  // namespace

MCEstimate price_mc_serial(const Model& model, const Payoff& payoff, double x0, double t0,
                           double T, const MCConfig& config) {
    if (!(x0 > 0.0) || !(t0 >= 0.0) || !(t0 < T))
        throw std::invalid_argument("price_mc_serial: bad start point");
    if (config.antithetic && config.n_paths % 2 != 0)
        throw std::invalid_argument("price_mc_serial: antithetic sampling needs an even n_paths");
    const MeasureQuadrature quad = model.measure.quadrature(config.z_quadrature_nodes);
    const LabelSampler sampler(model.measure, config.z_quadrature_nodes);
    const double mass = quad.total_mass;

    auto one_path = [&](std::int64_t index, bool mirror, std::int64_t& floor_events) {
        std::mt19937_64 gauss_rng = make_stream(config.seed, index, 1);
        std::mt19937_64 jump_rng = make_stream(config.seed, index, 2);
        const double dt = (T - t0) / config.n_steps;
        const double sqrt_dt = std::sqrt(dt);
        double x = x0;
        for (int step = 0; step < config.n_steps; ++step) {
            const double t = t0 + dt * step;
            const double lam = model.intensity(1.0, t);
            double gauss = standard_normal(gauss_rng);
            if (mirror) gauss = -gauss;
            const double diffusion = model.diffusion(x, t) * sqrt_dt * gauss;
            double jump_sum = 0.0;
            const int n_jumps = poisson_count(jump_rng, lam * mass * dt);
            for (int j = 0; j < n_jumps; ++j)
                jump_sum += model.jump_size(x, t, sampler.sample(uniform01(jump_rng)));
            const double drift =
                -lam * quad.integrate([&](double z) { return model.jump_size(x, t, z); }) * dt;
            double x_new = x + diffusion + jump_sum + drift;
            if (x_new <= kPositivityFloor) {
                x_new = kPositivityFloor;
                ++floor_events;
            }
            x = x_new;
        }
        return x;
    };

    const std::int64_t n = config.n_paths;
    std::vector<double> samples(n);
    MCEstimate est;
    est.n_paths = n;
    est.seed = config.seed;
    est.model_label = model.label;
    est.payoff_desc = payoff.describe();
    for (std::int64_t k = 0; k < n; ++k) {
        std::int64_t fe = 0;
        if (config.antithetic) {
            samples[k] = payoff(one_path(k / 2, k % 2 == 1, fe));
        } else {
            samples[k] = payoff(one_path(k, false, fe));
        }
        est.floor_events += fe;
    }
    est.mean = pairwise_sum(samples.data(), samples.size()) / static_cast<double>(n);
    if (config.antithetic) {
        const std::int64_t pairs = n / 2;
        std::vector<double> sq(pairs);
        for (std::int64_t k = 0; k < pairs; ++k) {
            const double pm = 0.5 * (samples[2 * k] + samples[2 * k + 1]) - est.mean;
            sq[k] = pm * pm;
        }
        if (pairs > 1)
            est.stderr_ = std::sqrt(pairwise_sum(sq.data(), sq.size()) /
                                    static_cast<double>(pairs - 1) / static_cast<double>(pairs));
    } else {
        std::vector<double> sq(n);
        for (std::int64_t k = 0; k < n; ++k) {
            const double d = samples[k] - est.mean;
            sq[k] = d * d;
        }
        if (n > 1)
            est.stderr_ = std::sqrt(pairwise_sum(sq.data(), sq.size()) /
                                    static_cast<double>(n - 1) / static_cast<double>(n));
    }
    return est;
}

std::vector<double> apply_generator_serial(const Model& model, std::span<const double> u_slice,
                                           const Grid& grid, double t,
                                           const SchemeConfig& config) {
    const auto& xs = grid.x;
    const std::size_t n = xs.size();
    if (u_slice.size() != n)
        throw std::invalid_argument("apply_generator_serial: slice length must match the grid");
    const MeasureQuadrature quad = model.measure.quadrature(config.z_quadrature_nodes);
    const double lam = model.intensity(1.0, t);
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double ux;
        if (i == 0) {
            ux = (u_slice[1] - u_slice[0]) / (xs[1] - xs[0]);
        } else if (i == n - 1) {
            ux = (u_slice[n - 1] - u_slice[n - 2]) / (xs[n - 1] - xs[n - 2]);
        } else {
            const double hm = xs[i] - xs[i - 1], hp = xs[i + 1] - xs[i];
            ux = (hm * hm * u_slice[i + 1] - hp * hp * u_slice[i - 1] +
                  (hp * hp - hm * hm) * u_slice[i]) /
                 (hm * hp * (hm + hp));
        }
        double acc = 0.0;
        if (lam != 0.0) {
            for (std::size_t k = 0; k < quad.node.size(); ++k) {
                const double phi = model.jump_size(xs[i], t, quad.node[k]);
                const double dest = xs[i] + phi;
                if (dest <= 0.0)
                    throw std::domain_error("apply_generator_serial: destination x + phi <= 0");
                acc += quad.weight[k] * (interp_extrap(xs, u_slice, dest) - u_slice[i] - phi * ux);
            }
        }
        out[i] = lam * acc;
        if (i > 0 && i + 1 < n) {
            const double hm = xs[i] - xs[i - 1], hp = xs[i + 1] - xs[i];
            const double beta = model.diffusion(xs[i], t);
            const double d2 = 2.0 *
                              (hm * u_slice[i + 1] - (hm + hp) * u_slice[i] + hp * u_slice[i - 1]) /
                              (hm * hp * (hm + hp));
            out[i] += 0.5 * beta * beta * d2;
        }
    }
    return out;
}

}  // namespace jumpvex::reference
