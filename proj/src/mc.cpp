#include "jumpvex/mc.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace jumpvex {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent substream for (seed, path_index, stream). Gaussian and jump
// draws use separate substreams so mirroring one leaves the other untouched.
std::mt19937_64 make_stream(std::uint64_t seed, std::int64_t path_index, std::uint64_t stream) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ (0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(path_index)));
    s = splitmix64(s ^ stream);
    return std::mt19937_64(s);
}

double uniform01(std::mt19937_64& rng) {
    // 53-bit mantissa uniform in [0, 1)
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller; explicit so draws are identical across standard libraries.
double standard_normal(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    while (u1 == 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Knuth's product method; step intensities are at most 1 by the scheme's
// stability convention, so the expected uniform count per call is small.
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

struct Engine {
    const Model& model;
    MeasureQuadrature quad;
    LabelSampler sampler;
    double mass;

    Engine(const Model& m, int z_nodes)
        : model(m), quad(m.measure.quadrature(z_nodes)), sampler(m.measure, z_nodes),
          mass(quad.total_mass) {}

    double compensator(double x, double t) const {
        return quad.integrate([&](double z) { return model.jump_size(x, t, z); });
    }

    // Terminal value of an Euler path; optionally records the full path.
    double terminal(double x0, double t0, double T, const MCConfig& config,
                    std::int64_t path_index, bool mirror, std::int64_t& floor_events,
                    Path* record) const {
        std::mt19937_64 gauss_rng = make_stream(config.seed, path_index, 1);
        std::mt19937_64 jump_rng = make_stream(config.seed, path_index, 2);
        const double dt = (T - t0) / config.n_steps;
        const double sqrt_dt = std::sqrt(dt);
        double x = x0;
        if (record) {
            record->times.push_back(t0);
            record->values.push_back(x0);
        }
        for (int step = 0; step < config.n_steps; ++step) {
            const double t = t0 + dt * step;  // left endpoint
            const double lam = model.intensity(1.0, t);
            double gauss = standard_normal(gauss_rng);
            if (mirror) gauss = -gauss;
            const double diffusion = model.diffusion(x, t) * sqrt_dt * gauss;
            double jump_sum = 0.0;
            const int n_jumps = poisson_count(jump_rng, lam * mass * dt);
            for (int j = 0; j < n_jumps; ++j) {
                const double z = sampler.sample(uniform01(jump_rng));
                jump_sum += model.jump_size(x, t, z);
            }
            const double drift = -lam * compensator(x, t) * dt;
            double x_new = x + diffusion + jump_sum + drift;
            if (x_new <= kPositivityFloor) {
                x_new = kPositivityFloor;
                ++floor_events;
            }
            x = x_new;
            if (record) {
                record->times.push_back(t0 + dt * (step + 1));
                record->values.push_back(x);
                if (n_jumps > 0) record->jump_times.push_back(t);
            }
        }
        return x;
    }
};

}  // namespace

double pairwise_sum(const double* data, std::size_t n) {
    if (n <= 8) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += data[i];
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

Path simulate_path(const Model& model, double x0, double t0, double T, const MCConfig& config,
                   std::int64_t path_index) {
    if (!(x0 > 0.0)) throw std::invalid_argument("simulate_path: x0 must be positive");
    if (!(t0 >= 0.0) || !(t0 < T)) throw std::invalid_argument("simulate_path: need 0 <= t0 < T");
    if (!model.measure.finite_activity())
        throw std::domain_error("simulate_path: infinite-activity model; truncate it first");
    if (config.n_paths < 1 || config.n_steps < 1)
        throw std::invalid_argument("simulate_path: n_paths and n_steps must be >= 1");
    validate_model(model, T);

    Engine engine(model, config.z_quadrature_nodes);
    Path path;
    path.times.reserve(config.n_steps + 1);
    path.values.reserve(config.n_steps + 1);
    engine.terminal(x0, t0, T, config, path_index, false, path.floor_events, &path);
    return path;
}

MCEstimate price_mc(const Model& model, const Payoff& payoff, double x0, double t0, double T,
                    const MCConfig& config) {
    if (!(x0 > 0.0)) throw std::invalid_argument("price_mc: x0 must be positive");
    if (!(t0 >= 0.0) || !(t0 < T)) throw std::invalid_argument("price_mc: need 0 <= t0 < T");
    if (!model.measure.finite_activity())
        throw std::domain_error("price_mc: infinite-activity model; truncate it first");
    if (config.n_paths < 1 || config.n_steps < 1)
        throw std::invalid_argument("price_mc: n_paths and n_steps must be >= 1");
    if (config.antithetic && config.n_paths % 2 != 0)
        throw std::invalid_argument("price_mc: antithetic sampling needs an even n_paths");
    validate_model(model, T);

    const Engine engine(model, config.z_quadrature_nodes);

    const std::int64_t n = config.n_paths;
    std::vector<double> samples(n);
    std::vector<std::int64_t> floors(n, 0);

    if (config.antithetic) {
        const std::int64_t pairs = n / 2;
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < pairs; ++k) {
            const double a =
                payoff(engine.terminal(x0, t0, T, config, k, false, floors[2 * k], nullptr));
            const double b =
                payoff(engine.terminal(x0, t0, T, config, k, true, floors[2 * k + 1], nullptr));
            samples[2 * k] = a;
            samples[2 * k + 1] = b;
        }
    } else {
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < n; ++k) {
            samples[k] = payoff(engine.terminal(x0, t0, T, config, k, false, floors[k], nullptr));
        }
    }

    MCEstimate est;
    est.n_paths = n;
    est.seed = config.seed;
    est.model_label = model.label;
    est.payoff_desc = payoff.describe();
    est.floor_events = 0;
    for (std::int64_t k = 0; k < n; ++k) est.floor_events += floors[k];

    est.mean = pairwise_sum(samples.data(), samples.size()) / static_cast<double>(n);

    if (config.antithetic) {
        // pair averages are the independent samples
        const std::int64_t pairs = n / 2;
        std::vector<double> sq(pairs);
        for (std::int64_t k = 0; k < pairs; ++k) {
            const double pm = 0.5 * (samples[2 * k] + samples[2 * k + 1]) - est.mean;
            sq[k] = pm * pm;
        }
        if (pairs > 1) {
            const double var = pairwise_sum(sq.data(), sq.size()) / static_cast<double>(pairs - 1);
            est.stderr_ = std::sqrt(var / static_cast<double>(pairs));
        }
    } else {
        std::vector<double> sq(n);
        for (std::int64_t k = 0; k < n; ++k) {
            const double d = samples[k] - est.mean;
            sq[k] = d * d;
        }
        if (n > 1) {
            const double var = pairwise_sum(sq.data(), sq.size()) / static_cast<double>(n - 1);
            est.stderr_ = std::sqrt(var / static_cast<double>(n));
        }
    }
    return est;
}

}  // namespace jumpvex
