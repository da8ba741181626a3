#pragma once

// Test-only oracles, implemented independently of the library's numerical
// paths: closed forms and brute-force constructions the solvers are checked
// against.

#include <span>
#include <vector>

namespace oracles {

double normal_cdf(double x);

/// Black-Scholes call price with zero rate: E[(X_T - K)^+] for
/// dX = sigma X dW.
double black_scholes_call(double x0, double strike, double sigma, double T);

/// Price under dX = sigma X dW + c X(t-) (dN - lambda dt), N Poisson with
/// rate lambda, by conditioning on the jump count: each term is a
/// Black-Scholes price at the jump-adjusted forward. Series truncated when
/// the Poisson weight drops below 1e-16.
double merton_fixed_jump_call(double x0, double strike, double sigma, double jump_c,
                              double lambda, double T);

/// Same mixture for a put via put-call parity at zero rate.
double merton_fixed_jump_put(double x0, double strike, double sigma, double jump_c, double lambda,
                             double T);

/// Greatest convex minorant on a grid with the right derivative capped, by
/// support-line duality: f*(x) = max over lines of slope <= cap lying below
/// the sampled points (origin included). Candidate slopes are the cap and
/// every pairwise chord slope. O(n^3); test sizes only.
std::vector<double> capped_minorant_by_lines(std::span<const double> xs,
                                             std::span<const double> values, double cap);

}  // namespace oracles
