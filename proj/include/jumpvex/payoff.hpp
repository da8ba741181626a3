#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace jumpvex {

struct CallPayoff {
    double strike = 1.0;
};
struct PutPayoff {
    double strike = 1.0;
};
struct LinearPayoff {  // slope * x + intercept
    double slope = 1.0;
    double intercept = 0.0;
};
struct PowerPayoff {  // scale * x^exponent, exponent >= 1
    double exponent = 2.0;
    double scale = 1.0;
};
struct PiecewiseLinearPayoff {
    std::vector<double> x;      // strictly increasing knots
    std::vector<double> value;
    double left_slope = 0.0;    // extrapolation slopes beyond the knots
    double right_slope = 0.0;
};
struct SmoothedPutPayoff {
    // Put with the kink replaced by the quadratic (K + eps - x)^2 / (4 eps)
    // on [K - eps, K + eps]; matches value and slope at both ends.
    double strike = 1.0;
    double half_width = 0.0;  // eps >= 0; eps == 0 degenerates to the put
};

/// Contract function g evaluated at the terminal price. Immutable; carries a
/// declared polynomial growth degree used by growth checks and solvers.
class Payoff {
public:
    using Node = std::variant<CallPayoff, PutPayoff, LinearPayoff, PowerPayoff,
                              PiecewiseLinearPayoff, SmoothedPutPayoff>;

    Payoff() : node_(CallPayoff{}) {}
    explicit Payoff(Node node, std::optional<int> declared_growth_degree = std::nullopt);

    /// g(x); throws std::domain_error for x <= 0.
    double operator()(double x) const;

    const Node& node() const { return node_; }
    int growth_degree() const { return growth_degree_; }
    std::string describe() const;

    static Payoff call(double strike) { return Payoff(CallPayoff{strike}); }
    static Payoff put(double strike) { return Payoff(PutPayoff{strike}); }
    static Payoff linear(double slope, double intercept) {
        return Payoff(LinearPayoff{slope, intercept});
    }
    static Payoff power(double exponent, double scale) {
        return Payoff(PowerPayoff{exponent, scale});
    }
    static Payoff piecewise(std::vector<double> x, std::vector<double> value);
    static Payoff smoothed_put(double strike, double half_width) {
        return Payoff(SmoothedPutPayoff{strike, half_width});
    }

private:
    Node node_;
    int growth_degree_ = 1;
};

/// Exact convexity decision for the parametric families; for piecewise-linear
/// payoffs the slopes must be nondecreasing and the witness is the knot where
/// a slope drops.
std::pair<bool, std::optional<double>> is_convex_payoff(const Payoff& payoff);

/// Parses the command-line payoff syntax:
///   "call:K=1.0"  "put:K=1.0"  "linear:a=1,b=0"  "power:p=2,c=1"
///   "pwl:0:0,1:1,2:1.5"  "sput:K=1.0,eps=0.01"
Payoff parse_payoff(std::string_view text);

}  // namespace jumpvex
