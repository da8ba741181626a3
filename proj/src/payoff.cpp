#include "jumpvex/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "jumpvex/coefficients.hpp"

namespace jumpvex {

namespace {

int default_growth_degree(const Payoff::Node& node) {
    if (const auto* p = std::get_if<PowerPayoff>(&node))
        return std::max(1, static_cast<int>(std::ceil(p->exponent)));
    return 1;
}

}  // namespace

Payoff::Payoff(Node node, std::optional<int> declared_growth_degree) : node_(std::move(node)) {
    if (const auto* pw = std::get_if<PiecewiseLinearPayoff>(&node_)) {
        require_strictly_increasing(pw->x, "payoff knots");
        if (pw->x.size() != pw->value.size())
            throw std::invalid_argument("payoff: knot/value length mismatch");
    } else if (const auto* p = std::get_if<PowerPayoff>(&node_)) {
        if (p->exponent < 1.0) throw std::invalid_argument("payoff: power exponent must be >= 1");
    } else if (const auto* s = std::get_if<SmoothedPutPayoff>(&node_)) {
        if (s->half_width < 0.0) throw std::invalid_argument("payoff: smoothing width must be >= 0");
    }
    growth_degree_ = declared_growth_degree.value_or(default_growth_degree(node_));
}

double Payoff::operator()(double x) const {
    if (!(x > 0.0)) throw std::domain_error("payoff eval: x must be positive");
    return std::visit(
        [&](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, CallPayoff>) {
                return std::max(x - n.strike, 0.0);
            } else if constexpr (std::is_same_v<T, PutPayoff>) {
                return std::max(n.strike - x, 0.0);
            } else if constexpr (std::is_same_v<T, LinearPayoff>) {
                return n.slope * x + n.intercept;
            } else if constexpr (std::is_same_v<T, PowerPayoff>) {
                return n.scale * std::pow(x, n.exponent);
            } else if constexpr (std::is_same_v<T, PiecewiseLinearPayoff>) {
                if (x <= n.x.front()) return n.value.front() + n.left_slope * (x - n.x.front());
                if (x >= n.x.back()) return n.value.back() + n.right_slope * (x - n.x.back());
                return interp_flat(n.x, n.value, x);
            } else {
                const double eps = n.half_width;
                if (eps == 0.0) return std::max(n.strike - x, 0.0);
                if (x <= n.strike - eps) return n.strike - x;
                if (x >= n.strike + eps) return 0.0;
                const double d = n.strike + eps - x;
                return d * d / (4.0 * eps);
            }
        },
        node_);
}

std::string Payoff::describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, CallPayoff>) {
                os << "call:K=" << n.strike;
            } else if constexpr (std::is_same_v<T, PutPayoff>) {
                os << "put:K=" << n.strike;
            } else if constexpr (std::is_same_v<T, LinearPayoff>) {
                os << "linear:a=" << n.slope << ",b=" << n.intercept;
            } else if constexpr (std::is_same_v<T, PowerPayoff>) {
                os << "power:p=" << n.exponent << ",c=" << n.scale;
            } else if constexpr (std::is_same_v<T, PiecewiseLinearPayoff>) {
                os << "pwl:";
                for (std::size_t i = 0; i < n.x.size(); ++i) {
                    if (i) os << ",";
                    os << n.x[i] << ":" << n.value[i];
                }
            } else {
                os << "sput:K=" << n.strike << ",eps=" << n.half_width;
            }
        },
        node_);
    return os.str();
}

Payoff Payoff::piecewise(std::vector<double> x, std::vector<double> value) {
    PiecewiseLinearPayoff p{std::move(x), std::move(value), 0.0, 0.0};
    if (p.x.size() >= 2) {
        p.left_slope = (p.value[1] - p.value[0]) / (p.x[1] - p.x[0]);
        const std::size_t m = p.x.size();
        p.right_slope = (p.value[m - 1] - p.value[m - 2]) / (p.x[m - 1] - p.x[m - 2]);
    }
    return Payoff(std::move(p));
}

std::pair<bool, std::optional<double>> is_convex_payoff(const Payoff& payoff) {
    const auto* pw = std::get_if<PiecewiseLinearPayoff>(&payoff.node());
    if (!pw) return {true, std::nullopt};  // call/put/linear/power(p>=1)/sput are convex
    std::vector<double> slopes;
    slopes.push_back(pw->left_slope);
    for (std::size_t i = 1; i < pw->x.size(); ++i)
        slopes.push_back((pw->value[i] - pw->value[i - 1]) / (pw->x[i] - pw->x[i - 1]));
    slopes.push_back(pw->right_slope);
    for (std::size_t i = 1; i < slopes.size(); ++i) {
        if (slopes[i] < slopes[i - 1] - 1e-15) {
            // slope drops entering segment i; the offending knot is x[i-1]
            return {false, pw->x[std::min(i - 1, pw->x.size() - 1)]};
        }
    }
    return {true, std::nullopt};
}

namespace {

double parse_num(std::string_view s, std::string_view what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(std::string(s), &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("payoff: cannot parse number '" + std::string(s) + "' for " +
                                    std::string(what));
    }
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t end = s.find(sep, start);
        if (end == std::string_view::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, end - start));
        start = end + 1;
    }
    return out;
}

double named_field(std::string_view args, std::string_view key) {
    for (auto part : split(args, ',')) {
        const std::size_t eq = part.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("payoff: expected key=value in '" + std::string(part) + "'");
        if (part.substr(0, eq) == key) return parse_num(part.substr(eq + 1), key);
    }
    throw std::invalid_argument("payoff: missing field '" + std::string(key) + "'");
}

}  // namespace

Payoff parse_payoff(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("payoff: expected '<kind>:<args>', got '" + std::string(text) +
                                    "'");
    const std::string_view kind = text.substr(0, colon);
    const std::string_view args = text.substr(colon + 1);
    if (kind == "call") return Payoff::call(named_field(args, "K"));
    if (kind == "put") return Payoff::put(named_field(args, "K"));
    if (kind == "linear") return Payoff::linear(named_field(args, "a"), named_field(args, "b"));
    if (kind == "power") return Payoff::power(named_field(args, "p"), named_field(args, "c"));
    if (kind == "sput")
        return Payoff::smoothed_put(named_field(args, "K"), named_field(args, "eps"));
    if (kind == "pwl") {
        std::vector<double> xs, vs;
        for (auto part : split(args, ',')) {
            const auto kv = split(part, ':');
            if (kv.size() != 2)
                throw std::invalid_argument("payoff: pwl knots are 'x:value' pairs, got '" +
                                            std::string(part) + "'");
            xs.push_back(parse_num(kv[0], "pwl knot"));
            vs.push_back(parse_num(kv[1], "pwl value"));
        }
        return Payoff::piecewise(std::move(xs), std::move(vs));
    }
    throw std::invalid_argument("payoff: unknown kind '" + std::string(kind) + "'");
}

}  // namespace jumpvex
