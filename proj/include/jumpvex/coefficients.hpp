#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace jumpvex {

/// Piecewise-linear function of time with flat extrapolation outside the knots.
struct PiecewiseLinearT {
    std::vector<double> t;      // strictly increasing
    std::vector<double> value;  // same length as t

    double operator()(double tt) const;
};

class CoefficientSpec;

// Parametric families for scalar coefficients of (x, t).
struct ZeroCoeff {};
struct ConstantCoeff {
    double c = 0.0;
};
struct ProportionalCoeff {  // c * x
    double c = 0.0;
};
struct PowerCoeff {  // c * x^p
    double c = 0.0;
    double p = 1.0;
};
struct PiecewiseLinearX {  // linear between knots, flat outside
    std::vector<double> x;
    std::vector<double> value;
};
struct BumpX {
    // Trapezoid in x: zero outside (x_lo, x_hi), equal to height on
    // [x_rise, x_fall], linear ramps in between.
    double x_lo = 0.0;
    double x_rise = 0.0;
    double x_fall = 0.0;
    double x_hi = 0.0;
    double height = 0.0;

    double operator()(double x) const;
};
struct TimeModulatedCoeff {
    std::shared_ptr<const CoefficientSpec> base;  // immutable, shared
    PiecewiseLinearT factor;
};
struct TabulatedXT {
    // Bilinear interpolation on (x, t); flat extrapolation outside the grids.
    // value[i][j] corresponds to (x[i], t[j]); stored row-major by x.
    std::vector<double> x;  // strictly increasing
    std::vector<double> t;  // strictly increasing
    std::vector<double> value;

    double at(double xx, double tt) const;
};

/// A scalar coefficient of (x, t) drawn from a closed set of parametric
/// families. Evaluation is a pure function of its arguments: repeated calls
/// with equal inputs return bit-identical values.
class CoefficientSpec {
public:
    using Node = std::variant<ZeroCoeff, ConstantCoeff, ProportionalCoeff, PowerCoeff,
                              PiecewiseLinearX, BumpX, TimeModulatedCoeff, TabulatedXT>;

    CoefficientSpec() : node_(ZeroCoeff{}) {}
    explicit CoefficientSpec(Node node);

    double operator()(double x, double t) const;

    const Node& node() const { return node_; }

    /// True when the value cannot depend on x (lambda must satisfy this).
    bool is_time_only() const;

    /// True when the value can depend on t.
    bool depends_on_time() const;

    static CoefficientSpec zero() { return CoefficientSpec(ZeroCoeff{}); }
    static CoefficientSpec constant(double c) { return CoefficientSpec(ConstantCoeff{c}); }
    static CoefficientSpec proportional(double c) { return CoefficientSpec(ProportionalCoeff{c}); }
    static CoefficientSpec power(double c, double p) { return CoefficientSpec(PowerCoeff{c, p}); }
    static CoefficientSpec piecewise_x(std::vector<double> x, std::vector<double> value);
    static CoefficientSpec bump_x(double x_lo, double x_rise, double x_fall, double x_hi,
                                  double height);
    static CoefficientSpec time_modulated(CoefficientSpec base, PiecewiseLinearT factor);
    static CoefficientSpec tabulated(std::vector<double> x, std::vector<double> t,
                                     std::vector<double> value);

private:
    Node node_;
};

/// Linear interpolation of (xs, ys) at x with flat extrapolation.
/// xs must be strictly increasing and nonempty.
double interp_flat(const std::vector<double>& xs, const std::vector<double>& ys, double x);

/// Throws std::invalid_argument unless v is strictly increasing and nonempty.
void require_strictly_increasing(const std::vector<double>& v, const std::string& what);

}  // namespace jumpvex
