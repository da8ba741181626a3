#pragma once

#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "jumpvex/coefficients.hpp"

namespace jumpvex {

// Scalar function of the jump label z.
struct AffineZ {  // a + b*z
    double a = 0.0;
    double b = 0.0;
};
struct TabulatedZ {  // linear interpolation, flat extrapolation
    std::vector<double> z;
    std::vector<double> value;
};

class ZFunction {
public:
    using Node = std::variant<AffineZ, TabulatedZ>;

    ZFunction() : node_(AffineZ{0.0, 0.0}) {}
    explicit ZFunction(Node node);

    double operator()(double z) const;
    const Node& node() const { return node_; }

    static ZFunction affine(double a, double b) { return ZFunction(AffineZ{a, b}); }
    static ZFunction tabulated(std::vector<double> z, std::vector<double> value);

private:
    Node node_;
};

enum class SignPattern { nonnegative, nonpositive, mixed };

// Jump-size families: the displacement applied to the price at a jump with
// label z from state (x, t).
struct ZeroJump {};
struct RelativeConstant {  // c * x, independent of z
    double c = 0.0;
};
struct RelativeOfZ {  // x * zeta(z)
    ZFunction zeta;
};
struct SeparableJump {  // psi(x, t) * zeta(z)
    CoefficientSpec psi;
    ZFunction zeta;
};
struct BumpJump {  // trapezoidal bump in x, independent of z
    BumpX bump;
};
struct TabulatedXZ {
    // value[it][ix][iz] flattened as ((it * |x|) + ix) * |z| + iz.
    // Bilinear in (x, z) within a t-slice, linear between t-slices, flat
    // extrapolation beyond the grids. Identically zero for z outside
    // [z_support_lo, z_support_hi].
    std::vector<double> x;  // strictly increasing
    std::vector<double> z;  // strictly increasing
    std::vector<double> t;  // strictly increasing, may be a single slice
    std::vector<double> value;
    double z_support_lo = 0.0;
    double z_support_hi = std::numeric_limits<double>::infinity();

    double at(double xx, double tt, double zz) const;
};

/// Jump size phi(x, t, z). Pure evaluation, immutable after construction.
class JumpSizeSpec {
public:
    using Node =
        std::variant<ZeroJump, RelativeConstant, RelativeOfZ, SeparableJump, BumpJump, TabulatedXZ>;

    JumpSizeSpec() : node_(ZeroJump{}) {}
    explicit JumpSizeSpec(Node node);

    double operator()(double x, double t, double z) const;
    const Node& node() const { return node_; }

    /// Sign pattern of the family derived from its parameters. Tabulated data
    /// is scanned; the affine z-family is classified on the declared window
    /// [0, z_hint] and reported mixed if it changes sign there.
    SignPattern sign_pattern(double z_hint = 1.0) const;

    bool is_zero() const { return std::holds_alternative<ZeroJump>(node_); }
    bool depends_on_time() const;

    static JumpSizeSpec zero() { return JumpSizeSpec(ZeroJump{}); }
    static JumpSizeSpec relative_constant(double c) { return JumpSizeSpec(RelativeConstant{c}); }
    static JumpSizeSpec relative_of_z(ZFunction zeta) {
        return JumpSizeSpec(RelativeOfZ{std::move(zeta)});
    }
    static JumpSizeSpec separable(CoefficientSpec psi, ZFunction zeta) {
        return JumpSizeSpec(SeparableJump{std::move(psi), std::move(zeta)});
    }
    static JumpSizeSpec bump(BumpX b) { return JumpSizeSpec(BumpJump{b}); }

private:
    Node node_;
};

}  // namespace jumpvex
