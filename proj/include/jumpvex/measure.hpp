#pragma once

#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

namespace jumpvex {

struct LebesgueUnit {};  // Lebesgue measure on [0, 1]

struct DensityMeasure {
    // Density d(z) on (0, inf), either the power family c * z^(-p) or a
    // tabulated curve (linear interpolation, flat extrapolation). The window
    // [z_min, z_max] is the support actually integrated/sampled; z_min = 0 or
    // z_max = inf marks an untruncated (possibly infinite-activity) measure.
    struct PowerForm {
        double c = 1.0;
        double p = 1.5;
    };
    struct TabulatedForm {
        std::vector<double> z;
        std::vector<double> value;
    };
    std::variant<PowerForm, TabulatedForm> form = PowerForm{};
    double z_min = 0.0;
    double z_max = std::numeric_limits<double>::infinity();
    int quadrature_nodes = 256;  // hint for integration against the density

    double density(double z) const;
};

struct AtomMeasure {
    std::vector<double> z;     // strictly increasing, positive
    std::vector<double> mass;  // nonnegative
};

/// Fixed quadrature rule for integrals against the jump measure:
/// integral of f over the measure ~= sum_k weight[k] * f(node[k]).
/// Node order is fixed so repeated integration is bit-reproducible.
struct MeasureQuadrature {
    std::vector<double> node;
    std::vector<double> weight;
    double total_mass = 0.0;

    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < node.size(); ++k) acc += weight[k] * f(node[k]);
        return acc;
    }
};

class MeasureSpec {
public:
    using Node = std::variant<LebesgueUnit, DensityMeasure, AtomMeasure>;

    MeasureSpec() : node_(LebesgueUnit{}) {}
    explicit MeasureSpec(Node node);

    const Node& node() const { return node_; }

    bool is_lebesgue_unit() const { return std::holds_alternative<LebesgueUnit>(node_); }

    /// True when the total mass of the measure is finite, i.e. the model has a
    /// finite jump intensity and can be simulated/priced directly.
    bool finite_activity() const;

    /// z parameter space check: [0,1] under LebesgueUnit, (0,inf) otherwise.
    bool label_in_space(double z) const;

    /// Builds the quadrature rule. n_nodes applies to LebesgueUnit (composite
    /// Simpson on [0,1]); DensityMeasure uses its own hint on log-spaced
    /// Simpson panels; AtomMeasure sums atoms exactly.
    /// Throws std::domain_error for an infinite-activity measure.
    MeasureQuadrature quadrature(int n_nodes) const;

    double total_mass(int n_nodes = 64) const { return quadrature(n_nodes).total_mass; }

    /// Restriction of the measure to [lo, hi]; used by model truncation.
    MeasureSpec restricted(double lo, double hi) const;

    static MeasureSpec lebesgue_unit() { return MeasureSpec(LebesgueUnit{}); }
    static MeasureSpec power_density(double c, double p, double z_min = 0.0,
                                     double z_max = std::numeric_limits<double>::infinity(),
                                     int quadrature_nodes = 256);
    static MeasureSpec atoms(std::vector<double> z, std::vector<double> mass);

private:
    Node node_;
};

/// Inverse-CDF sampler for jump labels distributed as measure / total mass.
/// Built once per model; sampling maps a uniform in [0,1) to a label.
class LabelSampler {
public:
    explicit LabelSampler(const MeasureSpec& measure, int n_nodes = 64);

    double sample(double uniform01) const;

private:
    bool uniform_ = false;  // LebesgueUnit: identity map
    std::vector<double> z_;
    std::vector<double> cdf_;  // normalized, cdf_.front() == 0, back() == 1
};

}  // namespace jumpvex
