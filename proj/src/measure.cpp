#include "jumpvex/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "jumpvex/coefficients.hpp"

namespace jumpvex {

double DensityMeasure::density(double z) const {
    if (const auto* p = std::get_if<PowerForm>(&form)) return p->c * std::pow(z, -p->p);
    const auto& t = std::get<TabulatedForm>(form);
    return interp_flat(t.z, t.value, z);
}

MeasureSpec::MeasureSpec(Node node) : node_(std::move(node)) {
    if (const auto* d = std::get_if<DensityMeasure>(&node_)) {
        if (!(d->z_min >= 0.0) || !(d->z_max > d->z_min))
            throw std::invalid_argument("density measure: need 0 <= z_min < z_max");
        if (d->quadrature_nodes < 2)
            throw std::invalid_argument("density measure: quadrature_nodes >= 2");
        if (const auto* p = std::get_if<DensityMeasure::PowerForm>(&d->form)) {
            if (p->c < 0.0) throw std::invalid_argument("density measure: negative density");
        } else {
            const auto& t = std::get<DensityMeasure::TabulatedForm>(d->form);
            require_strictly_increasing(t.z, "density z-grid");
            if (t.z.size() != t.value.size())
                throw std::invalid_argument("density measure: grid/value length mismatch");
            if (t.z.front() <= 0.0)
                throw std::invalid_argument("density measure: z-grid must be positive");
            for (double v : t.value)
                if (v < 0.0) throw std::invalid_argument("density measure: negative density value");
        }
    } else if (const auto* a = std::get_if<AtomMeasure>(&node_)) {
        require_strictly_increasing(a->z, "atom locations");
        if (a->z.size() != a->mass.size())
            throw std::invalid_argument("atom measure: location/mass length mismatch");
        if (a->z.front() <= 0.0) throw std::invalid_argument("atom measure: atoms must sit in (0,inf)");
        for (double m : a->mass)
            if (m < 0.0) throw std::invalid_argument("atom measure: negative mass");
    }
}

bool MeasureSpec::finite_activity() const {
    if (const auto* d = std::get_if<DensityMeasure>(&node_))
        return d->z_min > 0.0 && std::isfinite(d->z_max);
    return true;
}

bool MeasureSpec::label_in_space(double z) const {
    if (is_lebesgue_unit()) return z >= 0.0 && z <= 1.0;
    return z > 0.0;
}

namespace {

// Composite Simpson weights for n_panels (even) uniform panels on [a, b].
void simpson_on_interval(double a, double b, int n_nodes, std::vector<double>& node,
                         std::vector<double>& weight) {
    int panels = std::max(2, n_nodes - 1);
    if (panels % 2 != 0) ++panels;
    const int n = panels + 1;
    const double h = (b - a) / panels;
    node.resize(n);
    weight.resize(n);
    for (int i = 0; i < n; ++i) {
        node[i] = a + h * i;
        double w = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        weight[i] = w * h / 3.0;
    }
}

}  // namespace

MeasureQuadrature MeasureSpec::quadrature(int n_nodes) const {
    if (!finite_activity())
        throw std::domain_error(
            "measure has unbounded support window; truncate the model before pricing");
    MeasureQuadrature q;
    if (is_lebesgue_unit()) {
        simpson_on_interval(0.0, 1.0, n_nodes, q.node, q.weight);
        q.total_mass = 1.0;
        return q;
    }
    if (const auto* a = std::get_if<AtomMeasure>(&node_)) {
        q.node = a->z;
        q.weight = a->mass;
        double m = 0.0;
        for (double w : q.weight) m += w;
        q.total_mass = m;
        return q;
    }
    const auto& d = std::get<DensityMeasure>(node_);
    // Log-spaced composite Simpson: substitute z = exp(s) so power-law
    // densities integrate with a smooth integrand.
    std::vector<double> s_node, s_weight;
    simpson_on_interval(std::log(d.z_min), std::log(d.z_max), d.quadrature_nodes, s_node, s_weight);
    q.node.resize(s_node.size());
    q.weight.resize(s_node.size());
    double m = 0.0;
    for (std::size_t i = 0; i < s_node.size(); ++i) {
        const double z = std::exp(s_node[i]);
        q.node[i] = z;
        q.weight[i] = s_weight[i] * z * d.density(z);
        m += q.weight[i];
    }
    q.total_mass = m;
    return q;
}

MeasureSpec MeasureSpec::restricted(double lo, double hi) const {
    if (is_lebesgue_unit())
        throw std::domain_error("lebesgue_unit measure is already finite-intensity");
    if (const auto* a = std::get_if<AtomMeasure>(&node_)) {
        AtomMeasure out;
        for (std::size_t i = 0; i < a->z.size(); ++i) {
            if (a->z[i] >= lo && a->z[i] <= hi) {
                out.z.push_back(a->z[i]);
                out.mass.push_back(a->mass[i]);
            }
        }
        if (out.z.empty())
            throw std::domain_error("measure restriction [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "] contains no atoms");
        return MeasureSpec(out);
    }
    auto d = std::get<DensityMeasure>(node_);
    d.z_min = std::max(d.z_min, lo);
    d.z_max = std::min(d.z_max, hi);
    if (!(d.z_min < d.z_max)) throw std::domain_error("measure restriction window is empty");
    return MeasureSpec(d);
}

MeasureSpec MeasureSpec::power_density(double c, double p, double z_min, double z_max,
                                       int quadrature_nodes) {
    DensityMeasure d;
    d.form = DensityMeasure::PowerForm{c, p};
    d.z_min = z_min;
    d.z_max = z_max;
    d.quadrature_nodes = quadrature_nodes;
    return MeasureSpec(d);
}

MeasureSpec MeasureSpec::atoms(std::vector<double> z, std::vector<double> mass) {
    return MeasureSpec(AtomMeasure{std::move(z), std::move(mass)});
}

LabelSampler::LabelSampler(const MeasureSpec& measure, int n_nodes) {
    if (measure.is_lebesgue_unit()) {
        uniform_ = true;
        return;
    }
    // Labels are drawn from the same discrete quadrature rule the compensator
    // integral uses, so a simulated step has conditional mean zero exactly.
    const MeasureQuadrature q = measure.quadrature(n_nodes);
    if (!(q.total_mass > 0.0))
        throw std::domain_error("cannot sample jump labels from a zero-mass measure");
    z_ = q.node;
    cdf_.resize(q.node.size() + 1);
    cdf_[0] = 0.0;
    for (std::size_t i = 0; i < q.node.size(); ++i) cdf_[i + 1] = cdf_[i] + q.weight[i];
    for (double& c : cdf_) c /= q.total_mass;
    cdf_.back() = 1.0;
}

double LabelSampler::sample(double u) const {
    if (uniform_) return u;
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t k = static_cast<std::size_t>(it - cdf_.begin());
    if (k == 0) k = 1;
    if (k > z_.size()) k = z_.size();
    return z_[k - 1];
}

}  // namespace jumpvex
