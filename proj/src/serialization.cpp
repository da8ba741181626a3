#include "jumpvex/serialization.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jumpvex {

using nlohmann::json;

namespace {

json coeff_to_json(const CoefficientSpec& c);
CoefficientSpec coeff_from_json(const json& j);

json knots_to_json(const std::vector<double>& xs, const std::vector<double>& vs) {
    json out = json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) out.push_back({xs[i], vs[i]});
    return out;
}

void knots_from_json(const json& j, std::vector<double>& xs, std::vector<double>& vs) {
    xs.clear();
    vs.clear();
    for (const auto& pair : j) {
        xs.push_back(pair.at(0).get<double>());
        vs.push_back(pair.at(1).get<double>());
    }
}

json coeff_to_json(const CoefficientSpec& c) {
    return std::visit(
        [&](const auto& n) -> json {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ZeroCoeff>) {
                return {{"kind", "zero"}};
            } else if constexpr (std::is_same_v<T, ConstantCoeff>) {
                return {{"kind", "constant"}, {"c", n.c}};
            } else if constexpr (std::is_same_v<T, ProportionalCoeff>) {
                return {{"kind", "proportional"}, {"c", n.c}};
            } else if constexpr (std::is_same_v<T, PowerCoeff>) {
                return {{"kind", "power"}, {"c", n.c}, {"p", n.p}};
            } else if constexpr (std::is_same_v<T, PiecewiseLinearX>) {
                return {{"kind", "piecewise_x"}, {"knots", knots_to_json(n.x, n.value)}};
            } else if constexpr (std::is_same_v<T, BumpX>) {
                return {{"kind", "bump_x"}, {"x_lo", n.x_lo},   {"x_rise", n.x_rise},
                        {"x_fall", n.x_fall}, {"x_hi", n.x_hi}, {"height", n.height}};
            } else if constexpr (std::is_same_v<T, TimeModulatedCoeff>) {
                return {{"kind", "time_modulated"},
                        {"base", coeff_to_json(*n.base)},
                        {"factor", {{"knots", knots_to_json(n.factor.t, n.factor.value)}}}};
            } else {
                json values = json::array();
                for (std::size_t i = 0; i < n.x.size(); ++i) {
                    json row = json::array();
                    for (std::size_t j = 0; j < n.t.size(); ++j)
                        row.push_back(n.value[i * n.t.size() + j]);
                    values.push_back(row);
                }
                return {{"kind", "tabulated"}, {"x", n.x}, {"t", n.t}, {"values", values}};
            }
        },
        c.node());
}

CoefficientSpec coeff_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return CoefficientSpec::zero();
    if (kind == "constant") return CoefficientSpec::constant(j.at("c").get<double>());
    if (kind == "proportional") return CoefficientSpec::proportional(j.at("c").get<double>());
    if (kind == "power")
        return CoefficientSpec::power(j.at("c").get<double>(), j.at("p").get<double>());
    if (kind == "piecewise_x") {
        std::vector<double> xs, vs;
        knots_from_json(j.at("knots"), xs, vs);
        return CoefficientSpec::piecewise_x(std::move(xs), std::move(vs));
    }
    if (kind == "bump_x") {
        return CoefficientSpec::bump_x(j.at("x_lo").get<double>(), j.at("x_rise").get<double>(),
                                       j.at("x_fall").get<double>(), j.at("x_hi").get<double>(),
                                       j.at("height").get<double>());
    }
    if (kind == "time_modulated") {
        PiecewiseLinearT factor;
        knots_from_json(j.at("factor").at("knots"), factor.t, factor.value);
        return CoefficientSpec::time_modulated(coeff_from_json(j.at("base")), std::move(factor));
    }
    if (kind == "tabulated") {
        const auto xs = j.at("x").get<std::vector<double>>();
        const auto ts = j.at("t").get<std::vector<double>>();
        std::vector<double> values;
        values.reserve(xs.size() * ts.size());
        for (const auto& row : j.at("values"))
            for (const auto& v : row) values.push_back(v.get<double>());
        return CoefficientSpec::tabulated(xs, ts, std::move(values));
    }
    throw std::invalid_argument("model json: unknown coefficient kind '" + kind + "'");
}

json zeta_to_json(const ZFunction& z) {
    if (const auto* a = std::get_if<AffineZ>(&z.node()))
        return {{"kind", "affine"}, {"a", a->a}, {"b", a->b}};
    const auto& t = std::get<TabulatedZ>(z.node());
    return {{"kind", "tabulated"}, {"z", t.z}, {"values", t.value}};
}

ZFunction zeta_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "affine") return ZFunction::affine(j.at("a").get<double>(), j.at("b").get<double>());
    if (kind == "tabulated")
        return ZFunction::tabulated(j.at("z").get<std::vector<double>>(),
                                    j.at("values").get<std::vector<double>>());
    throw std::invalid_argument("model json: unknown zeta kind '" + kind + "'");
}

json jump_to_json(const JumpSizeSpec& spec) {
    return std::visit(
        [&](const auto& n) -> json {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ZeroJump>) {
                return {{"kind", "zero"}};
            } else if constexpr (std::is_same_v<T, RelativeConstant>) {
                return {{"kind", "relative_constant"}, {"c", n.c}};
            } else if constexpr (std::is_same_v<T, RelativeOfZ>) {
                return {{"kind", "relative_of_z"}, {"zeta", zeta_to_json(n.zeta)}};
            } else if constexpr (std::is_same_v<T, SeparableJump>) {
                return {{"kind", "separable"},
                        {"psi", coeff_to_json(n.psi)},
                        {"zeta", zeta_to_json(n.zeta)}};
            } else if constexpr (std::is_same_v<T, BumpJump>) {
                return {{"kind", "bump"},        {"x_lo", n.bump.x_lo}, {"x_rise", n.bump.x_rise},
                        {"x_fall", n.bump.x_fall}, {"x_hi", n.bump.x_hi}, {"height", n.bump.height}};
            } else {
                json values = json::array();
                for (std::size_t it = 0; it < n.t.size(); ++it) {
                    json slab = json::array();
                    for (std::size_t ix = 0; ix < n.x.size(); ++ix) {
                        json row = json::array();
                        for (std::size_t iz = 0; iz < n.z.size(); ++iz)
                            row.push_back(n.value[(it * n.x.size() + ix) * n.z.size() + iz]);
                        slab.push_back(row);
                    }
                    values.push_back(slab);
                }
                json out = {{"kind", "tabulated_xz"}, {"x", n.x}, {"z", n.z},
                            {"t", n.t},               {"values", values}};
                if (n.z_support_lo > 0.0 || std::isfinite(n.z_support_hi))
                    out["z_support"] = {n.z_support_lo,
                                        std::isfinite(n.z_support_hi) ? n.z_support_hi : -1.0};
                return out;
            }
        },
        spec.node());
}

JumpSizeSpec jump_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return JumpSizeSpec::zero();
    if (kind == "relative_constant")
        return JumpSizeSpec::relative_constant(j.at("c").get<double>());
    if (kind == "relative_of_z") return JumpSizeSpec::relative_of_z(zeta_from_json(j.at("zeta")));
    if (kind == "separable")
        return JumpSizeSpec::separable(coeff_from_json(j.at("psi")), zeta_from_json(j.at("zeta")));
    if (kind == "bump")
        return JumpSizeSpec::bump(BumpX{j.at("x_lo").get<double>(), j.at("x_rise").get<double>(),
                                        j.at("x_fall").get<double>(), j.at("x_hi").get<double>(),
                                        j.at("height").get<double>()});
    if (kind == "tabulated_xz") {
        TabulatedXZ tab;
        tab.x = j.at("x").get<std::vector<double>>();
        tab.z = j.at("z").get<std::vector<double>>();
        tab.t = j.at("t").get<std::vector<double>>();
        for (const auto& slab : j.at("values"))
            for (const auto& row : slab)
                for (const auto& v : row) tab.value.push_back(v.get<double>());
        if (j.contains("z_support")) {
            tab.z_support_lo = j.at("z_support").at(0).get<double>();
            const double hi = j.at("z_support").at(1).get<double>();
            tab.z_support_hi = hi < 0.0 ? std::numeric_limits<double>::infinity() : hi;
        }
        return JumpSizeSpec(std::move(tab));
    }
    throw std::invalid_argument("model json: unknown jump kind '" + kind + "'");
}

json measure_to_json(const MeasureSpec& m) {
    if (m.is_lebesgue_unit()) return {{"kind", "lebesgue_unit"}};
    if (const auto* a = std::get_if<AtomMeasure>(&m.node())) {
        json atoms = json::array();
        for (std::size_t i = 0; i < a->z.size(); ++i) atoms.push_back({a->z[i], a->mass[i]});
        return {{"kind", "atoms"}, {"atoms", atoms}};
    }
    const auto& d = std::get<DensityMeasure>(m.node());
    json out = {{"kind", "density"}, {"quadrature_nodes", d.quadrature_nodes}};
    if (const auto* p = std::get_if<DensityMeasure::PowerForm>(&d.form)) {
        out["form"] = "power";
        out["c"] = p->c;
        out["p"] = p->p;
    } else {
        const auto& t = std::get<DensityMeasure::TabulatedForm>(d.form);
        out["form"] = "tabulated";
        out["z"] = t.z;
        out["values"] = t.value;
    }
    if (d.z_min > 0.0) out["z_min"] = d.z_min;
    if (std::isfinite(d.z_max)) out["z_max"] = d.z_max;
    return out;
}

MeasureSpec measure_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "lebesgue_unit") return MeasureSpec::lebesgue_unit();
    if (kind == "atoms") {
        std::vector<double> z, mass;
        for (const auto& pair : j.at("atoms")) {
            z.push_back(pair.at(0).get<double>());
            mass.push_back(pair.at(1).get<double>());
        }
        return MeasureSpec::atoms(std::move(z), std::move(mass));
    }
    if (kind == "density") {
        DensityMeasure d;
        const std::string form = j.at("form").get<std::string>();
        if (form == "power") {
            d.form = DensityMeasure::PowerForm{j.at("c").get<double>(), j.at("p").get<double>()};
        } else if (form == "tabulated") {
            d.form = DensityMeasure::TabulatedForm{j.at("z").get<std::vector<double>>(),
                                                   j.at("values").get<std::vector<double>>()};
        } else {
            throw std::invalid_argument("model json: unknown density form '" + form + "'");
        }
        d.z_min = j.value("z_min", 0.0);
        d.z_max = j.contains("z_max") ? j.at("z_max").get<double>()
                                      : std::numeric_limits<double>::infinity();
        d.quadrature_nodes = j.value("quadrature_nodes", 256);
        return MeasureSpec(d);
    }
    throw std::invalid_argument("model json: unknown measure kind '" + kind + "'");
}

json entry_to_json(const ConditionEntry& e) {
    json out = {{"status", to_string(e.status)}};
    if (e.best_constant) out["best_constant"] = *e.best_constant;
    if (e.witness) out["witness"] = {{"x", (*e.witness)[0]}, {"t", (*e.witness)[1]},
                                     {"z", (*e.witness)[2]}};
    if (!e.note.empty()) out["note"] = e.note;
    return out;
}

}  // namespace

json model_to_json(const Model& model) {
    return {{"label", model.label},
            {"gamma", model.gamma},
            {"lambda", coeff_to_json(model.intensity)},
            {"beta", coeff_to_json(model.diffusion)},
            {"phi", jump_to_json(model.jump_size)},
            {"measure", measure_to_json(model.measure)}};
}

Model model_from_json(const json& j) {
    Model m;
    m.label = j.value("label", "unlabeled");
    m.gamma = j.at("gamma").get<double>();
    m.intensity = coeff_from_json(j.at("lambda"));
    m.diffusion = coeff_from_json(j.at("beta"));
    m.jump_size = jump_from_json(j.at("phi"));
    m.measure = measure_from_json(j.at("measure"));
    if (!(m.gamma > -1.0)) throw std::invalid_argument("model json: gamma must exceed -1");
    if (!m.intensity.is_time_only())
        throw std::invalid_argument("model json: lambda must depend on t only");
    return m;
}

Model load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
    json j;
    in >> j;
    return model_from_json(j);
}

void save_model_file(const std::string& path, const Model& model) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file '" + path + "'");
    out << model_to_json(model).dump(2) << "\n";
}

json to_json(const ConditionReport& r) {
    return {{"conditions",
             {{"quadratic_growth", entry_to_json(r.quadratic_growth)},
              {"lipschitz", entry_to_json(r.lipschitz)},
              {"jump_floor", entry_to_json(r.jump_floor)},
              {"signed_convexity", entry_to_json(r.signed_convexity)},
              {"curvature_sign", entry_to_json(r.curvature_sign)},
              {"integrated_growth", entry_to_json(r.integrated_growth)},
              {"integrated_lipschitz", entry_to_json(r.integrated_lipschitz)},
              {"moment_growth", entry_to_json(r.moment_growth)}}},
            {"resolution",
             {{"n_x", r.resolution.n_x},
              {"n_t", r.resolution.n_t},
              {"n_z", r.resolution.n_z},
              {"x_min", r.resolution.x_min},
              {"x_max", r.resolution.x_max},
              {"max_dx", r.resolution.max_dx}}},
            {"tolerance", r.tolerance}};
}

json to_json(const ConvexityReport& r) {
    json slices = json::array();
    for (char c : r.slice_convex) slices.push_back(c != 0);
    return {{"is_convex", r.is_convex},
            {"slice_convex", slices},
            {"min_second_difference", r.min_second_difference},
            {"witness", {{"x", r.min_x}, {"tau", r.min_tau}}},
            {"tolerance", r.tolerance},
            {"grid", {{"n_x", r.n_x}, {"n_t", r.n_t}}},
            {"model", r.model_label},
            {"payoff", r.payoff_desc}};
}

json to_json(const ComparisonReport& r) {
    return {{"dominated", r.dominated},
            {"max_violation", r.max_violation},
            {"violation", {{"x", r.violation_x}, {"tau", r.violation_tau}}},
            {"hypotheses_met", r.hypotheses_met},
            {"unmet_hypotheses", r.unmet_hypotheses},
            {"differs", {{"beta", r.beta_differs}, {"lambda", r.lambda_differs},
                         {"phi", r.phi_differs}}},
            {"method", r.method},
            {"tolerance", r.tolerance},
            {"price_hi", r.price_hi},
            {"price_lo", r.price_lo},
            {"model_hi", r.model_hi_label},
            {"model_lo", r.model_lo_label}};
}

json to_json(const LcpReport& r) {
    json minima = json::array();
    for (const auto& p : r.minima)
        minima.push_back({{"x0", p.x0}, {"t0", p.t0}, {"width", p.width}, {"value", p.value}});
    json out = {{"violation_found", r.violation_found},
                {"minima", minima},
                {"tolerance", r.tolerance},
                {"model", r.model_label}};
    if (r.witness)
        out["witness"] = {{"x0", r.witness->x0},
                          {"t0", r.witness->t0},
                          {"width", r.witness->width},
                          {"value", r.witness->value}};
    return out;
}

json to_json(const MCEstimate& e) {
    return {{"mean", e.mean},        {"stderr", e.stderr_},
            {"n_paths", e.n_paths},  {"seed", e.seed},
            {"model", e.model_label}, {"payoff", e.payoff_desc},
            {"floor_events", e.floor_events}};
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("expected a comma-separated list of reals");
    return out;
}

std::vector<double> parse_x_grid_spec(const std::string& spec) {
    auto build = [&](const std::string& args, bool geometric) {
        const std::vector<double> p = parse_real_list(args);
        if (p.size() != 3) throw std::invalid_argument("x-grid spec needs min,max,count");
        const double lo = p[0], hi = p[1];
        const std::size_t count = static_cast<std::size_t>(p[2]);
        if (!(lo > 0.0) || !(hi > lo) || count < 2)
            throw std::invalid_argument("x-grid spec: need 0 < min < max and count >= 2");
        std::vector<double> xs(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double w = static_cast<double>(i) / (count - 1);
            xs[i] = geometric ? lo * std::pow(hi / lo, w) : lo + (hi - lo) * w;
        }
        xs.back() = hi;
        return xs;
    };
    if (spec.rfind("uniform:", 0) == 0) return build(spec.substr(8), false);
    if (spec.rfind("geometric:", 0) == 0) return build(spec.substr(10), true);
    return parse_real_list(spec);
}

}  // namespace jumpvex
