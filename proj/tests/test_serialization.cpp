#include <doctest.h>

#include <cmath>

#include "jumpvex/serialization.hpp"
#include "test_models.hpp"

using namespace jumpvex;

namespace {

void check_same_evaluations(const Model& a, const Model& b) {
    for (double x : {0.3, 0.7, 1.0, 2.5, 6.0})
        for (double t : {0.0, 0.4, 1.0})
            for (double z : {0.3, 0.9, 2.0, 5.0}) {
                if (!a.measure.label_in_space(z)) continue;
                CHECK(a.diffusion(x, t) == b.diffusion(x, t));
                CHECK(a.jump_size(x, t, z) == b.jump_size(x, t, z));
                CHECK(a.intensity_at(t) == b.intensity_at(t));
            }
}

}  // namespace

TEST_CASE("model json round trip preserves evaluations for the whole suite") {
    const Model suite[] = {test_models::diffusion_only(), test_models::constant_relative_jump(),
                           test_models::time_modulated_lambda(), counterexample_model(),
                           test_models::density_model(), test_models::truncated_density(4)};
    for (const Model& m : suite) {
        const nlohmann::json j = model_to_json(m);
        const Model back = model_from_json(j);
        INFO("model ", m.label);
        CHECK(back.label == m.label);
        CHECK(back.gamma == m.gamma);
        check_same_evaluations(m, back);
    }
}

TEST_CASE("normative field names appear in the model json") {
    const nlohmann::json j = model_to_json(counterexample_model());
    CHECK(j.contains("label"));
    CHECK(j.contains("gamma"));
    CHECK(j.contains("lambda"));
    CHECK(j.contains("beta"));
    CHECK(j.contains("phi"));
    CHECK(j.contains("measure"));
    CHECK(j["beta"]["kind"] == "zero");
    CHECK(j["lambda"]["kind"] == "constant");
    CHECK(j["phi"]["kind"] == "bump");
    CHECK(j["measure"]["kind"] == "lebesgue_unit");
}

TEST_CASE("coefficient kinds parse from their normative spellings") {
    const auto j = nlohmann::json::parse(R"({
        "label": "spec_kinds",
        "gamma": -0.5,
        "lambda": {"kind": "time_modulated",
                   "base": {"kind": "constant", "c": 1.0},
                   "factor": {"knots": [[0.0, 0.5], [1.0, 1.5]]}},
        "beta": {"kind": "piecewise_x", "knots": [[0.5, 0.1], [2.0, 0.3]]},
        "phi": {"kind": "separable",
                "psi": {"kind": "proportional", "c": 1.0},
                "zeta": {"kind": "affine", "a": 0.0, "b": 0.1}},
        "measure": {"kind": "density", "form": "power", "c": 1.0, "p": 1.5,
                    "z_min": 0.25, "z_max": 4.0, "quadrature_nodes": 128}
    })");
    const Model m = model_from_json(j);
    CHECK(m.diffusion(1.0, 0.0) == doctest::Approx(0.1 + 0.2 * 0.5 / 1.5));
    CHECK(m.intensity_at(0.0) == doctest::Approx(0.5));
    CHECK(m.intensity_at(1.0) == doctest::Approx(1.5));
    CHECK(m.jump_size(2.0, 0.0, 0.5) == doctest::Approx(0.1));
    CHECK(m.measure.finite_activity());
}

TEST_CASE("malformed model json is rejected with invalid_argument") {
    auto base = model_to_json(test_models::diffusion_only());
    auto bad_kind = base;
    bad_kind["beta"]["kind"] = "sinusoidal";
    CHECK_THROWS_AS(model_from_json(bad_kind), std::invalid_argument);
    auto bad_gamma = base;
    bad_gamma["gamma"] = -2.0;
    CHECK_THROWS_AS(model_from_json(bad_gamma), std::invalid_argument);
    auto bad_lambda = base;
    bad_lambda["lambda"] = {{"kind", "proportional"}, {"c", 1.0}};
    CHECK_THROWS_AS(model_from_json(bad_lambda), std::invalid_argument);
}

TEST_CASE("x-grid specs parse to the documented layouts") {
    const auto uniform = parse_x_grid_spec("uniform:1,3,5");
    REQUIRE(uniform.size() == 5);
    CHECK(uniform[1] == doctest::Approx(1.5));
    const auto geometric = parse_x_grid_spec("geometric:0.5,8,5");
    REQUIRE(geometric.size() == 5);
    CHECK(geometric[1] == doctest::Approx(1.0));
    const auto list = parse_x_grid_spec("0.5,1.0,2.0");
    CHECK(list == std::vector<double>{0.5, 1.0, 2.0});
    CHECK_THROWS_AS(parse_x_grid_spec("uniform:1,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_x_grid_spec("geometric:-1,3,5"), std::invalid_argument);
}
