#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "jumpvex/analysis.hpp"
#include "jumpvex/conditions.hpp"
#include "jumpvex/model.hpp"

namespace jumpvex {

/// Model JSON schema (field names are normative for the CLI):
///   {"label": str, "gamma": num, "lambda": coeff, "beta": coeff,
///    "phi": jumpspec, "measure": measurespec}
/// with coeff = {"kind": "zero"|"constant"|"proportional"|"power"|
///               "piecewise_x"|"bump_x"|"time_modulated"|"tabulated", ...}.
nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);

Model load_model_file(const std::string& path);
void save_model_file(const std::string& path, const Model& model);

nlohmann::json to_json(const ConditionReport& report);
nlohmann::json to_json(const ConvexityReport& report);
nlohmann::json to_json(const ComparisonReport& report);
nlohmann::json to_json(const LcpReport& report);
nlohmann::json to_json(const MCEstimate& estimate);

/// x-grid specs used by the CLI: "uniform:<min>,<max>,<count>",
/// "geometric:<min>,<max>,<count>", or an explicit comma-separated list.
std::vector<double> parse_x_grid_spec(const std::string& spec);

/// Comma-separated list of reals ("0.25,0.5,0.75").
std::vector<double> parse_real_list(const std::string& text);

}  // namespace jumpvex
