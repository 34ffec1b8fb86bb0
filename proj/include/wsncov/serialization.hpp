#pragma once

#include "wsncov/coverage.hpp"
#include "wsncov/link.hpp"
#include "wsncov/sensing.hpp"
#include "wsncov/simulator.hpp"

#include <json.hpp>

#include <string>

namespace wsncov {

using Json = nlohmann::ordered_json;

// Sensing model schema: {"model": "boolean"|"elfes"|"shadow", ...} with
// boolean {r_s}, elfes {R_1, R_max, lambda, beta}, shadow {r_s, n, sigma};
// distances in meters, sigma in dB.
Json to_json(const SensingModel& model);
SensingModel sensing_model_from_json(const Json& j);

// Link model schema: {"R_0", "n", "sigma"}.
Json to_json(const LinkModel& model);
LinkModel link_model_from_json(const Json& j);

Json to_json(const Region& region);
Json to_json(const TrialPlan& plan);
TrialPlan trial_plan_from_json(const Json& j);
Json to_json(const EmpiricalEstimate& estimate);

/// {"value", "method", "pdet_method", "half_width", "p_det", "detail", "inputs"}.
Json to_json(const CoverageResult& result, const Json& inputs);

/// Locale-independent scientific notation with 13 significant digits.
std::string format_decimal(double value);

}  // namespace wsncov
