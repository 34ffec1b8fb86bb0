#include "wsncov/serialization.hpp"

#include "wsncov/errors.hpp"

#include <array>
#include <charconv>

namespace wsncov {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

double number_field(const Json& j, const char* key) {
    if (!j.contains(key)) {
        throw ConfigError(std::string("missing field \"") + key + "\"");
    }
    if (!j.at(key).is_number()) {
        throw ConfigError(std::string("field \"") + key + "\" must be a number");
    }
    return j.at(key).get<double>();
}

}  // namespace

Json to_json(const SensingModel& model) {
    return std::visit(
        overloaded{[](const BooleanSensing& m) { return Json{{"model", "boolean"}, {"r_s", m.r_s()}}; },
                   [](const ElfesSensing& m) {
                       return Json{{"model", "elfes"},
                                   {"R_1", m.r1()},
                                   {"R_max", m.r_max()},
                                   {"lambda", m.lambda()},
                                   {"beta", m.beta()}};
                   },
                   [](const ShadowFadingSensing& m) {
                       return Json{{"model", "shadow"}, {"r_s", m.r_s()}, {"n", m.n()}, {"sigma", m.sigma()}};
                   }},
        model);
}

SensingModel sensing_model_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("model") || !j.at("model").is_string()) {
        throw ConfigError("sensing model needs a string \"model\" tag");
    }
    const auto tag = j.at("model").get<std::string>();
    if (tag == "boolean") {
        return BooleanSensing(number_field(j, "r_s"));
    }
    if (tag == "elfes") {
        const double beta = j.contains("beta") ? number_field(j, "beta") : 1.0;
        const double r1 = j.contains("R_1") ? number_field(j, "R_1") : 0.0;
        return ElfesSensing(r1, number_field(j, "R_max"), number_field(j, "lambda"), beta);
    }
    if (tag == "shadow") {
        return ShadowFadingSensing(number_field(j, "r_s"), number_field(j, "n"), number_field(j, "sigma"));
    }
    throw ConfigError("unknown sensing model \"" + tag + "\"");
}

Json to_json(const LinkModel& model) {
    return Json{{"R_0", model.r0()}, {"n", model.n()}, {"sigma", model.sigma()}};
}

LinkModel link_model_from_json(const Json& j) {
    return LinkModel(number_field(j, "R_0"), number_field(j, "n"), number_field(j, "sigma"));
}

Json to_json(const Region& region) {
    return Json{{"shape", "disk"}, {"radius", region.radius()}, {"area", region.area()}};
}

Json to_json(const TrialPlan& plan) {
    return Json{{"trials", plan.trials},
                {"events_per_trial", plan.events_per_trial},
                {"event_margin", plan.event_margin},
                {"base_seed", plan.base_seed}};
}

TrialPlan trial_plan_from_json(const Json& j) {
    TrialPlan plan;
    plan.trials = j.at("trials").get<std::size_t>();
    plan.events_per_trial = j.at("events_per_trial").get<std::size_t>();
    plan.event_margin = number_field(j, "event_margin");
    plan.base_seed = j.at("base_seed").get<std::uint64_t>();
    return plan;
}

Json to_json(const EmpiricalEstimate& estimate) {
    return Json{{"mean", estimate.mean},
                {"half_width_95", estimate.half_width_95},
                {"trials_used", estimate.trials_used}};
}

Json to_json(const CoverageResult& result, const Json& inputs) {
    Json detail = Json::object();
    for (const auto& [key, value] : result.detail) {
        detail[key] = value;
    }
    return Json{{"value", result.value},
                {"method", std::string(to_string(result.method))},
                {"pdet_method", std::string(to_string(result.pdet_method))},
                {"half_width", result.half_width},
                {"p_det", result.p_det},
                {"detail", detail},
                {"inputs", inputs}};
}

std::string format_decimal(double value) {
    std::array<char, 64> buffer{};
    const auto [end, ec] =
        std::to_chars(buffer.data(), buffer.data() + buffer.size(), value, std::chars_format::scientific, 12);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_decimal: conversion failed");
    }
    return std::string(buffer.data(), end);
}

}  // namespace wsncov
