#include "wsncov/sensing.hpp"

#include "wsncov/errors.hpp"
#include "wsncov/shadowing.hpp"

#include <cmath>
#include <string>

namespace wsncov {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void require(bool condition, const char* message) {
    if (!condition) {
        throw DomainError(message);
    }
}

void check_distance(double x) {
    require(std::isfinite(x), "event distance must be finite");
    require(x >= 0.0, "event distance must be non-negative");
}

double elfes_probability(const ElfesSensing& m, double x) {
    if (x <= m.r1()) {
        return 1.0;
    }
    if (x >= m.r_max()) {
        return 0.0;
    }
    return std::exp(-m.lambda() * std::pow(x - m.r1(), m.beta()));
}

}  // namespace

BooleanSensing::BooleanSensing(double r_s) : r_s_(r_s) {
    require(std::isfinite(r_s) && r_s > 0.0, "boolean sensing: r_s must be positive");
}

ElfesSensing::ElfesSensing(double r1, double r_max, double lambda, double beta)
    : r1_(r1), r_max_(r_max), lambda_(lambda), beta_(beta) {
    require(std::isfinite(r1) && std::isfinite(r_max), "elfes sensing: radii must be finite");
    require(r1 >= 0.0, "elfes sensing: R_1 must be non-negative");
    require(r1 <= r_max, "elfes sensing: R_1 must not exceed R_max");
    require(std::isfinite(lambda) && lambda >= 0.0, "elfes sensing: lambda must be non-negative");
    require(std::isfinite(beta) && beta > 0.0, "elfes sensing: beta must be positive");
}

ShadowFadingSensing::ShadowFadingSensing(double r_s, double n, double sigma_db)
    : r_s_(r_s), n_(n), sigma_(sigma_db) {
    require(std::isfinite(r_s) && r_s > 0.0, "shadow sensing: r_s must be positive");
    require(std::isfinite(n) && n > 0.0, "shadow sensing: path-loss exponent must be positive");
    require(std::isfinite(sigma_db) && sigma_db >= 0.0, "shadow sensing: sigma must be non-negative");
}

std::string_view model_tag(const SensingModel& model) {
    return std::visit(overloaded{[](const BooleanSensing&) { return std::string_view{"boolean"}; },
                                 [](const ElfesSensing&) { return std::string_view{"elfes"}; },
                                 [](const ShadowFadingSensing&) { return std::string_view{"shadow"}; }},
                      model);
}

double detection_probability(const SensingModel& model, double x) {
    check_distance(x);
    return std::visit(
        overloaded{[x](const BooleanSensing& m) { return x <= m.r_s() ? 1.0 : 0.0; },
                   [x](const ElfesSensing& m) { return elfes_probability(m, x); },
                   [x](const ShadowFadingSensing& m) {
                       return shadowed_probability(x, m.r_s(), m.n(), m.sigma());
                   }},
        model);
}

bool sample_detection(const SensingModel& model, double x, RngStream& stream) {
    check_distance(x);
    return std::visit(
        overloaded{[x](const BooleanSensing& m) { return x <= m.r_s(); },
                   [x, &stream](const ElfesSensing& m) {
                       const double p = elfes_probability(m, x);
                       if (p == 0.0 || p == 1.0) {
                           return p == 1.0;
                       }
                       return stream.uniform() < p;
                   },
                   [x, &stream](const ShadowFadingSensing& m) {
                       return sample_shadowed(x, m.r_s(), m.n(), m.sigma(), stream);
                   }},
        model);
}

double sensing_range_from_budget(const SensingBudget& b) {
    require(std::isfinite(b.reference_distance) && b.reference_distance > 0.0,
            "sensing budget: reference distance must be positive");
    require(std::isfinite(b.path_loss_exponent) && b.path_loss_exponent > 0.0,
            "sensing budget: path-loss exponent must be positive");
    require(std::isfinite(b.sigma_db) && b.sigma_db >= 0.0, "sensing budget: sigma must be non-negative");
    require(std::isfinite(b.event_power_dbm) && std::isfinite(b.sensitivity_dbm) &&
                std::isfinite(b.reference_loss_db),
            "sensing budget: powers and losses must be finite");
    return range_from_link_budget(b.event_power_dbm, b.sensitivity_dbm, b.reference_loss_db,
                                  b.reference_distance, b.path_loss_exponent);
}

double mean_received_power(const SensingBudget& b, double x) {
    check_distance(x);
    return b.event_power_dbm - b.reference_loss_db -
           10.0 * b.path_loss_exponent * std::log10(x / b.reference_distance);
}

ShadowFadingSensing shadow_model_from_budget(const SensingBudget& budget) {
    return ShadowFadingSensing(sensing_range_from_budget(budget), budget.path_loss_exponent,
                               budget.sigma_db);
}

double sensing_reach(const SensingModel& model) {
    return std::visit(overloaded{[](const BooleanSensing& m) { return m.r_s(); },
                                 [](const ElfesSensing& m) { return m.r_max(); },
                                 [](const ShadowFadingSensing& m) {
                                     if (m.sigma() == 0.0) {
                                         return m.r_s();
                                     }
                                     return shadow_truncation_radius(m.r_s(), m.n(), m.sigma());
                                 }},
                      model);
}

}  // namespace wsncov
