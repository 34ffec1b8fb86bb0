#pragma once

#include "wsncov/rng.hpp"

#include <string_view>
#include <variant>

namespace wsncov {

/// Deterministic disk: an event within r_s (inclusive) is detected.
class BooleanSensing {
public:
    explicit BooleanSensing(double r_s);
    double r_s() const noexcept { return r_s_; }

    friend bool operator==(const BooleanSensing&, const BooleanSensing&) = default;

private:
    double r_s_;
};

/// Elfes model: certain detection up to R_1, exp(-lambda (x - R_1)^beta) out
/// to R_max, nothing at or beyond R_max.
class ElfesSensing {
public:
    ElfesSensing(double r1, double r_max, double lambda, double beta = 1.0);
    double r1() const noexcept { return r1_; }
    double r_max() const noexcept { return r_max_; }
    double lambda() const noexcept { return lambda_; }
    double beta() const noexcept { return beta_; }

    friend bool operator==(const ElfesSensing&, const ElfesSensing&) = default;

private:
    double r1_;
    double r_max_;
    double lambda_;
    double beta_;
};

/// Log-normal shadowed detection around the non-shadowed range r_s.
class ShadowFadingSensing {
public:
    ShadowFadingSensing(double r_s, double n, double sigma_db);
    double r_s() const noexcept { return r_s_; }
    double n() const noexcept { return n_; }
    double sigma() const noexcept { return sigma_; }

    friend bool operator==(const ShadowFadingSensing&, const ShadowFadingSensing&) = default;

private:
    double r_s_;
    double n_;
    double sigma_;
};

using SensingModel = std::variant<BooleanSensing, ElfesSensing, ShadowFadingSensing>;

/// Raw radio inputs for the sensing link budget (powers in dBm, losses in dB).
struct SensingBudget {
    double event_power_dbm;        // P_s
    double sensitivity_dbm;        // P_s,th
    double reference_loss_db;      // mean path loss at the reference distance
    double reference_distance;     // x_0, meters
    double path_loss_exponent;     // n
    double sigma_db = 0.0;
};

/// Tag used in the JSON schema: "boolean", "elfes" or "shadow".
std::string_view model_tag(const SensingModel& model);

/// Point detection probability p(x) at event distance x >= 0.
double detection_probability(const SensingModel& model, double x);

/// One detection realization at distance x.
bool sample_detection(const SensingModel& model, double x, RngStream& stream);

/// Non-shadowed sensing range solving the budget for the sensitivity.
double sensing_range_from_budget(const SensingBudget& budget);

/// Mean received event power at distance x (dBm), without the shadowing term.
double mean_received_power(const SensingBudget& budget, double x);

/// Shadow sensing model implied by a budget.
ShadowFadingSensing shadow_model_from_budget(const SensingBudget& budget);

/// Largest distance at which detection has non-negligible probability:
/// r_s, R_max, or the shadow truncation radius.
double sensing_reach(const SensingModel& model);

}  // namespace wsncov
