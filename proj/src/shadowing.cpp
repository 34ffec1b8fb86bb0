#include "wsncov/shadowing.hpp"

#include "wsncov/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace wsncov {

namespace {

double shadow_argument(double distance, double nominal_range, double n, double sigma) {
    return 10.0 * n * std::log10(distance / nominal_range) / sigma;
}

}  // namespace

double shadowed_probability(double distance, double nominal_range, double path_loss_exponent,
                            double sigma_db) {
    if (distance == 0.0) {
        return 1.0;
    }
    if (sigma_db == 0.0) {
        return distance <= nominal_range ? 1.0 : 0.0;
    }
    return q_function(shadow_argument(distance, nominal_range, path_loss_exponent, sigma_db));
}

bool sample_shadowed(double distance, double nominal_range, double path_loss_exponent,
                     double sigma_db, RngStream& stream) {
    if (distance == 0.0) {
        return true;
    }
    if (sigma_db == 0.0) {
        return distance <= nominal_range;
    }
    // P(Z <= -t) = Q(t).
    const double deviate = stream.normal();
    return deviate <= -shadow_argument(distance, nominal_range, path_loss_exponent, sigma_db);
}

double shadow_truncation_argument(double path_loss_exponent, double sigma_db) {
    // In u = ln(x / r) the integrand Q(a u) e^{2u} has a Gaussian envelope
    // centred at 2/a^2 with width 1/a, a = 10 n / (sigma ln 10); the dropped
    // tail relative to the whole is at most Q(z - 2/a).
    const double inv_a = sigma_db * std::numbers::ln10 / (10.0 * path_loss_exponent);
    return std::max(6.0, 2.0 * inv_a + 7.5);
}

double shadow_truncation_radius(double nominal_range, double path_loss_exponent, double sigma_db) {
    const double z = shadow_truncation_argument(path_loss_exponent, sigma_db);
    return nominal_range * std::pow(10.0, z * sigma_db / (10.0 * path_loss_exponent));
}

double range_from_link_budget(double tx_power_dbm, double threshold_dbm, double ref_loss_db,
                              double ref_distance, double path_loss_exponent) {
    const double margin_db = tx_power_dbm - ref_loss_db - threshold_dbm;
    return ref_distance * std::pow(10.0, margin_db / (10.0 * path_loss_exponent));
}

}  // namespace wsncov
