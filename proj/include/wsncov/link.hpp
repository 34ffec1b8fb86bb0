#pragma once

#include "wsncov/rng.hpp"

namespace wsncov {

/// Link budget between two nodes transmitting at equal power.
struct RadioParams {
    double tx_power_dbm;        // P_t
    double sensitivity_dbm;     // P_rth
    double reference_loss_db;   // mean path loss at d_0
    double reference_distance;  // d_0, meters
    double path_loss_exponent;  // n
    double sigma_db = 0.0;
};

/// Shadowed link around the non-shadowed communication range R_0.
class LinkModel {
public:
    LinkModel(double r0, double n, double sigma_db);
    double r0() const noexcept { return r0_; }
    double n() const noexcept { return n_; }
    double sigma() const noexcept { return sigma_; }

    friend bool operator==(const LinkModel&, const LinkModel&) = default;

private:
    double r0_;
    double n_;
    double sigma_;
};

LinkModel range_from_budget(const RadioParams& params);

/// Probability that a link exists at separation d. d == 0 gives 1; with
/// sigma == 0 this is the radio disk, d <= R_0 inclusive.
double link_probability(const LinkModel& model, double d);

/// One shadowing realization of the link at separation d.
bool sample_link(const LinkModel& model, double d, RngStream& stream);

}  // namespace wsncov
