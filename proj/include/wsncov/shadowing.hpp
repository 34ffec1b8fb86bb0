#pragma once

#include "wsncov/rng.hpp"

namespace wsncov {

// Log-normal shadowing kernel shared by the sensing and link models. Both
// reduce to Q(10 n log10(distance / nominal_range) / sigma), where the nominal
// range is where the mean received power equals the receiver threshold.

/// Probability that a shadowed link or detection succeeds at `distance`.
/// distance == 0 gives 1; sigma == 0 gives the disk indicator (inclusive).
double shadowed_probability(double distance, double nominal_range, double path_loss_exponent,
                            double sigma_db);

/// One realization: draws X_sigma ~ N(0, sigma^2) dB and reports whether the
/// received power clears the threshold. Draws nothing when the outcome is
/// deterministic (distance 0 or sigma 0).
bool sample_shadowed(double distance, double nominal_range, double path_loss_exponent,
                     double sigma_db, RngStream& stream);

/// Q-function argument beyond which the shadowed tail is dropped when
/// integrating x * P(x) over (0, inf). At least 6; grows with sigma/n so the
/// neglected fraction of the integral stays below ~1e-13.
double shadow_truncation_argument(double path_loss_exponent, double sigma_db);

/// Distance corresponding to shadow_truncation_argument.
double shadow_truncation_radius(double nominal_range, double path_loss_exponent, double sigma_db);

/// Range at which the mean received power equals the threshold:
/// ref_distance * 10^((tx_power - ref_loss - threshold) / (10 n)).
double range_from_link_budget(double tx_power_dbm, double threshold_dbm, double ref_loss_db,
                              double ref_distance, double path_loss_exponent);

}  // namespace wsncov
