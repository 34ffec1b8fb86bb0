#include "wsncov/link.hpp"

#include "wsncov/errors.hpp"
#include "wsncov/shadowing.hpp"

#include <cmath>

namespace wsncov {

namespace {

void check_separation(double d) {
    if (!std::isfinite(d) || d < 0.0) {
        throw DomainError("link distance must be finite and non-negative");
    }
}

}  // namespace

LinkModel::LinkModel(double r0, double n, double sigma_db) : r0_(r0), n_(n), sigma_(sigma_db) {
    if (!std::isfinite(r0) || r0 <= 0.0) {
        throw DomainError("link model: R_0 must be positive");
    }
    if (!std::isfinite(n) || n <= 0.0) {
        throw DomainError("link model: path-loss exponent must be positive");
    }
    if (!std::isfinite(sigma_db) || sigma_db < 0.0) {
        throw DomainError("link model: sigma must be non-negative");
    }
}

LinkModel range_from_budget(const RadioParams& p) {
    if (!std::isfinite(p.reference_distance) || p.reference_distance <= 0.0) {
        throw DomainError("radio params: reference distance must be positive");
    }
    if (!std::isfinite(p.path_loss_exponent) || p.path_loss_exponent <= 0.0) {
        throw DomainError("radio params: path-loss exponent must be positive");
    }
    if (!std::isfinite(p.tx_power_dbm) || !std::isfinite(p.sensitivity_dbm) ||
        !std::isfinite(p.reference_loss_db)) {
        throw DomainError("radio params: powers and losses must be finite");
    }
    const double r0 = range_from_link_budget(p.tx_power_dbm, p.sensitivity_dbm,
                                             p.reference_loss_db, p.reference_distance,
                                             p.path_loss_exponent);
    return LinkModel(r0, p.path_loss_exponent, p.sigma_db);
}

double link_probability(const LinkModel& model, double d) {
    check_separation(d);
    return shadowed_probability(d, model.r0(), model.n(), model.sigma());
}

bool sample_link(const LinkModel& model, double d, RngStream& stream) {
    check_separation(d);
    return sample_shadowed(d, model.r0(), model.n(), model.sigma(), stream);
}

}  // namespace wsncov
