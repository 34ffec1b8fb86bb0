#include "wsncov/coverage.hpp"

#include "wsncov/errors.hpp"
#include "wsncov/numerics.hpp"
#include "wsncov/shadowing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace wsncov {

namespace {

constexpr double kInternalTolerance = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// (1 - e^{-t}(1 + t)) / t^2, free of cancellation for small t.
double elfes_ramp_kernel(double t) {
    if (t < 1.0) {
        double sum = 0.0;
        double power = 1.0;      // t^{m-2}
        double factorial = 2.0;  // m!
        for (int m = 2; m < 30; ++m) {
            const double term = (m - 1) * power / factorial;
            sum += (m % 2 == 0) ? term : -term;
            power *= t;
            factorial *= (m + 1);
        }
        return sum;
    }
    return (1.0 - std::exp(-t) * (1.0 + t)) / (t * t);
}

// (1 - e^{-t}) / t.
double elfes_plateau_kernel(double t) {
    if (t == 0.0) {
        return 1.0;
    }
    return -std::expm1(-t) / t;
}

void check_pdet_bound(double p, const char* what) {
    if (!(p <= 1.0)) {
        throw DomainError(std::string(what) +
                          ": single-node detection exceeds the region (boundary-free model invalid)");
    }
}

void check_elfes_region(const ElfesSensing& model, const Region& region) {
    if (model.r_max() > region.radius()) {
        throw DomainError("elfes coverage: R_max exceeds the region radius");
    }
}

}  // namespace

Region::Region(double radius) : radius_(radius), area_(std::numbers::pi * radius * radius) {
    if (!std::isfinite(radius) || radius <= 0.0) {
        throw DomainError("region radius must be positive");
    }
}

std::string_view to_string(CoverageMethod method) {
    switch (method) {
        case CoverageMethod::exact: return "exact";
        case CoverageMethod::exponential_approx: return "exponential-approx";
        case CoverageMethod::quadrature: return "quadrature";
        case CoverageMethod::closed_form: return "closed-form";
        case CoverageMethod::monte_carlo: return "monte-carlo";
    }
    return "unknown";
}

std::string_view to_string(FractionMode mode) {
    return to_string(to_method(mode));
}

std::string_view to_string(ShadowMode mode) {
    return mode == ShadowMode::expected ? "expected" : "confidence";
}

CoverageMethod to_method(FractionMode mode) {
    return mode == FractionMode::exact ? CoverageMethod::exact : CoverageMethod::exponential_approx;
}

double single_node_detection_boolean(double r_s, const Region& region) {
    if (!std::isfinite(r_s) || r_s < 0.0) {
        throw DomainError("sensing radius must be non-negative");
    }
    if (r_s > region.radius()) {
        throw DomainError("sensing radius exceeds the region radius");
    }
    return std::numbers::pi * r_s * r_s / region.area();
}

CoverageResult coverage_from_pdet(double p_det, std::size_t nodes, FractionMode mode) {
    if (!(p_det >= 0.0 && p_det <= 1.0)) {
        throw DomainError("detection probability must lie in [0, 1]");
    }
    CoverageResult result;
    result.method = to_method(mode);
    result.p_det = p_det;
    if (nodes == 0) {
        result.value = 0.0;
        return result;
    }
    const double n = static_cast<double>(nodes);
    if (mode == FractionMode::exact) {
        result.value = p_det == 1.0 ? 1.0 : -std::expm1(n * std::log1p(-p_det));
    } else {
        result.value = -std::expm1(-n * p_det);
    }
    return result;
}

double elfes_pdet_approx(const ElfesSensing& model, const Region& region) {
    if (model.r1() != 0.0 || model.beta() != 1.0) {
        throw DomainError("elfes approximation requires R_1 = 0 and beta = 1");
    }
    check_elfes_region(model, region);
    const double r_max = model.r_max();
    // (2 pi / (A lambda^2)) [1 - e^{-lambda R_max}(1 + lambda R_max)]
    return 2.0 * std::numbers::pi / region.area() * r_max * r_max *
           elfes_ramp_kernel(model.lambda() * r_max);
}

CoverageResult elfes_coverage_approx(const ElfesSensing& model, std::size_t nodes,
                                     const Region& region) {
    CoverageResult result =
        coverage_from_pdet(elfes_pdet_approx(model, region), nodes, FractionMode::exponential_approx);
    result.pdet_method = CoverageMethod::closed_form;
    return result;
}

double elfes_pdet_exact(const ElfesSensing& model, const Region& region) {
    if (model.beta() != 1.0) {
        throw DomainError("elfes closed form requires beta = 1");
    }
    check_elfes_region(model, region);
    const double r1 = model.r1();
    const double span = model.r_max() - model.r1();
    const double t = model.lambda() * span;
    // pi R_1^2/A + (2 pi/(A lambda^2)) [(1 + lambda R_1) - e^{-lambda(R_max - R_1)}(1 + lambda R_max)],
    // regrouped as span^2 * ramp(t) + R_1 * span * plateau(t).
    const double tail = span * span * elfes_ramp_kernel(t) + r1 * span * elfes_plateau_kernel(t);
    return std::numbers::pi * (r1 * r1 + 2.0 * tail) / region.area();
}

double elfes_pdet_quadrature(const ElfesSensing& model, const Region& region) {
    check_elfes_region(model, region);
    const double disk = std::numbers::pi * model.r1() * model.r1() / region.area();
    if (model.r1() == model.r_max()) {
        return disk;
    }
    const SensingModel sensing = model;
    const double annulus = integrate(
        [&](double x) { return detection_probability(sensing, x) * 2.0 * std::numbers::pi * x; },
        QuadratureSpec{model.r1(), model.r_max(), kInternalTolerance, 4000});
    return disk + annulus / region.area();
}

double shadow_pdet_quadrature(const ShadowFadingSensing& model, const Region& region) {
    if (model.sigma() <= 0.0) {
        throw DomainError("shadow quadrature requires sigma > 0");
    }
    const SensingModel sensing = model;
    const auto integrand = [&](double x) { return detection_probability(sensing, x) * x; };
    const double r_s = model.r_s();
    const double cutoff = shadow_truncation_radius(r_s, model.n(), model.sigma());
    const double z = shadow_truncation_argument(model.n(), model.sigma());
    const auto at = [&](double u) { return r_s * std::pow(10.0, u * model.sigma() / (10.0 * model.n())); };

    // The drop from 1 to 0 happens within a few standardized units of r_s,
    // which can be far narrower than r_s for small sigma; pin breakpoints
    // there so no panel can step over it. Doubling from r_s keeps pieces
    // resolved when the cutoff lies many decades out.
    std::vector<double> breaks{0.0, at(-z), r_s, cutoff};
    for (double u = 0.25; u < z; u *= 2.0) {
        breaks.push_back(at(-u));
        breaks.push_back(at(u));
    }
    for (double x = 2.0 * r_s; x < cutoff; x *= 2.0) {
        breaks.push_back(x);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        sum += integrate(integrand, QuadratureSpec{breaks[i], breaks[i + 1], kInternalTolerance, 4000});
    }
    const double p = 2.0 * std::numbers::pi * sum / region.area();
    check_pdet_bound(p, "shadow quadrature");
    return p;
}

double shadow_pdet_closed_form(const ShadowFadingSensing& model, const Region& region) {
    const double spread = model.sigma() * std::numbers::ln10 / (10.0 * model.n());
    const double p = std::numbers::pi * model.r_s() * model.r_s() / region.area() *
                     std::exp(2.0 * spread * spread);
    check_pdet_bound(p, "shadow closed form");
    return p;
}

double shadow_confidence_radius(const ShadowFadingSensing& model, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw DomainError("confidence level epsilon must lie in (0, 1)");
    }
    if (model.sigma() == 0.0) {
        return model.r_s();
    }
    return model.r_s() *
           std::pow(10.0, model.sigma() * q_inverse(epsilon) / (10.0 * model.n()));
}

CoverageResult coverage_for_model(const SensingModel& model, const DeploymentConfig& config,
                                  const CoverageOptions& options) {
    const bool is_shadow = std::holds_alternative<ShadowFadingSensing>(model);
    if (options.shadow == ShadowMode::confidence && !is_shadow) {
        throw ConfigError("confidence coverage applies only to the shadow model");
    }
    if (options.epsilon && options.shadow != ShadowMode::confidence) {
        throw ConfigError("epsilon is only valid in shadow confidence mode");
    }

    const Region& region = config.region;
    double p_det = 0.0;
    CoverageMethod pdet_method = CoverageMethod::closed_form;
    std::map<std::string, double> detail;

    std::visit(
        overloaded{
            [&](const BooleanSensing& m) {
                p_det = single_node_detection_boolean(m.r_s(), region);
                detail["r_s"] = m.r_s();
            },
            [&](const ElfesSensing& m) {
                if (m.beta() != 1.0) {
                    p_det = elfes_pdet_quadrature(m, region);
                    pdet_method = CoverageMethod::quadrature;
                } else if (m.r1() == 0.0) {
                    p_det = elfes_pdet_approx(m, region);
                } else {
                    p_det = elfes_pdet_exact(m, region);
                }
            },
            [&](const ShadowFadingSensing& m) {
                if (options.shadow == ShadowMode::confidence) {
                    const double epsilon = options.epsilon.value_or(kDefaultConfidence);
                    const double r_eff = shadow_confidence_radius(m, epsilon);
                    p_det = single_node_detection_boolean(r_eff, region);
                    detail["epsilon"] = epsilon;
                    detail["r_eff"] = r_eff;
                } else if (m.sigma() == 0.0) {
                    p_det = single_node_detection_boolean(m.r_s(), region);
                } else if (options.shadow_closed_form) {
                    p_det = shadow_pdet_closed_form(m, region);
                } else {
                    p_det = shadow_pdet_quadrature(m, region);
                    pdet_method = CoverageMethod::quadrature;
                    detail["truncation_radius"] = shadow_truncation_radius(m.r_s(), m.n(), m.sigma());
                }
            }},
        model);

    CoverageResult result = coverage_from_pdet(p_det, config.nodes, options.mode);
    result.pdet_method = pdet_method;
    result.detail = std::move(detail);
    return result;
}

}  // namespace wsncov
