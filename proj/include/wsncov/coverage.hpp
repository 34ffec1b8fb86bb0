#pragma once

#include "wsncov/sensing.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace wsncov {

/// Disk-shaped area of interest centred at the origin.
class Region {
public:
    explicit Region(double radius);
    double radius() const noexcept { return radius_; }
    double area() const noexcept { return area_; }

    friend bool operator==(const Region&, const Region&) = default;

private:
    double radius_;
    double area_;
};

struct DeploymentConfig {
    Region region;
    std::size_t nodes = 0;
    std::uint64_t seed = 0;

    /// Node density rho = N / A.
    double density() const { return static_cast<double>(nodes) / region.area(); }
};

enum class CoverageMethod { exact, exponential_approx, quadrature, closed_form, monte_carlo };

/// How a single-node detection probability turns into a coverage fraction:
/// exact 1 - (1 - p)^N or the approximation 1 - e^{-Np}.
enum class FractionMode { exact, exponential_approx };

/// Shadow coverage reading: expected detection (integrate p(x) over the plane)
/// or confidence threshold (covered only where p(x) >= epsilon).
enum class ShadowMode { expected, confidence };

std::string_view to_string(CoverageMethod method);
std::string_view to_string(FractionMode mode);
std::string_view to_string(ShadowMode mode);
CoverageMethod to_method(FractionMode mode);

struct CoverageResult {
    double value = 0.0;
    CoverageMethod method = CoverageMethod::exact;
    /// Route that produced the single-node detection probability.
    CoverageMethod pdet_method = CoverageMethod::closed_form;
    double half_width = 0.0;
    double p_det = 0.0;
    /// Named intermediate quantities (effective radius, truncation, ...).
    std::map<std::string, double> detail;
};

inline constexpr double kDefaultConfidence = 0.9;

struct CoverageOptions {
    FractionMode mode = FractionMode::exact;
    ShadowMode shadow = ShadowMode::expected;
    /// Only meaningful with ShadowMode::confidence (defaults to 0.9 there).
    std::optional<double> epsilon;
    /// Use the log-normal closed form instead of quadrature for expected
    /// shadow detection.
    bool shadow_closed_form = false;
};

/// pi r_s^2 / A. Requires r_s <= region radius.
double single_node_detection_boolean(double r_s, const Region& region);

CoverageResult coverage_from_pdet(double p_det, std::size_t nodes, FractionMode mode);

/// Closed form for Elfes with R_1 = 0, beta = 1.
double elfes_pdet_approx(const ElfesSensing& model, const Region& region);

/// 1 - exp(-(2 pi N / (A lambda^2)) {1 - (lambda R_max + 1) e^{-lambda R_max}}).
CoverageResult elfes_coverage_approx(const ElfesSensing& model, std::size_t nodes,
                                     const Region& region);

/// Closed form for Elfes with beta = 1 and arbitrary R_1.
double elfes_pdet_exact(const ElfesSensing& model, const Region& region);

/// Quadrature of pi R_1^2/A + (1/A) int_{R_1}^{R_max} p(x) 2 pi x dx; any beta.
double elfes_pdet_quadrature(const ElfesSensing& model, const Region& region);

/// (2 pi / A) int_0^inf Q(10 n log10(x / r_s) / sigma) x dx by adaptive
/// quadrature, truncated at shadow_truncation_radius.
double shadow_pdet_quadrature(const ShadowFadingSensing& model, const Region& region);

/// (pi r_s^2 / A) exp(2 (sigma ln 10 / (10 n))^2).
double shadow_pdet_closed_form(const ShadowFadingSensing& model, const Region& region);

/// Largest distance at which detection probability is still >= epsilon.
double shadow_confidence_radius(const ShadowFadingSensing& model, double epsilon);

/// Per-model dispatcher composing single-node detection with the fraction mode.
CoverageResult coverage_for_model(const SensingModel& model, const DeploymentConfig& config,
                                  const CoverageOptions& options = {});

}  // namespace wsncov
