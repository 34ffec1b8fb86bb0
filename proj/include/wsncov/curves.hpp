#pragma once

#include "wsncov/coverage.hpp"
#include "wsncov/link.hpp"
#include "wsncov/sensing.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace wsncov {

enum class CurveFamily { fig5, fig6, custom };
enum class SweepVariable { nodes, d_over_r0, x, sigma, lambda };
enum class OutputFormat { csv, json };

std::string_view to_string(SweepVariable variable);

/// Evenly spaced grid with both end points included.
struct SweepRange {
    double start;
    double stop;
    std::size_t steps;

    std::vector<double> values() const;
};

struct CurveSpec {
    std::string label;
    CurveFamily family = CurveFamily::custom;
    SweepVariable variable = SweepVariable::nodes;
    SweepRange range{0.0, 1.0, 2};
    std::variant<SensingModel, LinkModel> model = SensingModel{BooleanSensing(50.0)};
    OutputFormat format = OutputFormat::csv;

    // Context held fixed along the sweep.
    Region region{1000.0};
    std::size_t nodes = 0;
    CoverageOptions options{};
    /// Link distance (as a multiple of R_0) for sigma sweeps of a link model.
    double d_over_r0 = 1.0;
};

struct Curve {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// nodes: coverage vs N. x: detection probability vs event distance.
/// d_over_r0: link probability vs normalized distance. sigma: link
/// probability (link model) or coverage (shadow model) vs sigma.
/// lambda: Elfes coverage vs lambda. Other pairings throw ConfigError.
Curve evaluate_curve(const CurveSpec& spec);

inline constexpr double kFigureAreaRadius = 1000.0;
inline constexpr double kFigureSensingRadius = 50.0;

/// Coverage-vs-N families: Boolean, Elfes (lambda 0.01, 0.03, and the
/// R_1 = 10 m variant) and shadow sigma = 2, 8 dB in both shadow modes.
std::vector<CurveSpec> figure5_specs(FractionMode mode = FractionMode::exact,
                                     double epsilon = kDefaultConfidence, double shadow_n = 2.0);

/// Link probability vs d/R_0 on [0.05, 3] for sigma = 0 and
/// (n, sigma) in {2, 3} x {4, 8}.
std::vector<CurveSpec> figure6_specs();

/// Long-format CSV: header "<x_name>,curve,<y_name>", one row per point.
void write_curves_csv(std::ostream& out, const std::string& x_name, const std::string& y_name,
                      const std::vector<Curve>& curves, bool integer_x = false);

void write_curves_json(std::ostream& out, const std::string& family, const std::string& x_name,
                       const std::string& y_name, const std::vector<CurveSpec>& specs,
                       const std::vector<Curve>& curves);

}  // namespace wsncov
