#include "wsncov/curves.hpp"

#include "wsncov/errors.hpp"
#include "wsncov/serialization.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

namespace wsncov {

namespace {

std::string compact(double v) {
    std::array<char, 32> buffer{};
    const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), v);
    return std::string(buffer.data(), end);
}

const SensingModel& sensing_of(const CurveSpec& spec) {
    if (const auto* m = std::get_if<SensingModel>(&spec.model)) {
        return *m;
    }
    throw ConfigError("curve \"" + spec.label + "\": sweep needs a sensing model");
}

double coverage_at(const SensingModel& model, const CurveSpec& spec, std::size_t nodes) {
    const DeploymentConfig config{spec.region, nodes, 0};
    return coverage_for_model(model, config, spec.options).value;
}

}  // namespace

std::string_view to_string(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::nodes: return "N";
        case SweepVariable::d_over_r0: return "d_over_R0";
        case SweepVariable::x: return "x";
        case SweepVariable::sigma: return "sigma";
        case SweepVariable::lambda: return "lambda";
    }
    return "unknown";
}

std::vector<double> SweepRange::values() const {
    if (!(start < stop) || steps < 2) {
        throw ConfigError("sweep range needs start < stop and at least two steps");
    }
    const double intervals = static_cast<double>(steps - 1);
    std::vector<double> grid;
    grid.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        // start * (k - 1) + width * i over k - 1 reproduces decimal grids
        // (e.g. exactly 1.0 on the 0.01-spaced link grid).
        grid.push_back((start * intervals + (stop - start) * static_cast<double>(i)) / intervals);
    }
    grid.back() = stop;
    return grid;
}

Curve evaluate_curve(const CurveSpec& spec) {
    Curve curve{spec.label, {}};
    for (const double v : spec.range.values()) {
        double y = 0.0;
        switch (spec.variable) {
            case SweepVariable::nodes: {
                if (v < 0.0) {
                    throw ConfigError("node counts must be non-negative");
                }
                y = coverage_at(sensing_of(spec), spec, static_cast<std::size_t>(std::llround(v)));
                break;
            }
            case SweepVariable::x:
                y = detection_probability(sensing_of(spec), v);
                break;
            case SweepVariable::d_over_r0: {
                const auto* link = std::get_if<LinkModel>(&spec.model);
                if (link == nullptr) {
                    throw ConfigError("curve \"" + spec.label + "\": d_over_R0 sweep needs a link model");
                }
                y = link_probability(*link, v * link->r0());
                break;
            }
            case SweepVariable::sigma: {
                if (const auto* link = std::get_if<LinkModel>(&spec.model)) {
                    const LinkModel varied(link->r0(), link->n(), v);
                    y = link_probability(varied, spec.d_over_r0 * link->r0());
                } else if (const auto* shadow = std::get_if<ShadowFadingSensing>(&sensing_of(spec))) {
                    y = coverage_at(ShadowFadingSensing(shadow->r_s(), shadow->n(), v), spec, spec.nodes);
                } else {
                    throw ConfigError("curve \"" + spec.label + "\": sigma sweep needs a shadowed model");
                }
                break;
            }
            case SweepVariable::lambda: {
                const auto* elfes = std::get_if<ElfesSensing>(&sensing_of(spec));
                if (elfes == nullptr) {
                    throw ConfigError("curve \"" + spec.label + "\": lambda sweep needs an Elfes model");
                }
                y = coverage_at(ElfesSensing(elfes->r1(), elfes->r_max(), v, elfes->beta()), spec, spec.nodes);
                break;
            }
        }
        curve.points.emplace_back(v, y);
    }
    return curve;
}

std::vector<CurveSpec> figure5_specs(FractionMode mode, double epsilon, double shadow_n) {
    const SweepRange grid{100.0, 10000.0, 100};
    const Region region(kFigureAreaRadius);
    const double r = kFigureSensingRadius;

    auto make = [&](std::string label, SensingModel model, CoverageOptions options) {
        options.mode = mode;
        CurveSpec spec;
        spec.label = std::move(label);
        spec.family = CurveFamily::fig5;
        spec.variable = SweepVariable::nodes;
        spec.range = grid;
        spec.model = std::move(model);
        spec.region = region;
        spec.options = options;
        return spec;
    };
    const CoverageOptions plain{};
    CoverageOptions confidence{};
    confidence.shadow = ShadowMode::confidence;
    confidence.epsilon = epsilon;
    const std::string eps_tag = "_eps" + compact(epsilon);
    const std::string n_tag = "_n" + compact(shadow_n);

    return {
        make("a_boolean", BooleanSensing(r), plain),
        make("b_shadow_sigma2" + n_tag + "_expected", ShadowFadingSensing(r, shadow_n, 2.0), plain),
        make("b_shadow_sigma2" + n_tag + "_confidence" + eps_tag, ShadowFadingSensing(r, shadow_n, 2.0),
             confidence),
        make("c_elfes_lambda0.01", ElfesSensing(0.0, r, 0.01), plain),
        make("d_shadow_sigma8" + n_tag + "_expected", ShadowFadingSensing(r, shadow_n, 8.0), plain),
        make("d_shadow_sigma8" + n_tag + "_confidence" + eps_tag, ShadowFadingSensing(r, shadow_n, 8.0),
             confidence),
        make("e_elfes_exact_r1_10_lambda0.03", ElfesSensing(10.0, r, 0.03), plain),
        make("f_elfes_lambda0.03", ElfesSensing(0.0, r, 0.03), plain),
    };
}

std::vector<CurveSpec> figure6_specs() {
    const SweepRange grid{0.05, 3.0, 296};
    auto make = [&](std::string label, double n, double sigma) {
        CurveSpec spec;
        spec.label = std::move(label);
        spec.family = CurveFamily::fig6;
        spec.variable = SweepVariable::d_over_r0;
        spec.range = grid;
        spec.model = LinkModel(1.0, n, sigma);
        return spec;
    };
    return {
        make("a_sigma0", 2.0, 0.0),
        make("b_n2_sigma4", 2.0, 4.0),
        make("c_n2_sigma8", 2.0, 8.0),
        make("d_n3_sigma4", 3.0, 4.0),
        make("e_n3_sigma8", 3.0, 8.0),
    };
}

void write_curves_csv(std::ostream& out, const std::string& x_name, const std::string& y_name,
                      const std::vector<Curve>& curves, bool integer_x) {
    out << x_name << ",curve," << y_name << '\n';
    for (const auto& curve : curves) {
        for (const auto& [x, y] : curve.points) {
            if (integer_x) {
                out << std::llround(x);
            } else {
                out << format_decimal(x);
            }
            out << ',' << curve.label << ',' << format_decimal(y) << '\n';
        }
    }
}

void write_curves_json(std::ostream& out, const std::string& family, const std::string& x_name,
                       const std::string& y_name, const std::vector<CurveSpec>& specs,
                       const std::vector<Curve>& curves) {
    Json doc{{"family", family}, {"x", x_name}, {"y", y_name}, {"curves", Json::array()}};
    for (std::size_t i = 0; i < curves.size(); ++i) {
        Json entry{{"label", curves[i].label}};
        std::visit([&](const auto& m) { entry["model"] = to_json(m); }, specs[i].model);
        if (std::holds_alternative<SensingModel>(specs[i].model)) {
            entry["mode"] = std::string(to_string(specs[i].options.mode));
            if (std::holds_alternative<ShadowFadingSensing>(std::get<SensingModel>(specs[i].model))) {
                entry["shadow_mode"] = std::string(to_string(specs[i].options.shadow));
            }
        }
        Json points = Json::array();
        for (const auto& [x, y] : curves[i].points) {
            points.push_back(Json::array({x, y}));
        }
        entry["points"] = std::move(points);
        doc["curves"].push_back(std::move(entry));
    }
    out << doc.dump(2) << '\n';
}

}  // namespace wsncov
