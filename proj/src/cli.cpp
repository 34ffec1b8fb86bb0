#include "wsncov/cli.hpp"

#include "wsncov/coverage.hpp"
#include "wsncov/curves.hpp"
#include "wsncov/errors.hpp"
#include "wsncov/link.hpp"
#include "wsncov/sensing.hpp"
#include "wsncov/serialization.hpp"
#include "wsncov/simulator.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace wsncov::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::map<std::string, FractionMode> kFractionModes{
    {"exact", FractionMode::exact},
    {"approx", FractionMode::exponential_approx},
    {"exponential-approx", FractionMode::exponential_approx}};

const std::map<std::string, ShadowMode> kShadowModes{{"expected", ShadowMode::expected},
                                                     {"confidence", ShadowMode::confidence}};

const std::map<std::string, OutputFormat> kFormats{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}};

bool given(const CLI::Option* opt) { return opt != nullptr && opt->count() > 0; }

// Flags shared by every command that takes a sensing model.
struct SensingArgs {
    std::string model = "boolean";
    double rs = kFigureSensingRadius;
    double r1 = 0.0;
    double rmax = kFigureSensingRadius;
    double lambda = 0.0;
    double beta = 1.0;
    double n = 2.0;
    double sigma = 0.0;
    double tx_power = 0.0;
    double threshold = 0.0;
    double ref_loss = 0.0;
    double ref_distance = 1.0;

    std::map<std::string, CLI::Option*> opts;

    void attach(CLI::App& app) {
        opts["model"] = app.add_option("--model", model, "Sensing model")
                            ->check(CLI::IsMember({"boolean", "elfes", "shadow"}))
                            ->capture_default_str();
        opts["rs"] = app.add_option("--rs", rs, "Sensing radius r_s (m)")->capture_default_str();
        opts["r1"] = app.add_option("--r1", r1, "Elfes certain-detection radius R_1 (m)")->capture_default_str();
        opts["rmax"] = app.add_option("--rmax", rmax, "Elfes maximum range R_max (m)")->capture_default_str();
        opts["lambda"] = app.add_option("--lambda", lambda, "Elfes decay rate (1/m)");
        opts["beta"] = app.add_option("--beta", beta, "Elfes exponent")->capture_default_str();
        opts["n"] = app.add_option("--n", n, "Path-loss exponent")->capture_default_str();
        opts["sigma"] = app.add_option("--sigma", sigma, "Shadowing deviation (dB)")->capture_default_str();
        attach_budget(app, opts, tx_power, threshold, ref_loss, ref_distance);
    }

    static void attach_budget(CLI::App& app, std::map<std::string, CLI::Option*>& opts, double& tx,
                              double& th, double& loss, double& dist) {
        opts["tx-power"] = app.add_option("--tx-power", tx, "Emitted/transmit power (dBm)");
        opts["threshold"] = app.add_option("--threshold", th, "Receiver sensitivity (dBm)");
        opts["ref-loss"] = app.add_option("--ref-loss", loss, "Mean path loss at the reference distance (dB)");
        opts["ref-distance"] =
            app.add_option("--ref-distance", dist, "Reference distance (m)")->capture_default_str();
    }

    bool budget_given() const {
        return given(opts.at("tx-power")) || given(opts.at("threshold")) || given(opts.at("ref-loss"));
    }

    void forbid(std::initializer_list<const char*> names) const {
        for (const char* name : names) {
            if (given(opts.at(name))) {
                throw UsageError(std::string("--") + name + " is not valid with --model " + model);
            }
        }
    }

    double resolved_rs() const {
        if (!budget_given()) {
            return rs;
        }
        if (given(opts.at("rs"))) {
            throw UsageError("--rs conflicts with the link-budget flags (--tx-power/--threshold/--ref-loss)");
        }
        for (const char* name : {"tx-power", "threshold", "ref-loss"}) {
            if (!given(opts.at(name))) {
                throw UsageError(std::string("--") + name + " is required when deriving r_s from a budget");
            }
        }
        try {
            return sensing_range_from_budget(SensingBudget{tx_power, threshold, ref_loss, ref_distance, n, sigma});
        } catch (const DomainError& e) {
            throw UsageError(std::string("link budget flags: ") + e.what());
        }
    }

    SensingModel resolve() const {
        try {
            if (model == "boolean") {
                forbid({"r1", "rmax", "lambda", "beta", "sigma"});
                if (given(opts.at("n")) && !budget_given()) {
                    throw UsageError("--n is not valid with --model boolean unless deriving r_s from a budget");
                }
                return BooleanSensing(resolved_rs());
            }
            if (model == "elfes") {
                forbid({"rs", "n", "sigma", "tx-power", "threshold", "ref-loss", "ref-distance"});
                if (!given(opts.at("lambda"))) {
                    throw UsageError("--lambda is required with --model elfes");
                }
                if (r1 > rmax) {
                    throw UsageError("--r1 must not exceed --rmax for --model elfes");
                }
                return ElfesSensing(r1, rmax, lambda, beta);
            }
            forbid({"r1", "rmax", "lambda", "beta"});
            if (!given(opts.at("sigma"))) {
                throw UsageError("--sigma is required with --model shadow");
            }
            return ShadowFadingSensing(resolved_rs(), n, sigma);
        } catch (const DomainError& e) {
            throw UsageError("invalid --model " + model + " parameters: " + e.what());
        }
    }
};

struct LinkArgs {
    double r0 = 0.0;
    double n = 2.0;
    double sigma = 0.0;
    double tx_power = 0.0;
    double threshold = 0.0;
    double ref_loss = 0.0;
    double ref_distance = 1.0;
    std::map<std::string, CLI::Option*> opts;

    void attach(CLI::App& app, bool with_shadow_flags = true) {
        opts["r0"] = app.add_option("--r0", r0, "Non-shadowed communication range R_0 (m)");
        if (with_shadow_flags) {
            opts["n"] = app.add_option("--n", n, "Path-loss exponent")->capture_default_str();
            opts["sigma"] = app.add_option("--sigma", sigma, "Shadowing deviation (dB)")->capture_default_str();
            SensingArgs::attach_budget(app, opts, tx_power, threshold, ref_loss, ref_distance);
        }
    }

    LinkModel resolve() const {
        const bool budget =
            given(opts.at("tx-power")) || given(opts.at("threshold")) || given(opts.at("ref-loss"));
        try {
            if (budget) {
                if (given(opts.at("r0"))) {
                    throw UsageError("--r0 conflicts with the link-budget flags (--tx-power/--threshold/--ref-loss)");
                }
                for (const char* name : {"tx-power", "threshold", "ref-loss"}) {
                    if (!given(opts.at(name))) {
                        throw UsageError(std::string("--") + name + " is required when deriving R_0 from a budget");
                    }
                }
                return range_from_budget(RadioParams{tx_power, threshold, ref_loss, ref_distance, n, sigma});
            }
            if (!given(opts.at("r0"))) {
                throw UsageError("--r0 (or the link-budget flags) is required");
            }
            return LinkModel(r0, n, sigma);
        } catch (const DomainError& e) {
            throw UsageError(std::string("invalid link parameters (--r0/--n/--sigma): ") + e.what());
        }
    }
};

struct CoverageArgs {
    double radius = kFigureAreaRadius;
    std::size_t nodes = 1000;
    std::string mode = "exact";
    std::string shadow_mode = "expected";
    double epsilon = kDefaultConfidence;
    bool closed_form = false;
    CLI::Option* epsilon_opt = nullptr;

    void attach(CLI::App& app) {
        app.add_option("--radius", radius, "Region (disk) radius (m)")->capture_default_str();
        app.add_option("--nodes", nodes, "Number of deployed nodes N")->capture_default_str();
        app.add_option("--mode", mode, "Coverage fraction: exact or approx")
            ->check(CLI::IsMember({"exact", "approx", "exponential-approx"}))
            ->capture_default_str();
        app.add_option("--shadow-mode", shadow_mode, "Shadow coverage reading: expected or confidence")
            ->check(CLI::IsMember({"expected", "confidence"}))
            ->capture_default_str();
        epsilon_opt = app.add_option("--epsilon", epsilon, "Detection confidence level for --shadow-mode confidence");
        app.add_flag("--closed-form", closed_form, "Closed form instead of quadrature for expected shadow detection");
    }

    Region region() const {
        try {
            return Region(radius);
        } catch (const DomainError& e) {
            throw UsageError(std::string("--radius: ") + e.what());
        }
    }

    CoverageOptions options(const SensingModel& model) const {
        CoverageOptions o;
        o.mode = kFractionModes.at(mode);
        o.shadow = kShadowModes.at(shadow_mode);
        o.shadow_closed_form = closed_form;
        const bool shadow = std::holds_alternative<ShadowFadingSensing>(model);
        if (o.shadow == ShadowMode::confidence && !shadow) {
            throw UsageError("--shadow-mode confidence requires --model shadow");
        }
        if (given(epsilon_opt)) {
            if (o.shadow != ShadowMode::confidence) {
                throw UsageError("--epsilon requires --shadow-mode confidence");
            }
            if (!(epsilon > 0.0 && epsilon < 1.0)) {
                throw UsageError("--epsilon must lie in (0, 1)");
            }
        }
        if (o.shadow == ShadowMode::confidence) {
            o.epsilon = epsilon;
        }
        return o;
    }

    Json echo(const SensingModel& model, const CoverageOptions& o) const {
        Json j{{"model", to_json(model)},
               {"region", to_json(region())},
               {"nodes", nodes},
               {"mode", std::string(to_string(o.mode))}};
        if (std::holds_alternative<ShadowFadingSensing>(model)) {
            j["shadow_mode"] = std::string(to_string(o.shadow));
            if (o.epsilon) {
                j["epsilon"] = *o.epsilon;
            }
            j["closed_form"] = o.shadow_closed_form;
        }
        return j;
    }
};

std::filesystem::path default_output(const std::string& file_name) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
        return std::filesystem::path(dir) / file_name;
    }
    return std::filesystem::path(file_name);
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open output file " + path.string());
    }
    return file;
}

void finish_output(std::ofstream& file, const std::filesystem::path& path) {
    file.flush();
    if (!file) {
        throw IoError("failed writing output file " + path.string());
    }
}

// Expands a flat JSON config file into flags, placed directly after the
// subcommand token so flags typed on the command line (which come later)
// win under the take-last policy.
std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       const std::vector<std::string>& subcommands) {
    std::vector<std::string> rest;
    std::optional<std::string> config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) {
                throw UsageError("--config needs a file path");
            }
            config_path = args[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            config_path = a.substr(9);
        } else {
            rest.push_back(a);
        }
    }
    if (!config_path) {
        return rest;
    }

    std::ifstream file(*config_path);
    if (!file) {
        throw IoError("cannot read config file " + *config_path);
    }
    Json config;
    try {
        config = Json::parse(file);
    } catch (const Json::parse_error& e) {
        throw UsageError("--config: " + *config_path + " is not valid JSON: " + e.what());
    }
    if (!config.is_object()) {
        throw UsageError("--config: top level must be an object of flag names");
    }

    std::vector<std::string> flags;
    for (const auto& [key, value] : config.items()) {
        if (key == "config") {
            throw UsageError("--config: nested config files are not supported");
        }
        const std::string flag = "--" + key;
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                flags.push_back(flag);
            }
        } else if (value.is_string()) {
            flags.push_back(flag);
            flags.push_back(value.get<std::string>());
        } else if (value.is_number()) {
            flags.push_back(flag);
            flags.push_back(value.dump());
        } else {
            throw UsageError("--config: value for \"" + key + "\" must be a string, number or boolean");
        }
    }

    auto sub = rest.begin() + 1;
    while (sub != rest.end() && std::find(subcommands.begin(), subcommands.end(), *sub) == subcommands.end()) {
        ++sub;
    }
    if (sub == rest.end()) {
        throw UsageError("--config needs a subcommand");
    }
    rest.insert(sub + 1, flags.begin(), flags.end());
    return rest;
}

void print(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"wsncov: coverage and connectivity analysis for randomly deployed sensor networks"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.add_option("--config", "JSON file of flag values (flags given on the command line win)");

    // coverage
    auto* coverage = app.add_subcommand("coverage", "Analytic coverage fraction for one sensing model");
    SensingArgs cov_model;
    CoverageArgs cov_args;
    cov_model.attach(*coverage);
    cov_args.attach(*coverage);

    // link
    auto* link = app.add_subcommand("link", "Link probability between two nodes at distance d");
    LinkArgs link_args;
    double link_d = 0.0;
    link_args.attach(*link);
    link->add_option("--d", link_d, "Node separation (m)")->required();

    // figure5 / figure6
    auto* fig5 = app.add_subcommand("figure5", "Coverage vs N curve families (CSV or JSON)");
    std::string fig5_output;
    std::string fig5_format = "csv";
    std::string fig5_mode = "exact";
    double fig5_epsilon = kDefaultConfidence;
    double fig5_n = 2.0;
    fig5->add_option("--output", fig5_output, "Output file (default: figure5.csv in $WSNCOV_OUTPUT_DIR or .)");
    fig5->add_option("--format", fig5_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    fig5->add_option("--mode", fig5_mode)
        ->check(CLI::IsMember({"exact", "approx", "exponential-approx"}))
        ->capture_default_str();
    fig5->add_option("--epsilon", fig5_epsilon, "Confidence level for the shadow confidence curves")
        ->capture_default_str();
    fig5->add_option("--shadow-n", fig5_n, "Path-loss exponent for the shadow curves")->capture_default_str();

    auto* fig6 = app.add_subcommand("figure6", "Link probability vs d/R_0 curve families (CSV or JSON)");
    std::string fig6_output;
    std::string fig6_format = "csv";
    fig6->add_option("--output", fig6_output, "Output file (default: figure6.csv in $WSNCOV_OUTPUT_DIR or .)");
    fig6->add_option("--format", fig6_format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of coverage or link rate");
    std::string sim_target = "coverage";
    SensingArgs sim_model;
    CoverageArgs sim_cov;
    TrialPlan plan;
    double sim_margin = 0.0;
    unsigned sim_workers = 1;
    std::string sim_trials_csv;
    std::uint64_t sim_seed = kDefaultSeed;
    LinkArgs sim_link;
    double sim_d = 0.0;
    std::size_t sim_samples = 100000;
    simulate->add_option("--target", sim_target, "What to estimate")
        ->check(CLI::IsMember({"coverage", "link"}))
        ->capture_default_str();
    sim_model.attach(*simulate);
    sim_cov.attach(*simulate);
    sim_link.attach(*simulate, false);
    sim_link.opts["n"] = sim_model.opts["n"];
    sim_link.opts["sigma"] = sim_model.opts["sigma"];
    sim_link.opts["tx-power"] = sim_model.opts["tx-power"];
    sim_link.opts["threshold"] = sim_model.opts["threshold"];
    sim_link.opts["ref-loss"] = sim_model.opts["ref-loss"];
    sim_link.opts["ref-distance"] = sim_model.opts["ref-distance"];
    auto* margin_opt = simulate->add_option("--margin", sim_margin, "Event margin (m); default: the model's reach");
    simulate->add_option("--trials", plan.trials, "Independent deployments")->capture_default_str();
    simulate->add_option("--events", plan.events_per_trial, "Events per trial")->capture_default_str();
    simulate->add_option("--workers", sim_workers, "Worker threads (results do not depend on it)")
        ->capture_default_str();
    simulate->add_option("--trials-csv", sim_trials_csv, "Write per-trial outcomes to this CSV file");
    simulate->add_option("--seed", sim_seed, "Base RNG seed")->capture_default_str();
    auto* sim_d_opt = simulate->add_option("--d", sim_d, "Node separation for --target link (m)");
    simulate->add_option("--samples", sim_samples, "Samples for --target link")->capture_default_str();

    try {
        const auto args = expand_config(raw_args, {"coverage", "link", "figure5", "figure6", "simulate"});
        std::vector<const char*> argv;
        argv.reserve(args.size());
        for (const auto& a : args) {
            argv.push_back(a.c_str());
        }
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return kExitOk;
        } catch (const CLI::ParseError& e) {
            if (e.get_exit_code() == 0) {
                out << app.help();
                return kExitOk;
            }
            err << "usage error: " << e.what() << '\n';
            return kExitUsage;
        }

        if (coverage->parsed()) {
            const SensingModel model = cov_model.resolve();
            const CoverageOptions options = cov_args.options(model);
            const DeploymentConfig config{cov_args.region(), cov_args.nodes, 0};
            const CoverageResult result = coverage_for_model(model, config, options);
            print(out, Json{{"command", "coverage"}, {"result", wsncov::to_json(result, cov_args.echo(model, options))}});
        } else if (link->parsed()) {
            const LinkModel model = link_args.resolve();
            if (!(link_d >= 0.0)) {
                throw UsageError("--d must be non-negative");
            }
            print(out, Json{{"command", "link"},
                            {"config", {{"link_model", to_json(model)}, {"d", link_d}}},
                            {"probability", link_probability(model, link_d)}});
        } else if (fig5->parsed()) {
            if (!(fig5_epsilon > 0.0 && fig5_epsilon < 1.0)) {
                throw UsageError("--epsilon must lie in (0, 1)");
            }
            if (!(fig5_n > 0.0)) {
                throw UsageError("--shadow-n must be positive");
            }
            const auto format = kFormats.at(fig5_format);
            const auto specs = figure5_specs(kFractionModes.at(fig5_mode), fig5_epsilon, fig5_n);
            std::vector<Curve> curves;
            for (const auto& s : specs) {
                curves.push_back(evaluate_curve(s));
            }
            const auto path = fig5_output.empty()
                                  ? default_output(format == OutputFormat::csv ? "figure5.csv" : "figure5.json")
                                  : std::filesystem::path(fig5_output);
            auto file = open_output(path);
            if (format == OutputFormat::csv) {
                write_curves_csv(file, "N", "coverage", curves, true);
            } else {
                write_curves_json(file, "fig5", "N", "coverage", specs, curves);
            }
            finish_output(file, path);
            print(out, Json{{"command", "figure5"},
                            {"output", path.string()},
                            {"format", fig5_format},
                            {"mode", fig5_mode},
                            {"epsilon", fig5_epsilon},
                            {"shadow_n", fig5_n},
                            {"curves", curves.size()}});
        } else if (fig6->parsed()) {
            const auto format = kFormats.at(fig6_format);
            const auto specs = figure6_specs();
            std::vector<Curve> curves;
            for (const auto& s : specs) {
                curves.push_back(evaluate_curve(s));
            }
            const auto path = fig6_output.empty()
                                  ? default_output(format == OutputFormat::csv ? "figure6.csv" : "figure6.json")
                                  : std::filesystem::path(fig6_output);
            auto file = open_output(path);
            if (format == OutputFormat::csv) {
                write_curves_csv(file, "d_over_R0", "probability", curves);
            } else {
                write_curves_json(file, "fig6", "d_over_R0", "probability", specs, curves);
            }
            finish_output(file, path);
            print(out, Json{{"command", "figure6"},
                            {"output", path.string()},
                            {"format", fig6_format},
                            {"curves", curves.size()}});
        } else if (simulate->parsed()) {
            if (sim_target == "link") {
                sim_link.n = sim_model.n;
                sim_link.sigma = sim_model.sigma;
                sim_link.tx_power = sim_model.tx_power;
                sim_link.threshold = sim_model.threshold;
                sim_link.ref_loss = sim_model.ref_loss;
                sim_link.ref_distance = sim_model.ref_distance;
                const LinkModel model = sim_link.resolve();
                if (!given(sim_d_opt)) {
                    throw UsageError("--d is required with --target link");
                }
                if (!(sim_d >= 0.0)) {
                    throw UsageError("--d must be non-negative");
                }
                if (sim_samples < 1) {
                    throw UsageError("--samples must be at least 1");
                }
                RngStream stream = make_stream(sim_seed, 0);
                const EmpiricalEstimate estimate = estimate_link_rate(model, sim_d, sim_samples, stream);
                print(out, Json{{"command", "simulate"},
                                {"target", "link"},
                                {"seed", sim_seed},
                                {"config", {{"link_model", to_json(model)}, {"d", sim_d}, {"samples", sim_samples}}},
                                {"estimate", to_json(estimate)},
                                {"analytic", link_probability(model, sim_d)}});
            } else {
                const SensingModel model = sim_model.resolve();
                const CoverageOptions options = sim_cov.options(model);
                const DeploymentConfig config{sim_cov.region(), sim_cov.nodes, sim_seed};
                plan.base_seed = sim_seed;
                plan.event_margin = sim_margin;
                if (!given(margin_opt)) {
                    const double reach = sensing_reach(model);
                    if (reach >= config.region.radius()) {
                        throw UsageError("the model's reach exceeds --radius; pass --margin explicitly");
                    }
                    plan.event_margin = reach;
                }
                if (plan.trials < 1) {
                    throw UsageError("--trials must be at least 1");
                }
                if (plan.events_per_trial < 1) {
                    throw UsageError("--events must be at least 1");
                }
                if (!(plan.event_margin >= 0.0 && plan.event_margin < config.region.radius())) {
                    throw UsageError("--margin must lie in [0, --radius)");
                }
                const auto outcomes = run_coverage_trials(model, config, plan, sim_workers);
                const EmpiricalEstimate estimate = summarize_trials(outcomes, config.nodes == 0);

                Json doc{{"command", "simulate"},
                         {"target", "coverage"},
                         {"seed", sim_seed},
                         {"config", sim_cov.echo(model, options)},
                         {"plan", to_json(plan)},
                         {"estimate", to_json(estimate)}};
                try {
                    doc["analytic"] = wsncov::to_json(coverage_for_model(model, config, options), Json::object());
                } catch (const DomainError& e) {
                    doc["analytic"] = Json{{"unavailable", e.what()}};
                }
                if (!sim_trials_csv.empty()) {
                    const std::filesystem::path path(sim_trials_csv);
                    auto file = open_output(path);
                    file << "trial_index,successes,events\n";
                    for (const auto& o : outcomes) {
                        file << o.trial_index << ',' << o.successes << ',' << o.events << '\n';
                    }
                    finish_output(file, path);
                    doc["trials_csv"] = path.string();
                }
                print(out, doc);
            }
        }
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConvergenceError& e) {
        err << "convergence error: " << e.what() << " (estimate " << e.estimate() << ", error bound "
            << e.error_bound() << ")\n";
        return kExitConvergence;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace wsncov::cli
