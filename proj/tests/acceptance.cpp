// Acceptance suite: one PASS/FAIL line per criterion, each with its runtime
// budget. Exit status is non-zero if any criterion fails.

#include "wsncov/cli.hpp"
#include "wsncov/coverage.hpp"
#include "wsncov/curves.hpp"
#include "wsncov/link.hpp"
#include "wsncov/numerics.hpp"
#include "wsncov/sensing.hpp"
#include "wsncov/serialization.hpp"
#include "wsncov/simulator.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace wsncov;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            if (pass) {
                detail << "failed: ";
            } else {
                detail << "; ";
            }
            detail << what;
            pass = false;
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<void(Outcome&)> check;
};

// Standard normal tail straight from erfc; the oracle for the link checks.
double erfc_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

const Region kRegion(1000.0);

void boolean_coverage(Outcome& o) {
    // (1 - p)^N by repeated squaring in long double.
    long double base = 1.0L - 0.0025L;
    long double power = 1.0L;
    for (unsigned e = 1000; e > 0; e >>= 1) {
        if (e & 1u) {
            power *= base;
        }
        base *= base;
    }
    const double oracle = static_cast<double>(1.0L - power);
    const double frozen = 0.9181715436000221628763;  // 40-digit evaluation
    const double value = coverage_for_model(BooleanSensing(50.0), DeploymentConfig{kRegion, 1000, 0}).value;
    o.require(std::abs(value - oracle) <= 1e-12 * oracle, "exact value vs long-double power oracle");
    o.require(std::abs(value - frozen) <= 1e-12 * frozen, "exact value vs 40-digit reference");

    int hits = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const auto e = estimate_coverage(BooleanSensing(50.0), DeploymentConfig{kRegion, 1000, 0},
                                         TrialPlan{200, 500, 50.0, 1000u + static_cast<std::uint64_t>(rep)});
        hits += std::abs(e.mean - value) <= 3.0 * e.half_width_95 ? 1 : 0;
    }
    o.require(hits >= 99, "Monte Carlo within 3 half-widths in " + std::to_string(hits) + "/100 repetitions");
    o.detail << "value=" << std::setprecision(16) << value << " MC hits=" << hits << "/100";
}

void elfes_collapse(Outcome& o) {
    RngStream s = make_stream(2, 0);
    int mismatches = 0;
    const SensingModel elfes = ElfesSensing(50.0, 50.0, 0.03, 1.0);
    const SensingModel boolean = BooleanSensing(50.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = 100.0 * s.uniform();
        mismatches += detection_probability(elfes, x) != detection_probability(boolean, x) ? 1 : 0;
    }
    mismatches += detection_probability(elfes, 50.0) != detection_probability(boolean, 50.0) ? 1 : 0;
    o.require(mismatches == 0, std::to_string(mismatches) + " pointwise mismatches");

    const double elfes15 = elfes_coverage_approx(ElfesSensing(0.0, 50.0, 1e-9), 1000, kRegion).value;
    const double boolean13 =
        coverage_from_pdet(single_node_detection_boolean(50.0, kRegion), 1000, FractionMode::exponential_approx).value;
    o.require(std::abs(elfes15 - boolean13) <= 1e-6, "Elfes approx at lambda=1e-9 vs Boolean approx");
    o.detail << "mismatches=0 |diff|=" << std::abs(elfes15 - boolean13);
}

void elfes_exact_vs_quadrature(Outcome& o) {
    double worst = 0.0;
    for (double r_max : {40.0, 50.0, 60.0, 80.0, 100.0}) {
        for (double fraction : {0.0, 0.1, 0.25, 0.5, 0.9}) {
            for (double lambda : {0.001, 0.005, 0.01, 0.03, 0.1}) {
                const ElfesSensing m(fraction * r_max, r_max, lambda, 1.0);
                const double closed = elfes_pdet_exact(m, kRegion);
                const double quad = elfes_pdet_quadrature(m, kRegion);
                worst = std::max(worst, std::abs(closed - quad) / quad);
            }
        }
    }
    o.require(worst <= 1e-9, "relative gap above 1e-9");
    o.detail << "max relative gap=" << worst << " over 125 points";
}

void shadow_coverage(Outcome& o) {
    double worst = 0.0;
    for (double n : {2.0, 3.0, 4.0}) {
        for (double sigma : {1.0, 2.0, 4.0, 8.0, 12.0}) {
            const ShadowFadingSensing m(50.0, n, sigma);
            const double quad = shadow_pdet_quadrature(m, kRegion);
            const double closed = std::numbers::pi * 2500.0 / kRegion.area() *
                                  std::exp(2.0 * std::pow(sigma * std::log(10.0) / (10.0 * n), 2.0));
            worst = std::max(worst, std::abs(quad - closed) / closed);
        }
    }
    o.require(worst <= 1e-6, "quadrature vs closed form above 1e-6 relative");
    o.detail << "max relative gap=" << worst << " over 15 (n, sigma) pairs";
}

void link_model(Outcome& o) {
    for (double n : {2.0, 3.0}) {
        for (double sigma : {0.5, 4.0, 8.0}) {
            o.require(link_probability(LinkModel(100.0, n, sigma), 100.0) == 0.5, "Q(0) at d = R_0");
        }
    }
    RngStream s = make_stream(5, 0);
    double worst = 0.0;
    const LinkModel shadowed(100.0, 2.0, 8.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = std::exp(6.0 * (s.uniform() - 0.5));
        worst = std::max(worst, std::abs(link_probability(shadowed, 100.0 * t) + link_probability(shadowed, 100.0 / t) - 1.0));
    }
    o.require(worst <= 1e-12, "log-symmetry residual above 1e-12");

    const LinkModel disk(100.0, 2.0, 0.0);
    for (int k = 1; k <= 300; ++k) {
        const double d = k;
        o.require(link_probability(disk, d) == (d <= 100.0 ? 1.0 : 0.0), "sigma = 0 step at d=" + std::to_string(d));
    }

    const double d_curve = link_probability(LinkModel(100.0, 3.0, 4.0), 120.0);
    const double c_curve = link_probability(LinkModel(100.0, 2.0, 8.0), 200.0);
    o.require(std::abs(d_curve - 0.2763) <= 1e-4, "n=3, sigma=4, d=1.2 R_0 spot value");
    o.require(std::abs(c_curve - 0.2258) <= 1e-4, "n=2, sigma=8, d=2 R_0 spot value");
    o.require(std::abs(d_curve - erfc_tail(30.0 * std::log10(1.2) / 4.0)) <= 1e-12, "erfc oracle (d)");
    o.require(std::abs(c_curve - erfc_tail(20.0 * std::log10(2.0) / 8.0)) <= 1e-12, "erfc oracle (c)");
    o.detail << "symmetry residual=" << worst << " p(1.2R0)=" << std::setprecision(6) << d_curve
             << " p(2R0)=" << c_curve;
}

void qualitative_claims(Outcome& o) {
    std::size_t strict = 0;
    std::size_t underflow = 0;
    for (double n : {2.0, 3.0, 4.0}) {
        for (double t : {1.001, 1.01, 1.1, 1.25, 1.5, 2.0, 3.0}) {
            double previous = link_probability(LinkModel(1.0, n, 0.01), t);
            for (int k = 2; k <= 1200; ++k) {
                const double p = link_probability(LinkModel(1.0, n, 0.01 * k), t);
                if (p == 0.0) {
                    // Q below the smallest subnormal: both neighbours are 0.
                    o.require(previous == 0.0, "non-monotone underflow region");
                    ++underflow;
                } else {
                    o.require(p > previous, "link probability not increasing in sigma at d/R0=" + std::to_string(t));
                    ++strict;
                }
                previous = p;
            }
        }
    }
    std::size_t radius_steps = 0;
    for (double n : {2.0, 3.0, 4.0}) {
        double previous = shadow_confidence_radius(ShadowFadingSensing(50.0, n, 0.01), 0.9);
        for (int k = 2; k <= 1200; ++k) {
            const double r = shadow_confidence_radius(ShadowFadingSensing(50.0, n, 0.01 * k), 0.9);
            o.require(r < previous, "confidence radius not decreasing in sigma");
            previous = r;
            ++radius_steps;
        }
    }
    o.detail << "link steps strictly increasing=" << strict << " (underflowed to 0: " << underflow
             << "), radius steps strictly decreasing=" << radius_steps;
}

void monte_carlo_calibration(Outcome& o) {
    std::uint64_t stream_id = 0;
    int cells = 0;
    double worst_ratio_error = 0.0;
    for (double sigma : {2.0, 4.0, 8.0, 12.0}) {
        for (double t : {0.5, 0.9, 1.2, 2.0}) {
            const LinkModel model(100.0, 2.0, sigma);
            const double p = link_probability(model, 100.0 * t);
            RngStream a = make_stream(707, stream_id++);
            const auto base = estimate_link_rate(model, 100.0 * t, 100000, a);
            const double sd = std::sqrt(p * (1.0 - p) / 100000.0);
            o.require(std::abs(base.mean - p) <= 3.0 * sd,
                      "rate outside 3 sd at sigma=" + std::to_string(sigma) + " d/R0=" + std::to_string(t));
            RngStream b = make_stream(707, stream_id++);
            const auto quad = estimate_link_rate(model, 100.0 * t, 400000, b);
            const double ratio = base.half_width_95 / quad.half_width_95;
            worst_ratio_error = std::max(worst_ratio_error, std::abs(ratio / 2.0 - 1.0));
            o.require(std::abs(ratio / 2.0 - 1.0) <= 0.2, "half-width ratio " + std::to_string(ratio));
            ++cells;
        }
    }
    o.detail << cells << " cells; worst half-width ratio deviation from 2x=" << worst_ratio_error * 100.0 << "%";
}

int run(const std::vector<std::string>& args, std::string& out) {
    std::ostringstream o;
    std::ostringstream e;
    std::vector<std::string> full{"wsncov"};
    full.insert(full.end(), args.begin(), args.end());
    const int code = cli::run_cli(full, o, e);
    out = o.str();
    return code;
}

void determinism(Outcome& o) {
    for (const std::vector<std::string>& extra :
         {std::vector<std::string>{}, std::vector<std::string>{"--model", "shadow", "--sigma", "2", "--nodes", "400",
                                                               "--trials", "60"}}) {
        std::vector<std::string> base{"simulate", "--seed", "4242"};
        base.insert(base.end(), extra.begin(), extra.end());
        std::string first;
        std::string second;
        std::string parallel;
        auto one = base;
        one.insert(one.end(), {"--workers", "1"});
        auto four = base;
        four.insert(four.end(), {"--workers", "4"});
        o.require(run(one, first) == 0, "simulate exit code");
        o.require(run(one, second) == 0, "simulate exit code");
        o.require(run(four, parallel) == 0, "simulate exit code");
        o.require(!first.empty() && first == second, "repeat run differs");
        o.require(first == parallel, "workers=4 output differs from workers=1");
    }
    o.detail << "byte-identical JSON across repeats and worker counts {1, 4}";
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path, std::string& header) {
    std::ifstream in(path);
    std::getline(in, header);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

bool parse_number(const std::string& text, double& value) {
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    return ec == std::errc{} && end == text.data() + text.size();
}

std::size_t significant_digits(const std::string& text) {
    std::size_t digits = 0;
    for (char c : text) {
        if (c == 'e' || c == 'E') {
            break;
        }
        digits += std::isdigit(static_cast<unsigned char>(c)) ? 1 : 0;
    }
    return digits;
}

void figure_files(Outcome& o) {
    const auto dir = std::filesystem::temp_directory_path() / "wsncov_acceptance";
    std::filesystem::create_directories(dir);
    std::string out;

    // Figure 6.
    o.require(run({"figure6", "--output", (dir / "fig6.csv").string()}, out) == 0, "figure6 exit code");
    std::string header;
    const auto rows6 = read_csv(dir / "fig6.csv", header);
    o.require(header == "d_over_R0,curve,probability", "figure6 header");
    const std::map<std::string, std::pair<double, double>> params{{"a_sigma0", {2.0, 0.0}},
                                                                  {"b_n2_sigma4", {2.0, 4.0}},
                                                                  {"c_n2_sigma8", {2.0, 8.0}},
                                                                  {"d_n3_sigma4", {3.0, 4.0}},
                                                                  {"e_n3_sigma8", {3.0, 8.0}}};
    std::map<std::string, std::size_t> per_curve;
    double worst6 = 0.0;
    for (const auto& r : rows6) {
        double t = 0.0;
        double p = 0.0;
        if (r.size() != 3 || !parse_number(r[0], t) || !parse_number(r[2], p) || !params.contains(r[1]) ||
            significant_digits(r[2]) < 10) {
            o.require(false, "figure6 malformed row");
            continue;
        }
        ++per_curve[r[1]];
        const auto [n, sigma] = params.at(r[1]);
        const double expected = sigma == 0.0 ? (t <= 1.0 ? 1.0 : 0.0) : erfc_tail(10.0 * n * std::log10(t) / sigma);
        worst6 = std::max(worst6, std::abs(p - expected));
    }
    o.require(per_curve.size() == 5, "figure6 curve count");
    for (const auto& [label, count] : per_curve) {
        o.require(count >= 200, "figure6 grid for " + label);
    }
    o.require(worst6 <= 1e-10, "figure6 pointwise deviation above 1e-10");

    // Figure 5.
    o.require(run({"figure5", "--output", (dir / "fig5.csv").string()}, out) == 0, "figure5 exit code");
    const auto rows5 = read_csv(dir / "fig5.csv", header);
    o.require(header == "N,curve,coverage", "figure5 header");
    std::map<std::string, std::map<long, double>> curves;
    for (const auto& r : rows5) {
        double n = 0.0;
        double v = 0.0;
        if (r.size() != 3 || !parse_number(r[0], n) || !parse_number(r[2], v) || v < 0.0 || v > 1.0 ||
            significant_digits(r[2]) < 10) {
            o.require(false, "figure5 malformed row");
            continue;
        }
        curves[r[1]][static_cast<long>(n)] = v;
    }
    o.require(curves.size() == 8, "figure5 curve count");
    const auto& a = curves["a_boolean"];
    const auto& b = curves["b_shadow_sigma2_n2_confidence_eps0.9"];
    const auto& c = curves["c_elfes_lambda0.01"];
    const auto& d = curves["d_shadow_sigma8_n2_confidence_eps0.9"];
    const auto& e = curves["e_elfes_exact_r1_10_lambda0.03"];
    const auto& f = curves["f_elfes_lambda0.03"];
    o.require(a.size() == 100 && b.size() == 100 && c.size() == 100 && d.size() == 100 && e.size() == 100 &&
                  f.size() == 100,
              "figure5 grid size");
    std::size_t checked = 0;
    for (const auto& [n, va] : a) {
        if (!b.contains(n) || !c.contains(n) || !d.contains(n) || !e.contains(n) || !f.contains(n)) {
            o.require(false, "figure5 grids differ");
            break;
        }
        o.require(va > b.at(n) && va > d.at(n), "a above b/d (confidence) at N=" + std::to_string(n));
        o.require(c.at(n) > f.at(n), "c above f at N=" + std::to_string(n));
        o.require(e.at(n) > f.at(n), "e above f at N=" + std::to_string(n));
        ++checked;
    }
    for (const auto& [label, curve] : curves) {
        double previous = -1.0;
        for (const auto& [n, v] : curve) {
            o.require(v >= previous, "figure5 curve " + label + " decreasing");
            previous = v;
        }
    }
    o.detail << "figure6 max deviation=" << worst6 << "; figure5 orderings hold at " << checked << " N values";
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Boolean coverage: exact formula and Monte Carlo agreement", 10.0, boolean_coverage},
        {2, "Elfes collapse to Boolean and small-lambda limit", 1.0, elfes_collapse},
        {3, "Elfes closed form vs quadrature on 5x5x5 grid", 5.0, elfes_exact_vs_quadrature},
        {4, "Shadow coverage quadrature vs log-normal closed form", 5.0, shadow_coverage},
        {5, "Link model: pivot, symmetry, step, spot values", 1.0, link_model},
        {6, "Connectivity enhancement and coverage degradation under shadowing", 1.0, qualitative_claims},
        {7, "Monte Carlo link-rate calibration", 30.0, monte_carlo_calibration},
        {8, "Determinism of simulate across runs and worker counts", 20.0, determinism},
        {9, "Figure 5 / Figure 6 files", 10.0, figure_files},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome outcome;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.check(outcome);
        } catch (const std::exception& e) {
            outcome.require(false, std::string("exception: ") + e.what());
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        outcome.require(elapsed < c.budget_seconds, "runtime budget exceeded");
        failures += outcome.pass ? 0 : 1;
        std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " ("
                  << std::fixed << std::setprecision(2) << elapsed << " s / " << c.budget_seconds << " s)  "
                  << std::defaultfloat << outcome.detail.str() << '\n';
    }
    std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
              << '\n';
    return failures == 0 ? 0 : 1;
}
