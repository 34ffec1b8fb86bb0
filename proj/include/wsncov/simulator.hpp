#pragma once

#include "wsncov/coverage.hpp"
#include "wsncov/link.hpp"
#include "wsncov/rng.hpp"
#include "wsncov/sensing.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wsncov {

struct Point {
    double x;
    double y;

    friend bool operator==(const Point&, const Point&) = default;
};

struct Deployment {
    std::vector<Point> positions;
    DeploymentConfig config;
};

/// Coverage experiment design. Events are drawn uniformly from the disk of
/// radius (region radius - event_margin).
struct TrialPlan {
    std::size_t trials = 200;
    std::size_t events_per_trial = 500;
    double event_margin = 0.0;
    std::uint64_t base_seed = 0;
};

struct EmpiricalEstimate {
    double mean = 0.0;
    double half_width_95 = 0.0;
    std::size_t trials_used = 0;
};

struct TrialOutcome {
    std::size_t trial_index;
    std::uint64_t successes;
    std::uint64_t events;
};

struct LinkCensus {
    double isolated_fraction;
    double mean_degree;
    std::uint64_t edges;
};

/// N nodes i.i.d. uniform over the region disk (square-root radial sampling).
Deployment deploy(const DeploymentConfig& config, RngStream& stream);

/// Uniform point in a centred disk of the given radius.
Point uniform_in_disk(double radius, RngStream& stream);

/// Runs every trial of the plan. Trial i uses its own stream
/// make_stream(plan.base_seed, i): a fresh deployment, then event points, each
/// detected iff some node's sample_detection succeeds. Outcomes are indexed by
/// trial, so the result does not depend on `workers`.
std::vector<TrialOutcome> run_coverage_trials(const SensingModel& model,
                                              const DeploymentConfig& config,
                                              const TrialPlan& plan, unsigned workers = 1);

/// Pooled event detection rate with a 95% half-width from the spread of the
/// per-trial rates.
EmpiricalEstimate summarize_trials(const std::vector<TrialOutcome>& outcomes,
                                   bool deterministic = false);

EmpiricalEstimate estimate_coverage(const SensingModel& model, const DeploymentConfig& config,
                                    const TrialPlan& plan, unsigned workers = 1);

/// Bernoulli rate of sample_link at separation d with a binomial half-width.
EmpiricalEstimate estimate_link_rate(const LinkModel& model, double d, std::size_t samples,
                                     RngStream& stream);

/// Samples every unordered node pair once.
LinkCensus network_link_census(const Deployment& deployment, const LinkModel& model,
                               RngStream& stream);

/// 95% half-width for a proportion: normal approximation, switching to the
/// Wilson score interval when the mean is within five half-widths of 0 or 1.
/// `variance_of_mean` < 0 means "use p(1-p)/n".
double proportion_half_width(double mean, double sample_count, double variance_of_mean = -1.0);

}  // namespace wsncov
