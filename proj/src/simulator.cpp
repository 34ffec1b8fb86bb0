#include "wsncov/simulator.hpp"

#include "wsncov/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace wsncov {

namespace {

constexpr double kZ95 = 1.959963984540054;

// Uniform square grid over the bounding box of the region; nodes are stored
// contiguously per cell in index order so the scan order is deterministic.
class NodeGrid {
public:
    NodeGrid(const std::vector<Point>& nodes, double region_radius, double cell_size)
        : origin_(-region_radius) {
        constexpr std::size_t kMaxCellsPerAxis = 512;
        const double span = 2.0 * region_radius;
        cells_per_axis_ = static_cast<std::size_t>(
            std::clamp(std::ceil(span / cell_size), 1.0, static_cast<double>(kMaxCellsPerAxis)));
        cell_size_ = span / static_cast<double>(cells_per_axis_);

        offsets_.assign(cells_per_axis_ * cells_per_axis_ + 1, 0);
        std::vector<std::size_t> cell_of(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            cell_of[i] = cell_index(cell_coord(nodes[i].x), cell_coord(nodes[i].y));
            ++offsets_[cell_of[i] + 1];
        }
        for (std::size_t c = 1; c < offsets_.size(); ++c) {
            offsets_[c] += offsets_[c - 1];
        }
        sorted_.resize(nodes.size());
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            sorted_[fill[cell_of[i]]++] = nodes[i];
        }
    }

    /// Calls visit(node) for every node in cells intersecting the square of
    /// half-side `reach` around p; stops early when visit returns true.
    template <class Visitor>
    bool any_near(const Point& p, double reach, Visitor&& visit) const {
        const std::size_t x0 = cell_coord(p.x - reach);
        const std::size_t x1 = cell_coord(p.x + reach);
        const std::size_t y0 = cell_coord(p.y - reach);
        const std::size_t y1 = cell_coord(p.y + reach);
        for (std::size_t cy = y0; cy <= y1; ++cy) {
            for (std::size_t cx = x0; cx <= x1; ++cx) {
                const std::size_t c = cell_index(cx, cy);
                for (std::size_t k = offsets_[c]; k < offsets_[c + 1]; ++k) {
                    if (visit(sorted_[k])) {
                        return true;
                    }
                }
            }
        }
        return false;
    }

private:
    std::size_t cell_coord(double v) const {
        const double idx = std::floor((v - origin_) / cell_size_);
        return static_cast<std::size_t>(
            std::clamp(idx, 0.0, static_cast<double>(cells_per_axis_ - 1)));
    }
    std::size_t cell_index(std::size_t cx, std::size_t cy) const { return cy * cells_per_axis_ + cx; }

    double origin_;
    double cell_size_ = 1.0;
    std::size_t cells_per_axis_ = 1;
    std::vector<std::size_t> offsets_;
    std::vector<Point> sorted_;
};

TrialOutcome run_trial(const SensingModel& model, const DeploymentConfig& config,
                       const TrialPlan& plan, double reach, std::size_t trial) {
    RngStream stream = make_stream(plan.base_seed, trial);
    const Deployment deployment = deploy(config, stream);
    const NodeGrid grid(deployment.positions, config.region.radius(), reach);
    const double event_radius = config.region.radius() - plan.event_margin;

    std::uint64_t successes = 0;
    for (std::size_t e = 0; e < plan.events_per_trial; ++e) {
        const Point event = uniform_in_disk(event_radius, stream);
        const bool detected = grid.any_near(event, reach, [&](const Point& node) {
            const double distance = std::hypot(node.x - event.x, node.y - event.y);
            if (distance > reach) {
                return false;
            }
            return sample_detection(model, distance, stream);
        });
        successes += detected ? 1 : 0;
    }
    return TrialOutcome{trial, successes, plan.events_per_trial};
}

}  // namespace

double proportion_half_width(double mean, double n, double variance_of_mean) {
    if (!(n > 0.0)) {
        throw DomainError("proportion half-width needs a positive sample count");
    }
    const double binomial_variance = mean * (1.0 - mean) / n;
    const double variance = variance_of_mean >= 0.0 ? variance_of_mean : binomial_variance;
    const double normal = kZ95 * std::sqrt(variance);
    if (mean - 5.0 * normal > 0.0 && mean + 5.0 * normal < 1.0) {
        return normal;
    }
    // Wilson score interval; with clustered samples use the effective size
    // implied by the observed variance.
    double effective_n = n;
    if (variance > 0.0 && binomial_variance > 0.0) {
        effective_n = std::min(n, mean * (1.0 - mean) / variance);
    }
    const double z2 = kZ95 * kZ95;
    return kZ95 / (1.0 + z2 / effective_n) *
           std::sqrt(mean * (1.0 - mean) / effective_n + z2 / (4.0 * effective_n * effective_n));
}

Point uniform_in_disk(double radius, RngStream& stream) {
    const double r = radius * std::sqrt(stream.uniform());
    const double theta = 2.0 * std::numbers::pi * stream.uniform();
    return Point{r * std::cos(theta), r * std::sin(theta)};
}

Deployment deploy(const DeploymentConfig& config, RngStream& stream) {
    Deployment deployment{{}, config};
    deployment.positions.reserve(config.nodes);
    for (std::size_t i = 0; i < config.nodes; ++i) {
        deployment.positions.push_back(uniform_in_disk(config.region.radius(), stream));
    }
    return deployment;
}

std::vector<TrialOutcome> run_coverage_trials(const SensingModel& model,
                                              const DeploymentConfig& config,
                                              const TrialPlan& plan, unsigned workers) {
    if (plan.trials < 1 || plan.events_per_trial < 1) {
        throw DomainError("trial plan needs at least one trial and one event per trial");
    }
    if (!(plan.event_margin >= 0.0 && plan.event_margin < config.region.radius())) {
        throw DomainError("event margin must lie in [0, region radius)");
    }

    const double reach = sensing_reach(model);
    std::vector<TrialOutcome> outcomes(plan.trials);
    if (config.nodes == 0) {
        for (std::size_t t = 0; t < plan.trials; ++t) {
            outcomes[t] = TrialOutcome{t, 0, plan.events_per_trial};
        }
        return outcomes;
    }

    const unsigned pool = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(plan.trials)));
    if (pool == 1) {
        for (std::size_t t = 0; t < plan.trials; ++t) {
            outcomes[t] = run_trial(model, config, plan, reach, t);
        }
        return outcomes;
    }

    std::atomic<std::size_t> next{0};
    {
        std::vector<std::jthread> threads;
        threads.reserve(pool);
        for (unsigned w = 0; w < pool; ++w) {
            threads.emplace_back([&] {
                for (std::size_t t = next++; t < plan.trials; t = next++) {
                    outcomes[t] = run_trial(model, config, plan, reach, t);
                }
            });
        }
    }
    return outcomes;
}

EmpiricalEstimate summarize_trials(const std::vector<TrialOutcome>& outcomes, bool deterministic) {
    if (outcomes.empty()) {
        throw DomainError("no trial outcomes to summarize");
    }
    std::uint64_t successes = 0;
    std::uint64_t events = 0;
    for (const auto& o : outcomes) {
        successes += o.successes;
        events += o.events;
    }
    EmpiricalEstimate estimate;
    estimate.trials_used = outcomes.size();
    estimate.mean = static_cast<double>(successes) / static_cast<double>(events);
    if (deterministic) {
        return estimate;
    }

    double variance_of_mean = -1.0;
    if (outcomes.size() >= 2) {
        // Events within a trial share a deployment, so the trial rates (not
        // the individual events) are the independent replicates.
        double sum_sq = 0.0;
        for (const auto& o : outcomes) {
            const double rate = static_cast<double>(o.successes) / static_cast<double>(o.events);
            const double delta = rate - estimate.mean;
            sum_sq += delta * delta;
        }
        const double trials = static_cast<double>(outcomes.size());
        variance_of_mean = sum_sq / (trials - 1.0) / trials;
    }
    estimate.half_width_95 =
        proportion_half_width(estimate.mean, static_cast<double>(events), variance_of_mean);
    return estimate;
}

EmpiricalEstimate estimate_coverage(const SensingModel& model, const DeploymentConfig& config,
                                    const TrialPlan& plan, unsigned workers) {
    return summarize_trials(run_coverage_trials(model, config, plan, workers), config.nodes == 0);
}

EmpiricalEstimate estimate_link_rate(const LinkModel& model, double d, std::size_t samples,
                                     RngStream& stream) {
    if (samples < 1) {
        throw DomainError("link rate estimate needs at least one sample");
    }
    std::uint64_t successes = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        successes += sample_link(model, d, stream) ? 1 : 0;
    }
    EmpiricalEstimate estimate;
    estimate.trials_used = samples;
    estimate.mean = static_cast<double>(successes) / static_cast<double>(samples);
    estimate.half_width_95 = proportion_half_width(estimate.mean, static_cast<double>(samples));
    return estimate;
}

LinkCensus network_link_census(const Deployment& deployment, const LinkModel& model,
                               RngStream& stream) {
    const auto& nodes = deployment.positions;
    if (nodes.empty()) {
        throw DomainError("link census needs at least one node");
    }
    std::vector<std::uint32_t> degree(nodes.size(), 0);
    std::uint64_t edges = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            const double d = std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y);
            if (sample_link(model, d, stream)) {
                ++degree[i];
                ++degree[j];
                ++edges;
            }
        }
    }
    const auto isolated = std::count(degree.begin(), degree.end(), 0u);
    const double n = static_cast<double>(nodes.size());
    return LinkCensus{static_cast<double>(isolated) / n, 2.0 * static_cast<double>(edges) / n, edges};
}

}  // namespace wsncov
