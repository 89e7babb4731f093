#include "gibbsmap/anneal.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace gibbsmap {

void AnnealSchedule::validate() const {
    if (!(t0 > 0.0) || !std::isfinite(t0)) {
        throw std::invalid_argument("AnnealSchedule: t0 must be > 0");
    }
    if (!(k_t > 0.0) || !(k_t < 1.0)) {
        throw std::invalid_argument("AnnealSchedule: k_t must lie in (0,1)");
    }
    if (!(k_delta > 0.0) || !(k_delta < 1.0)) {
        throw std::invalid_argument("AnnealSchedule: k_delta must lie in (0,1)");
    }
    if (!(t_min > 0.0)) {
        throw std::invalid_argument("AnnealSchedule: t_min must be > 0");
    }
    for (double d : delta_min) {
        if (!(d > 0.0)) {
            throw std::invalid_argument("AnnealSchedule: delta_min components must be > 0");
        }
    }
}

void RunConfig::validate() const {
    if (n_iterations < 1) {
        throw std::invalid_argument("RunConfig: n_iterations must be >= 1");
    }
    if (keep_every < 1 || keep_every > n_iterations) {
        throw std::invalid_argument("RunConfig: keep_every must lie in [1, n_iterations]");
    }
}

namespace {

constexpr double kDefaultDeltaFloor = 1.0e-4;

double delta_floor(const AnnealSchedule& schedule, std::size_t i) {
    if (schedule.delta_min.empty()) return kDefaultDeltaFloor;
    return schedule.delta_min[i];
}

} // namespace

double temperature_at(const AnnealSchedule& schedule, long n) {
    if (n < 0) throw std::invalid_argument("temperature_at: n must be >= 0");
    double t;
    if (schedule.kind == ScheduleKind::geometric) {
        t = schedule.t0 * std::pow(schedule.k_t, static_cast<double>(n));
    } else {
        t = schedule.t0 / (1.0 + std::log(static_cast<double>(n) + 1.0));
    }
    return std::max(t, schedule.t_min);
}

std::vector<double> delta_at(const AnnealSchedule& schedule,
                             const std::vector<double>& base_delta, long n) {
    if (n < 0) throw std::invalid_argument("delta_at: n must be >= 0");
    if (!schedule.delta_min.empty() && schedule.delta_min.size() != base_delta.size()) {
        throw std::invalid_argument("delta_at: delta_min length does not match delta");
    }
    const double shrink = std::pow(schedule.k_delta, static_cast<double>(n));
    std::vector<double> delta(base_delta.size());
    for (std::size_t i = 0; i < base_delta.size(); ++i) {
        delta[i] = std::max(base_delta[i] * shrink, delta_floor(schedule, i));
    }
    return delta;
}

double map_proxy_score(const ParamVector& theta, const SufficientStats& data_stats,
                       const PriorBox& prior) {
    return dot(theta, data_stats) + prior.log_density(theta);
}

MapEstimate run_sa(const GibbsModel& model, const SufficientStats& data_stats,
                   const PriorBox& prior, const ShadowConfig& shadow_config,
                   const AnnealSchedule& schedule, const RunConfig& run_config,
                   const ParamVector& initial_theta, RngStream& rng) {
    shadow_config.validate();
    schedule.validate();
    run_config.validate();
    if (!prior.contains(initial_theta)) {
        throw std::invalid_argument("run_sa: initial theta outside the prior box");
    }

    ShadowState state = make_initial_state(model, initial_theta);
    ShadowConfig sweep_config = shadow_config;

    MapEstimate result;
    result.trace.reserve(
        static_cast<std::size_t>(run_config.n_iterations / run_config.keep_every) + 1);
    long long total_accepted = 0;

    for (long n = 0; n < run_config.n_iterations; ++n) {
        const double temperature = temperature_at(schedule, n);
        sweep_config.delta = delta_at(schedule, shadow_config.delta, n);
        SweepResult res = shadow_sweep(std::move(state), model, data_stats, sweep_config,
                                       prior, temperature, rng);
        state = std::move(res.state);
        total_accepted += res.accepted;

        const long iteration = n + 1;
        if (iteration % run_config.keep_every == 0 || iteration == run_config.n_iterations) {
            result.trace.push_back({iteration, state.theta, temperature, sweep_config.delta,
                                    static_cast<double>(res.accepted) /
                                        static_cast<double>(sweep_config.inner_steps),
                                    state.aux_stats});
        }
    }

    result.theta_final = state.theta;
    result.inner_accept_rate =
        static_cast<double>(total_accepted) /
        (static_cast<double>(run_config.n_iterations) *
         static_cast<double>(shadow_config.inner_steps));

    double best_score = map_proxy_score(result.trace.front().theta, data_stats, prior);
    result.theta_best = result.trace.front().theta;
    for (const TraceRecord& rec : result.trace) {
        const double score = map_proxy_score(rec.theta, data_stats, prior);
        if (score > best_score) {
            best_score = score;
            result.theta_best = rec.theta;
        }
    }
    return result;
}

MapEstimate run_sa_multi(const GibbsModel& model, const SufficientStats& data_stats,
                         const PriorBox& prior, const ShadowConfig& shadow_config,
                         const AnnealSchedule& schedule, const RunConfig& run_config,
                         const ParamVector& initial_theta, std::uint64_t seed, int n_chains) {
    if (n_chains < 1) {
        throw std::invalid_argument("run_sa_multi: n_chains must be >= 1");
    }
    if (n_chains == 1) {
        RngStream rng(seed, 0);
        return run_sa(model, data_stats, prior, shadow_config, schedule, run_config,
                      initial_theta, rng);
    }
    std::vector<std::future<MapEstimate>> chains;
    chains.reserve(static_cast<std::size_t>(n_chains));
    for (int c = 0; c < n_chains; ++c) {
        chains.push_back(std::async(std::launch::async, [&, c] {
            RngStream rng(seed, static_cast<std::uint64_t>(c));
            return run_sa(model, data_stats, prior, shadow_config, schedule, run_config,
                          initial_theta, rng);
        }));
    }
    MapEstimate best;
    double best_score = 0.0;
    for (int c = 0; c < n_chains; ++c) {
        MapEstimate est = chains[static_cast<std::size_t>(c)].get();
        const double score = map_proxy_score(est.theta_best, data_stats, prior);
        if (c == 0 || score > best_score) {
            best_score = score;
            best = std::move(est);
        }
    }
    return best;
}

} // namespace gibbsmap
