#ifndef GIBBSMAP_ANNEAL_HPP
#define GIBBSMAP_ANNEAL_HPP

#include <cstdint>
#include <vector>

#include "gibbsmap/models.hpp"
#include "gibbsmap/rng.hpp"
#include "gibbsmap/shadow.hpp"

namespace gibbsmap {

enum class ScheduleKind { geometric, logarithmic };

// Cooling and proposal-shrink schedules. The geometric form T_n = k_T^n T_0
// is the experimentally used one; the logarithmic form T_0 / (1 + log n) is
// the theoretically grounded alternative. Floors keep late iterations away
// from zero-width proposals and zero temperature.
struct AnnealSchedule {
    double t0 = 1.0e4;
    double k_t = 0.9999;
    double k_delta = 0.99999;
    double t_min = 1.0e-6;
    std::vector<double> delta_min; // per coordinate; empty = 1e-4 everywhere
    ScheduleKind kind = ScheduleKind::geometric;

    void validate() const;
};

// geometric: max(t0 * k_t^n, t_min); logarithmic: max(t0 / (1 + log(n+1)), t_min).
double temperature_at(const AnnealSchedule& schedule, long n);

// Componentwise max(base_delta_i * k_delta^n, delta_min_i).
std::vector<double> delta_at(const AnnealSchedule& schedule,
                             const std::vector<double>& base_delta, long n);

struct RunConfig {
    long n_iterations = 1000000;
    long keep_every = 1000;

    void validate() const;
};

struct TraceRecord {
    long iteration = 0;          // 1-based count of completed sweeps
    ParamVector theta;
    double temperature = 0.0;
    std::vector<double> delta;
    double accept_rate = 0.0;    // inner acceptance rate of this sweep
    SufficientStats aux_stats;
};

struct MapEstimate {
    ParamVector theta_final;     // state at the last sweep (the reported estimate)
    ParamVector theta_best;      // recorded state with maximal proxy score
    std::vector<TraceRecord> trace;
    double inner_accept_rate = 0.0; // over the whole run
};

// theta . t(y) + log p(theta): the posterior log-density up to the constants
// that cancel everywhere else. Used only to rank recorded states.
double map_proxy_score(const ParamVector& theta, const SufficientStats& data_stats,
                       const PriorBox& prior);

// Simulated annealing over shadow sweeps: at iteration n the sweep runs at
// temperature_at(n) with proposal widths delta_at(n). Records a trace entry
// every keep_every sweeps and always at the final sweep.
MapEstimate run_sa(const GibbsModel& model, const SufficientStats& data_stats,
                   const PriorBox& prior, const ShadowConfig& shadow_config,
                   const AnnealSchedule& schedule, const RunConfig& run_config,
                   const ParamVector& initial_theta, RngStream& rng);

// Multi-start: n_chains independent runs on stream ids 0..n_chains-1, merged
// deterministically by chain index; returns the chain whose theta_best has
// the highest proxy score (ties go to the lowest index).
MapEstimate run_sa_multi(const GibbsModel& model, const SufficientStats& data_stats,
                         const PriorBox& prior, const ShadowConfig& shadow_config,
                         const AnnealSchedule& schedule, const RunConfig& run_config,
                         const ParamVector& initial_theta, std::uint64_t seed, int n_chains);

} // namespace gibbsmap

#endif // GIBBSMAP_ANNEAL_HPP
