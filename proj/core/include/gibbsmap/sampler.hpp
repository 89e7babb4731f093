#ifndef GIBBSMAP_SAMPLER_HPP
#define GIBBSMAP_SAMPLER_HPP

#include <cstddef>
#include <vector>

#include "gibbsmap/models.hpp"
#include "gibbsmap/pattern.hpp"
#include "gibbsmap/rng.hpp"

namespace gibbsmap {

struct MhConfig {
    long steps = 100;
    double birth_probability = 0.5;

    void validate() const;
};

// Log acceptance ratios of the birth/death Metropolis-Hastings kernel.
// log_lambda is the log Papangelou intensity of the point being added
// (birth, with n current points) or removed (death, from n current points,
// intensity evaluated against the pattern without it).
//   birth: lambda * |W| / ((n + 1) * q_ratio)
//   death: n * q_ratio / (lambda * |W|)
// with q_ratio = birth_probability / (1 - birth_probability).
double birth_log_ratio(double log_lambda, std::size_t n, double area, double birth_probability);
double death_log_ratio(double log_lambda, std::size_t n, double area, double birth_probability);

// Single birth/death chain. Maintains the pattern in a grid index together
// with its sufficient statistics, updated incrementally per transition.
// Strictly sequential; one RngStream per chain.
class MhChain {
public:
    MhChain(const GibbsModel& model, ParamVector theta, const PointPattern& initial,
            MhConfig config);

    void step(RngStream& rng);
    void run(long steps, RngStream& rng);

    std::size_t size() const { return pattern_.size(); }
    const SufficientStats& stats() const { return stats_; }
    PointPattern pattern() const { return pattern_.to_pattern(); }

private:
    ParamVector theta_;
    MhConfig config_;
    bool strauss_;
    double area_;
    double log_area_;
    double log_q_ratio_;
    IndexedPattern pattern_;
    SufficientStats stats_;
};

// One birth-or-death MH transition; returns the (possibly unchanged) pattern.
PointPattern mh_step(const GibbsModel& model, const ParamVector& theta,
                     const PointPattern& pattern, const MhConfig& config, RngStream& rng);

// config.steps transitions starting from `initial`. Callers chain the
// returned pattern back in as the next initial pattern (persistent-chain
// convention for the shadow dynamics).
PointPattern sample_auxiliary(const GibbsModel& model, const ParamVector& theta,
                              const PointPattern& initial, const MhConfig& config,
                              RngStream& rng);

struct AuxSample {
    PointPattern pattern;
    SufficientStats stats;
};

// Same chain as sample_auxiliary but hands back the incrementally maintained
// statistics along with the pattern.
AuxSample run_aux_chain(const GibbsModel& model, const ParamVector& theta,
                        const PointPattern& initial, const MhConfig& config, RngStream& rng);

// Long-run estimate of E_theta[t(Y)]: burn_in steps from the empty pattern,
// then n_samples statistics collected every `spacing` steps (first sample
// right after burn-in). Stands in for perfect simulation when generating
// reference data.
SufficientStats reference_stats(const GibbsModel& model, const ParamVector& theta,
                                long burn_in, long n_samples, long spacing, RngStream& rng,
                                const MhConfig& config = MhConfig{});

// Per-sample statistics behind reference_stats; optionally hands out the
// final pattern of the chain.
std::vector<SufficientStats> reference_sample_stats(const GibbsModel& model,
                                                    const ParamVector& theta, long burn_in,
                                                    long n_samples, long spacing,
                                                    RngStream& rng,
                                                    const MhConfig& config = MhConfig{},
                                                    PointPattern* final_pattern = nullptr);

} // namespace gibbsmap

#endif // GIBBSMAP_SAMPLER_HPP
