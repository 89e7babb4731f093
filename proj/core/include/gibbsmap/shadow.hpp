#ifndef GIBBSMAP_SHADOW_HPP
#define GIBBSMAP_SHADOW_HPP

#include <utility>
#include <vector>

#include "gibbsmap/models.hpp"
#include "gibbsmap/pattern.hpp"
#include "gibbsmap/rng.hpp"
#include "gibbsmap/sampler.hpp"

namespace gibbsmap {

// Shape of the symmetric proposal neighborhood b(theta, delta/2). The box is
// the default; the indicator symmetry required by the acceptance probability
// holds for either shape, so the indicator ratio is identically 1 and never
// appears in the computation.
enum class ProposalKind { box, ball };

struct ShadowConfig {
    std::vector<double> delta;   // per-coordinate proposal widths
    long inner_steps = 200;      // m parameter updates per auxiliary refresh
    MhConfig aux;                // auxiliary-pattern MH dynamics
    ProposalKind proposal = ProposalKind::box;

    void validate() const;
};

struct ShadowState {
    ParamVector theta;
    PointPattern aux_pattern;
    SufficientStats aux_stats;
};

// State with an empty auxiliary pattern; the first sweep's refresh populates it.
ShadowState make_initial_state(const GibbsModel& model, ParamVector theta);

// psi_i uniform on [theta_i - delta_i/2, theta_i + delta_i/2], independent per
// coordinate (ball: uniform over the inscribed ellipse via rejection).
ParamVector propose(const ParamVector& theta, const std::vector<double>& delta,
                    RngStream& rng, ProposalKind kind = ProposalKind::box);

// Log of the shadow acceptance ratio,
//   (psi - theta) . (t(y) - t(x)) + log p(psi) - log p(theta).
// This is the exponential-family form of p(psi|y)/p(theta|y) * f(x|theta)c(psi)
// / (f(x|psi)c(theta)): the normalizing constants c(.) and Z(y) cancel exactly
// and are never evaluated. Returns -infinity when psi falls outside the prior
// box. theta must lie inside the box.
double shadow_log_ratio(const ParamVector& theta, const ParamVector& psi,
                        const SufficientStats& data_stats, const SufficientStats& aux_stats,
                        const PriorBox& prior);

struct SweepResult {
    ShadowState state;
    long accepted = 0; // inner proposals accepted, out of config.inner_steps
};

// One shadow sweep: refresh the auxiliary pattern with the MH dynamics at the
// sweep-entry theta, then m tempered inner updates accepting with probability
// min{1, exp(shadow_log_ratio / temperature)}. temperature = 1 is the plain
// (untempered) shadow transition.
SweepResult shadow_sweep(ShadowState state, const GibbsModel& model,
                         const SufficientStats& data_stats, const ShadowConfig& config,
                         const PriorBox& prior, double temperature, RngStream& rng);

// n_sweeps chained sweeps at temperature 1; one theta per sweep.
std::vector<ParamVector> sample_posterior(const GibbsModel& model, ParamVector initial_theta,
                                          const SufficientStats& data_stats,
                                          const ShadowConfig& config, const PriorBox& prior,
                                          long n_sweeps, RngStream& rng);

// Thinned variant: keeps (sweep index, theta) every keep_every sweeps and
// always the final sweep. keep_every = 1 keeps everything.
std::vector<std::pair<long, ParamVector>> sample_posterior_kept(
    const GibbsModel& model, ParamVector initial_theta, const SufficientStats& data_stats,
    const ShadowConfig& config, const PriorBox& prior, long n_sweeps, long keep_every,
    RngStream& rng);

} // namespace gibbsmap

#endif // GIBBSMAP_SHADOW_HPP
