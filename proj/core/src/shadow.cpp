#include "gibbsmap/shadow.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gibbsmap {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

} // namespace

void ShadowConfig::validate() const {
    if (delta.empty()) {
        throw std::invalid_argument("ShadowConfig: delta must be non-empty");
    }
    for (double d : delta) {
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw std::invalid_argument("ShadowConfig: every delta component must be > 0");
        }
    }
    if (inner_steps < 1) {
        throw std::invalid_argument("ShadowConfig: inner step count m must be >= 1");
    }
    aux.validate();
}

ShadowState make_initial_state(const GibbsModel& model, ParamVector theta) {
    PointPattern empty(model_window(model));
    SufficientStats stats = model_stats(model, empty);
    return {std::move(theta), std::move(empty), std::move(stats)};
}

ParamVector propose(const ParamVector& theta, const std::vector<double>& delta,
                    RngStream& rng, ProposalKind kind) {
    if (theta.size() != delta.size()) {
        throw std::domain_error("propose: theta/delta length mismatch");
    }
    ParamVector psi(theta.size());
    if (kind == ProposalKind::box) {
        for (std::size_t i = 0; i < theta.size(); ++i) {
            psi[i] = theta[i] + delta[i] * (rng.uniform01() - 0.5);
        }
        return psi;
    }
    // Uniform over the axis-aligned ellipse inscribed in the delta box.
    std::vector<double> u(theta.size());
    for (;;) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] = 2.0 * rng.uniform01() - 1.0;
            norm2 += u[i] * u[i];
        }
        if (norm2 <= 1.0) break;
    }
    for (std::size_t i = 0; i < theta.size(); ++i) {
        psi[i] = theta[i] + 0.5 * delta[i] * u[i];
    }
    return psi;
}

double shadow_log_ratio(const ParamVector& theta, const ParamVector& psi,
                        const SufficientStats& data_stats, const SufficientStats& aux_stats,
                        const PriorBox& prior) {
    const std::size_t dim = prior.dim();
    if (theta.size() != dim || psi.size() != dim || data_stats.size() != dim ||
        aux_stats.size() != dim) {
        throw std::domain_error("shadow_log_ratio: vector length mismatch");
    }
    const double log_prior_psi = prior.log_density(psi);
    if (log_prior_psi == kNegInf) return kNegInf;
    const double log_prior_theta = prior.log_density(theta);
    if (log_prior_theta == kNegInf) {
        throw std::invalid_argument("shadow_log_ratio: theta outside the prior box");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        s += (psi[i] - theta[i]) * (data_stats[i] - aux_stats[i]);
    }
    // grouping the prior terms keeps antisymmetry in (theta, psi) exact and
    // cancels a constant prior density without rounding residue
    return s + (log_prior_psi - log_prior_theta);
}

SweepResult shadow_sweep(ShadowState state, const GibbsModel& model,
                         const SufficientStats& data_stats, const ShadowConfig& config,
                         const PriorBox& prior, double temperature, RngStream& rng) {
    config.validate();
    if (!(temperature > 0.0)) {
        throw std::invalid_argument("shadow_sweep: temperature must be > 0");
    }
    // Step 1: x ~ p(.|theta_0) via the auxiliary MH dynamics, persistent chain.
    AuxSample aux = run_aux_chain(model, state.theta, state.aux_pattern, config.aux, rng);
    state.aux_pattern = std::move(aux.pattern);
    state.aux_stats = std::move(aux.stats);

    long accepted = 0;
    for (long k = 0; k < config.inner_steps; ++k) {
        ParamVector psi = propose(state.theta, config.delta, rng, config.proposal);
        const double log_ratio =
            shadow_log_ratio(state.theta, psi, data_stats, state.aux_stats, prior);
        const double tempered = log_ratio / temperature;
        if (tempered >= 0.0 || std::log(rng.open01()) < tempered) {
            state.theta = std::move(psi);
            ++accepted;
        }
    }
    return {std::move(state), accepted};
}

std::vector<std::pair<long, ParamVector>> sample_posterior_kept(
    const GibbsModel& model, ParamVector initial_theta, const SufficientStats& data_stats,
    const ShadowConfig& config, const PriorBox& prior, long n_sweeps, long keep_every,
    RngStream& rng) {
    if (n_sweeps < 1) {
        throw std::invalid_argument("sample_posterior: n_sweeps must be >= 1");
    }
    if (keep_every < 1 || keep_every > n_sweeps) {
        throw std::invalid_argument("sample_posterior: keep_every must lie in [1, n_sweeps]");
    }
    if (!prior.contains(initial_theta)) {
        throw std::invalid_argument("sample_posterior: initial theta outside the prior box");
    }
    ShadowState state = make_initial_state(model, std::move(initial_theta));
    std::vector<std::pair<long, ParamVector>> kept;
    kept.reserve(static_cast<std::size_t>(n_sweeps / keep_every) + 1);
    for (long sweep = 1; sweep <= n_sweeps; ++sweep) {
        SweepResult res =
            shadow_sweep(std::move(state), model, data_stats, config, prior, 1.0, rng);
        state = std::move(res.state);
        if (sweep % keep_every == 0 || sweep == n_sweeps) {
            kept.emplace_back(sweep, state.theta);
        }
    }
    return kept;
}

std::vector<ParamVector> sample_posterior(const GibbsModel& model, ParamVector initial_theta,
                                          const SufficientStats& data_stats,
                                          const ShadowConfig& config, const PriorBox& prior,
                                          long n_sweeps, RngStream& rng) {
    auto kept = sample_posterior_kept(model, std::move(initial_theta), data_stats, config,
                                      prior, n_sweeps, 1, rng);
    std::vector<ParamVector> thetas;
    thetas.reserve(kept.size());
    for (auto& [sweep, theta] : kept) thetas.push_back(std::move(theta));
    return thetas;
}

} // namespace gibbsmap
