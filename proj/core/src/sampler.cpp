#include "gibbsmap/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace gibbsmap {

namespace {

void check_theta(const GibbsModel& model, const ParamVector& theta) {
    if (theta.size() != model_dim(model)) {
        throw std::invalid_argument("sampler: parameter length does not match model");
    }
    for (double t : theta) {
        if (!std::isfinite(t)) {
            throw std::invalid_argument("sampler: parameter components must be finite");
        }
    }
    // gamma > 1 makes the Strauss density non-integrable; refuse to sample it.
    if (std::holds_alternative<StraussModel>(model) && theta[1] > 0.0) {
        throw std::invalid_argument("sampler: Strauss log gamma must be <= 0");
    }
}

} // namespace

void MhConfig::validate() const {
    if (steps < 1) {
        throw std::invalid_argument("MhConfig: steps must be >= 1");
    }
    if (!(birth_probability > 0.0) || !(birth_probability < 1.0)) {
        throw std::invalid_argument("MhConfig: birth_probability must lie in (0,1)");
    }
}

double birth_log_ratio(double log_lambda, std::size_t n, double area,
                       double birth_probability) {
    const double log_q = std::log(birth_probability / (1.0 - birth_probability));
    return log_lambda + std::log(area) - std::log(static_cast<double>(n + 1)) - log_q;
}

double death_log_ratio(double log_lambda, std::size_t n, double area,
                       double birth_probability) {
    const double log_q = std::log(birth_probability / (1.0 - birth_probability));
    return std::log(static_cast<double>(n)) + log_q - log_lambda - std::log(area);
}

MhChain::MhChain(const GibbsModel& model, ParamVector theta, const PointPattern& initial,
                 MhConfig config)
    : theta_(std::move(theta)),
      config_(config),
      strauss_(std::holds_alternative<StraussModel>(model)),
      area_(model_window(model).area()),
      pattern_(initial,
               strauss_ ? std::get<StraussModel>(model).interaction_radius() : 0.0) {
    config_.validate();
    check_theta(model, theta_);
    if (!(initial.window() == model_window(model))) {
        throw std::invalid_argument("MhChain: pattern window does not match model window");
    }
    log_area_ = std::log(area_);
    log_q_ratio_ = std::log(config_.birth_probability / (1.0 - config_.birth_probability));
    stats_ = model_stats(model, initial);
}

void MhChain::step(RngStream& rng) {
    const Window& w = pattern_.window();
    if (rng.uniform01() < config_.birth_probability) {
        const Point u{rng.uniform(w.x_min(), w.x_max()), rng.uniform(w.y_min(), w.y_max())};
        const long long k = strauss_ ? pattern_.count_within(u) : 0;
        const double log_lambda =
            theta_[0] + (strauss_ ? theta_[1] * static_cast<double>(k) : 0.0);
        const double log_ratio = log_lambda + log_area_ -
                                 std::log(static_cast<double>(pattern_.size() + 1)) -
                                 log_q_ratio_;
        if (log_ratio >= 0.0 || std::log(rng.open01()) < log_ratio) {
            pattern_.insert(u);
            stats_[0] += 1.0;
            if (strauss_) stats_[1] += static_cast<double>(k);
        }
    } else {
        const std::size_t n = pattern_.size();
        if (n == 0) return; // automatic rejection
        const std::size_t i = rng.uniform_index(n);
        const Point p = pattern_.point(i);
        // count_within includes p itself (distance zero).
        const long long k = strauss_ ? pattern_.count_within(p) - 1 : 0;
        const double log_lambda =
            theta_[0] + (strauss_ ? theta_[1] * static_cast<double>(k) : 0.0);
        const double log_ratio = std::log(static_cast<double>(n)) + log_q_ratio_ -
                                 log_lambda - log_area_;
        if (log_ratio >= 0.0 || std::log(rng.open01()) < log_ratio) {
            pattern_.remove(i);
            stats_[0] -= 1.0;
            if (strauss_) stats_[1] -= static_cast<double>(k);
        }
    }
}

void MhChain::run(long steps, RngStream& rng) {
    for (long s = 0; s < steps; ++s) step(rng);
}

PointPattern mh_step(const GibbsModel& model, const ParamVector& theta,
                     const PointPattern& pattern, const MhConfig& config, RngStream& rng) {
    MhChain chain(model, theta, pattern, config);
    chain.step(rng);
    return chain.pattern();
}

PointPattern sample_auxiliary(const GibbsModel& model, const ParamVector& theta,
                              const PointPattern& initial, const MhConfig& config,
                              RngStream& rng) {
    return run_aux_chain(model, theta, initial, config, rng).pattern;
}

AuxSample run_aux_chain(const GibbsModel& model, const ParamVector& theta,
                        const PointPattern& initial, const MhConfig& config, RngStream& rng) {
    MhChain chain(model, theta, initial, config);
    chain.run(config.steps, rng);
    return {chain.pattern(), chain.stats()};
}

std::vector<SufficientStats> reference_sample_stats(const GibbsModel& model,
                                                    const ParamVector& theta, long burn_in,
                                                    long n_samples, long spacing,
                                                    RngStream& rng, const MhConfig& config,
                                                    PointPattern* final_pattern) {
    if (burn_in < 1 || n_samples < 1 || spacing < 1) {
        throw std::invalid_argument("reference_stats: burn_in, n_samples, spacing must be >= 1");
    }
    MhChain chain(model, theta, PointPattern(model_window(model)), config);
    chain.run(burn_in, rng);
    std::vector<SufficientStats> samples;
    samples.reserve(static_cast<std::size_t>(n_samples));
    for (long s = 0; s < n_samples; ++s) {
        if (s > 0) chain.run(spacing, rng);
        samples.push_back(chain.stats());
    }
    if (final_pattern != nullptr) *final_pattern = chain.pattern();
    return samples;
}

SufficientStats reference_stats(const GibbsModel& model, const ParamVector& theta,
                                long burn_in, long n_samples, long spacing, RngStream& rng,
                                const MhConfig& config) {
    const auto samples =
        reference_sample_stats(model, theta, burn_in, n_samples, spacing, rng, config);
    SufficientStats mean(samples.front().size(), 0.0);
    for (const auto& s : samples) {
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += s[i];
    }
    for (double& m : mean) m /= static_cast<double>(samples.size());
    return mean;
}

} // namespace gibbsmap
