#ifndef GIBBSMAP_MODELS_HPP
#define GIBBSMAP_MODELS_HPP

#include <cstddef>
#include <variant>
#include <vector>

#include "gibbsmap/geometry.hpp"
#include "gibbsmap/pattern.hpp"

namespace gibbsmap {

// Natural parameter vector of the exponential-family density
// f(y|theta) = exp(theta . t(y)). For Strauss, theta = (log beta, log gamma).
using ParamVector = std::vector<double>;

double dot(const std::vector<double>& a, const std::vector<double>& b);

// Strauss pairwise-interaction process: f(y) ~ beta^n(y) * gamma^s_r(y).
// theta_2 = log gamma must be <= 0 wherever a realization is sampled; the
// density is non-integrable for gamma > 1.
class StraussModel {
public:
    StraussModel(double interaction_radius, Window window);

    double interaction_radius() const { return radius_; }
    const Window& window() const { return window_; }
    std::size_t dim() const { return 2; }

    SufficientStats stats(const PointPattern& pattern) const;

private:
    double radius_;
    Window window_;
};

// Homogeneous Poisson process, f(y) ~ exp(theta * n(y)) with respect to the
// unit-rate reference. The one model whose normalizing constant is known in
// closed form; used as the oracle in posterior-equivalence tests.
class PoissonModel {
public:
    explicit PoissonModel(Window window);

    const Window& window() const { return window_; }
    std::size_t dim() const { return 1; }

    SufficientStats stats(const PointPattern& pattern) const;

private:
    Window window_;
};

using GibbsModel = std::variant<StraussModel, PoissonModel>;

const Window& model_window(const GibbsModel& model);
std::size_t model_dim(const GibbsModel& model);
SufficientStats model_stats(const GibbsModel& model, const PointPattern& pattern);

// theta . t(y), the log of the unnormalized density exp(-U(y|theta)).
double log_unnormalized_density(const GibbsModel& model, const ParamVector& theta,
                                const SufficientStats& stats);

// Papangelou conditional intensity log lambda(u; y) = log f(y u {u}) - log f(y).
// For Strauss: theta_1 + theta_2 * #{points of y within r of u}.
double log_conditional_intensity(const GibbsModel& model, const ParamVector& theta,
                                 const PointPattern& pattern, Point candidate);

// log c(theta) = |W| (e^theta - 1) for the Poisson model. Test oracle only:
// no sampling code path evaluates a normalizing constant.
double poisson_log_normalizing(const PoissonModel& model, const ParamVector& theta);

// Uniform prior over a closed axis-aligned box in parameter space.
class PriorBox {
public:
    PriorBox(std::vector<double> lower, std::vector<double> upper);

    std::size_t dim() const { return lower_.size(); }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }

    bool contains(const ParamVector& theta) const;

    // -sum_i log(upper_i - lower_i) inside the closed box, -infinity outside.
    double log_density(const ParamVector& theta) const;

private:
    std::vector<double> lower_, upper_;
    double log_volume_;
};

} // namespace gibbsmap

#endif // GIBBSMAP_MODELS_HPP
