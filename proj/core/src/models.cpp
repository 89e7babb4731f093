#include "gibbsmap/models.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gibbsmap {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw std::domain_error("dot: vector lengths differ");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

StraussModel::StraussModel(double interaction_radius, Window window)
    : radius_(interaction_radius), window_(window) {
    if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
        throw std::invalid_argument("StraussModel: interaction radius must be positive");
    }
}

SufficientStats StraussModel::stats(const PointPattern& pattern) const {
    return suff_stats(pattern, radius_);
}

PoissonModel::PoissonModel(Window window) : window_(window) {}

SufficientStats PoissonModel::stats(const PointPattern& pattern) const {
    return {static_cast<double>(pattern.size())};
}

const Window& model_window(const GibbsModel& model) {
    return std::visit([](const auto& m) -> const Window& { return m.window(); }, model);
}

std::size_t model_dim(const GibbsModel& model) {
    return std::visit([](const auto& m) { return m.dim(); }, model);
}

SufficientStats model_stats(const GibbsModel& model, const PointPattern& pattern) {
    return std::visit([&](const auto& m) { return m.stats(pattern); }, model);
}

double log_unnormalized_density(const GibbsModel& model, const ParamVector& theta,
                                const SufficientStats& stats) {
    if (theta.size() != model_dim(model) || stats.size() != theta.size()) {
        throw std::domain_error("log_unnormalized_density: parameter/statistic length mismatch");
    }
    return dot(theta, stats);
}

double log_conditional_intensity(const GibbsModel& model, const ParamVector& theta,
                                 const PointPattern& pattern, Point candidate) {
    if (theta.size() != model_dim(model)) {
        throw std::domain_error("log_conditional_intensity: parameter length mismatch");
    }
    if (!model_window(model).contains(candidate)) {
        throw std::domain_error("log_conditional_intensity: candidate outside the window");
    }
    if (const auto* strauss = std::get_if<StraussModel>(&model)) {
        const double r2 = strauss->interaction_radius() * strauss->interaction_radius();
        long long k = 0;
        for (const Point& p : pattern.points()) {
            if (dist2(p, candidate) <= r2) ++k;
        }
        return theta[0] + theta[1] * static_cast<double>(k);
    }
    return theta[0];
}

double poisson_log_normalizing(const PoissonModel& model, const ParamVector& theta) {
    if (theta.size() != 1) {
        throw std::domain_error("poisson_log_normalizing: theta must have one component");
    }
    return model.window().area() * (std::exp(theta[0]) - 1.0);
}

PriorBox::PriorBox(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty() || lower_.size() != upper_.size()) {
        throw std::invalid_argument("PriorBox: bound vectors must be non-empty and equal length");
    }
    log_volume_ = 0.0;
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i])) {
            throw std::invalid_argument("PriorBox: require finite lower_i < upper_i");
        }
        log_volume_ += std::log(upper_[i] - lower_[i]);
    }
}

bool PriorBox::contains(const ParamVector& theta) const {
    if (theta.size() != lower_.size()) {
        throw std::domain_error("PriorBox: parameter length mismatch");
    }
    for (std::size_t i = 0; i < theta.size(); ++i) {
        if (theta[i] < lower_[i] || theta[i] > upper_[i]) return false;
    }
    return true;
}

double PriorBox::log_density(const ParamVector& theta) const {
    if (!contains(theta)) return -std::numeric_limits<double>::infinity();
    return -log_volume_;
}

} // namespace gibbsmap
