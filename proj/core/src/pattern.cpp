#include "gibbsmap/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gibbsmap {

namespace {

void check_radius(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("interaction radius must be a finite positive real");
    }
}

} // namespace

PointPattern::PointPattern(Window window, std::vector<Point> points)
    : window_(window), points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!window_.contains(points_[i])) {
            throw std::domain_error("PointPattern: point " + std::to_string(i) +
                                    " lies outside the window");
        }
    }
}

long long count_close_pairs(const PointPattern& pattern, double r) {
    check_radius(r);
    const auto& pts = pattern.points();
    const double r2 = r * r;
    long long count = 0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (dist2(pts[i], pts[j]) <= r2) ++count;
        }
    }
    return count;
}

SufficientStats suff_stats(const PointPattern& pattern, double r) {
    return {static_cast<double>(pattern.size()),
            static_cast<double>(count_close_pairs(pattern, r))};
}

SufficientStats stat_delta_insert(const PointPattern& pattern, Point candidate, double r) {
    check_radius(r);
    if (!pattern.window().contains(candidate)) {
        throw std::domain_error("stat_delta_insert: candidate outside the window");
    }
    const double r2 = r * r;
    long long k = 0;
    for (const Point& p : pattern.points()) {
        if (dist2(p, candidate) <= r2) ++k;
    }
    return {1.0, static_cast<double>(k)};
}

SufficientStats stat_delta_remove(const PointPattern& pattern, std::size_t index, double r) {
    check_radius(r);
    if (index >= pattern.size()) {
        throw std::domain_error("stat_delta_remove: index " + std::to_string(index) +
                                " out of range for pattern of size " +
                                std::to_string(pattern.size()));
    }
    const auto& pts = pattern.points();
    const double r2 = r * r;
    long long k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i != index && dist2(pts[i], pts[index]) <= r2) ++k;
    }
    return {1.0, static_cast<double>(k)};
}

IndexedPattern::IndexedPattern(Window window, double radius)
    : window_(window), radius_(radius) {
    if (radius_ < 0.0 || !std::isfinite(radius_)) {
        throw std::invalid_argument("IndexedPattern: radius must be finite and >= 0");
    }
    if (radius_ > 0.0) {
        r2_ = radius_ * radius_;
        // Cells at least r wide so a 3x3 block covers every neighbor; capped
        // so tiny radii cannot blow up the grid.
        constexpr int kMaxCellsPerAxis = 2048;
        cell_size_ = std::max({radius_, window_.width() / kMaxCellsPerAxis,
                               window_.height() / kMaxCellsPerAxis});
        nx_ = static_cast<int>(std::floor(window_.width() / cell_size_)) + 1;
        ny_ = static_cast<int>(std::floor(window_.height() / cell_size_)) + 1;
        cells_.resize(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_));
    }
}

IndexedPattern::IndexedPattern(const PointPattern& pattern, double radius)
    : IndexedPattern(pattern.window(), radius) {
    for (const Point& p : pattern.points()) insert(p);
}

int IndexedPattern::cell_index(Point p) const {
    int ix = static_cast<int>(std::floor((p.x - window_.x_min()) / cell_size_));
    int iy = static_cast<int>(std::floor((p.y - window_.y_min()) / cell_size_));
    ix = std::clamp(ix, 0, nx_ - 1);
    iy = std::clamp(iy, 0, ny_ - 1);
    return iy * nx_ + ix;
}

long long IndexedPattern::count_within(Point u) const {
    if (radius_ <= 0.0) {
        throw std::logic_error("IndexedPattern: count_within requires a positive radius");
    }
    const int ix = std::clamp(
        static_cast<int>(std::floor((u.x - window_.x_min()) / cell_size_)), 0, nx_ - 1);
    const int iy = std::clamp(
        static_cast<int>(std::floor((u.y - window_.y_min()) / cell_size_)), 0, ny_ - 1);
    long long count = 0;
    for (int cy = std::max(0, iy - 1); cy <= std::min(ny_ - 1, iy + 1); ++cy) {
        for (int cx = std::max(0, ix - 1); cx <= std::min(nx_ - 1, ix + 1); ++cx) {
            for (std::int32_t idx : cells_[static_cast<std::size_t>(cy) * nx_ + cx]) {
                if (dist2(points_[static_cast<std::size_t>(idx)], u) <= r2_) ++count;
            }
        }
    }
    return count;
}

void IndexedPattern::insert(Point u) {
    if (!window_.contains(u)) {
        throw std::domain_error("IndexedPattern: point outside the window");
    }
    const auto idx = static_cast<std::int32_t>(points_.size());
    points_.push_back(u);
    if (radius_ > 0.0) {
        const int ci = cell_index(u);
        cell_of_.push_back(ci);
        cells_[static_cast<std::size_t>(ci)].push_back(idx);
    }
}

void IndexedPattern::remove(std::size_t i) {
    if (i >= points_.size()) {
        throw std::out_of_range("IndexedPattern: remove index out of range");
    }
    const std::size_t last = points_.size() - 1;
    if (radius_ > 0.0) {
        auto& bucket = cells_[static_cast<std::size_t>(cell_of_[i])];
        auto it = std::find(bucket.begin(), bucket.end(), static_cast<std::int32_t>(i));
        *it = bucket.back();
        bucket.pop_back();
        if (i != last) {
            auto& last_bucket = cells_[static_cast<std::size_t>(cell_of_[last])];
            auto jt = std::find(last_bucket.begin(), last_bucket.end(),
                                static_cast<std::int32_t>(last));
            *jt = static_cast<std::int32_t>(i);
            cell_of_[i] = cell_of_[last];
        }
        cell_of_.pop_back();
    }
    if (i != last) points_[i] = points_[last];
    points_.pop_back();
}

PointPattern IndexedPattern::to_pattern() const {
    return PointPattern(window_, points_);
}

} // namespace gibbsmap
