#ifndef GIBBSMAP_PATTERN_HPP
#define GIBBSMAP_PATTERN_HPP

#include <cstdint>
#include <vector>

#include "gibbsmap/geometry.hpp"

namespace gibbsmap {

// Sufficient statistic vector t(y). For the Strauss model this is
// [n(y), s_r(y)]; both entries are integer counts but are stored as reals so
// that empirical means of statistics are representable.
using SufficientStats = std::vector<double>;

// Finite planar point pattern inside an observation window. Immutable after
// construction; samplers mutate their own indexed copies.
class PointPattern {
public:
    explicit PointPattern(Window window) : window_(window) {}

    PointPattern(Window window, std::vector<Point> points);

    const Window& window() const { return window_; }
    const std::vector<Point>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }

private:
    Window window_;
    std::vector<Point> points_;
};

// Number of unordered pairs at Euclidean distance <= r. Exact O(n^2) count;
// no edge correction, no periodic wrap. Distance ties count as close.
long long count_close_pairs(const PointPattern& pattern, double r);

// Strauss sufficient statistics [n(y), s_r(y)].
SufficientStats suff_stats(const PointPattern& pattern, double r);

// t(y u {u}) - t(y) = [1, #points of y within r of u]. Pattern unmodified.
SufficientStats stat_delta_insert(const PointPattern& pattern, Point candidate, double r);

// t(y) - t(y \ {p_index}) = [1, #neighbors of p_index among the others].
SufficientStats stat_delta_remove(const PointPattern& pattern, std::size_t index, double r);

// Point container with a uniform-grid spatial index, used by the samplers for
// O(1)-ish neighbor counting. Counts agree bit-exactly with the O(n^2) path:
// both compare squared distances against r^2.
//
// radius == 0 disables the grid (store-only mode for models without an
// interaction range); count_within must not be called in that mode.
class IndexedPattern {
public:
    IndexedPattern(Window window, double radius);
    IndexedPattern(const PointPattern& pattern, double radius);

    const Window& window() const { return window_; }
    std::size_t size() const { return points_.size(); }
    Point point(std::size_t i) const { return points_[i]; }

    // #stored points at distance <= radius of u (u itself included when stored).
    long long count_within(Point u) const;

    void insert(Point u);
    void remove(std::size_t i);

    PointPattern to_pattern() const;

private:
    int cell_index(Point p) const;

    Window window_;
    double radius_;
    double r2_ = 0.0;
    double cell_size_ = 0.0;
    int nx_ = 0, ny_ = 0;
    std::vector<Point> points_;
    std::vector<std::int32_t> cell_of_;
    std::vector<std::vector<std::int32_t>> cells_;
};

} // namespace gibbsmap

#endif // GIBBSMAP_PATTERN_HPP
