#ifndef GIBBSMAP_GEOMETRY_HPP
#define GIBBSMAP_GEOMETRY_HPP

#include <cmath>
#include <stdexcept>

namespace gibbsmap {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double dist2(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Axis-aligned rectangular observation window. Bounds are closed: points on
// the boundary count as inside.
class Window {
public:
    Window(double x_min, double x_max, double y_min, double y_max)
        : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max) {
        if (!std::isfinite(x_min) || !std::isfinite(x_max) ||
            !std::isfinite(y_min) || !std::isfinite(y_max)) {
            throw std::invalid_argument("Window: bounds must be finite");
        }
        if (!(x_min < x_max) || !(y_min < y_max)) {
            throw std::invalid_argument("Window: require x_min < x_max and y_min < y_max");
        }
    }

    static Window unit_square() { return Window(0.0, 1.0, 0.0, 1.0); }

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double y_min() const { return y_min_; }
    double y_max() const { return y_max_; }

    double width() const { return x_max_ - x_min_; }
    double height() const { return y_max_ - y_min_; }
    double area() const { return width() * height(); }

    bool contains(Point p) const {
        return x_min_ <= p.x && p.x <= x_max_ && y_min_ <= p.y && p.y <= y_max_;
    }

    bool operator==(const Window& o) const {
        return x_min_ == o.x_min_ && x_max_ == o.x_max_ &&
               y_min_ == o.y_min_ && y_max_ == o.y_max_;
    }

private:
    double x_min_, x_max_, y_min_, y_max_;
};

} // namespace gibbsmap

#endif // GIBBSMAP_GEOMETRY_HPP
