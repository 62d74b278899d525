#ifndef TDP_GEOMETRY_HPP
#define TDP_GEOMETRY_HPP

#include <cmath>

namespace tdp {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;

    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
};

inline double manhattan(const Point& a, const Point& b)
{
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

struct Rect {
    double x_lo = 0.0;
    double y_lo = 0.0;
    double x_hi = 0.0;
    double y_hi = 0.0;

    bool operator==(const Rect&) const = default;

    double width() const { return x_hi - x_lo; }
    double height() const { return y_hi - y_lo; }
    // Larger of the two side lengths; scale reference for gamma and step sizes.
    double span() const { return width() > height() ? width() : height(); }
    bool contains(const Rect& r) const
    {
        return r.x_lo >= x_lo && r.y_lo >= y_lo && r.x_hi <= x_hi && r.y_hi <= y_hi;
    }
    bool nondegenerate() const { return x_hi > x_lo && y_hi > y_lo; }
};

} // namespace tdp

#endif
