#include "tdp/wirelength.hpp"

#include <algorithm>
#include <cmath>

namespace tdp {

namespace {

// One dimension of the WA estimator. Writes d(value)/d(coord) into grad
// (accumulating), returns the smoothed extent.
template <typename Get>
double wa_dimension(std::span<const Point> pins, double gamma, Get get, std::vector<Point>& grad, double Point::*axis)
{
    double hi = get(pins[0]);
    double lo = hi;
    for (const Point& p : pins) {
        hi = std::max(hi, get(p));
        lo = std::min(lo, get(p));
    }

    // Max-side term, anchored at hi: value = hi + T/S with t_i = x_i - hi <= 0.
    double s_max = 0.0, t_max = 0.0;
    double s_min = 0.0, t_min = 0.0;
    for (const Point& p : pins) {
        const double eu = std::exp((get(p) - hi) / gamma);
        s_max += eu;
        t_max += (get(p) - hi) * eu;
        const double el = std::exp(-(get(p) - lo) / gamma);
        s_min += el;
        t_min += (get(p) - lo) * el;
    }
    const double max_term = t_max / s_max; // relative to hi
    const double min_term = t_min / s_min; // relative to lo

    for (std::size_t i = 0; i < pins.size(); ++i) {
        const double xi = get(pins[i]);
        const double eu = std::exp((xi - hi) / gamma);
        const double el = std::exp(-(xi - lo) / gamma);
        const double d_max = (eu / s_max) * (1.0 + ((xi - hi) - max_term) / gamma);
        const double d_min = (el / s_min) * (1.0 - ((xi - lo) - min_term) / gamma);
        grad[i].*axis += d_max - d_min;
    }
    return (hi - lo) + (max_term - min_term);
}

} // namespace

NetTermGrad wa_wirelength(std::span<const Point> pin_pos, double gamma)
{
    NetTermGrad out;
    out.d_pin.assign(pin_pos.size(), Point{});
    if (pin_pos.size() < 2) return out;
    const double vx = wa_dimension(pin_pos, gamma, [](const Point& p) { return p.x; }, out.d_pin, &Point::x);
    const double vy = wa_dimension(pin_pos, gamma, [](const Point& p) { return p.y; }, out.d_pin, &Point::y);
    out.value = vx + vy;
    return out;
}

double hpwl_net(std::span<const Point> pin_pos)
{
    if (pin_pos.size() < 2) return 0.0;
    double x_lo = pin_pos[0].x, x_hi = pin_pos[0].x;
    double y_lo = pin_pos[0].y, y_hi = pin_pos[0].y;
    for (const Point& p : pin_pos) {
        x_lo = std::min(x_lo, p.x);
        x_hi = std::max(x_hi, p.x);
        y_lo = std::min(y_lo, p.y);
        y_hi = std::max(y_hi, p.y);
    }
    return (x_hi - x_lo) + (y_hi - y_lo);
}

double hpwl_total(const Netlist& netlist, const PinPositions& pos)
{
    double total = 0.0;
    std::vector<Point> buf;
    for (const Net& net : netlist.nets) {
        buf.clear();
        buf.push_back(pos[static_cast<std::size_t>(net.driver)]);
        for (int s : net.sinks) buf.push_back(pos[static_cast<std::size_t>(s)]);
        total += hpwl_net(buf);
    }
    return total;
}

} // namespace tdp
