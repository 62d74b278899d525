#ifndef TDP_WIRELENGTH_HPP
#define TDP_WIRELENGTH_HPP

#include <span>
#include <vector>

#include "tdp/netlist.hpp"

namespace tdp {

struct NetTermGrad {
    double value = 0.0;
    std::vector<Point> d_pin; // per net pin, same order as the pins span
};

// Weighted-average smoothed HPWL of one net, per dimension:
//   (sum x*e^{x/g})/(sum e^{x/g}) - (sum x*e^{-x/g})/(sum e^{-x/g})
// Exponents are shifted by the max/min before evaluation, which also makes
// the value exactly translation invariant. Satisfies
//   0 <= HPWL - WA <= 2*gamma*ln(p) per dimension.
NetTermGrad wa_wirelength(std::span<const Point> pin_pos, double gamma);

double hpwl_net(std::span<const Point> pin_pos);

// Exact HPWL over all nets of the netlist at the given pin positions.
double hpwl_total(const Netlist& netlist, const PinPositions& pos);

} // namespace tdp

#endif
