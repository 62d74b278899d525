#ifndef TDP_STA_HPP
#define TDP_STA_HPP

#include <utility>
#include <vector>

#include "tdp/netlist.hpp"
#include "tdp/timing_graph.hpp"

namespace tdp {

struct TimingAnnotation {
    std::vector<double> arr;
    std::vector<double> req;
    std::vector<double> slack;
    std::vector<bool> arr_known;            // reachable from a source
    std::vector<bool> req_known;            // reaches an endpoint (or is one)
    std::vector<std::pair<int, double>> endpoint_slacks; // (pin id, slack), endpoint list order
    double tns = 0.0;
    double wns = 0.0;
};

// Two-node RC segment: R = r_unit * L, downstream C = c_unit * L + sink_cap,
// L = Manhattan length. Quadratic in L when sink_cap is 0.
double net_delay(const Point& source_pos, const Point& sink_pos, double sink_cap, const DesignConstraints& constraints);

double arc_delay(const Arc& arc, const Netlist& netlist, const PinPositions& pos, const DesignConstraints& constraints);

// Forward max-propagation from the source set. Pins unreachable from every
// source get arr = 0 and arr_known = false. On equal-delay fan-in the lowest
// arc id wins, so the result is independent of worker count.
std::vector<double> propagate_arrival(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                                      const DesignConstraints& constraints, std::vector<bool>* arr_known = nullptr,
                                      int threads = 1);

// Backward min-propagation from the endpoint set; req = clock_period at
// endpoints, clock_period (flagged) at pins that reach no endpoint.
std::vector<double> propagate_required(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                                       const DesignConstraints& constraints, std::vector<bool>* req_known = nullptr,
                                       int threads = 1);

TimingAnnotation compute_slacks(const TimingGraph& graph, std::vector<double> arrivals, std::vector<double> required,
                                std::vector<bool> arr_known, std::vector<bool> req_known);

// V = endpoints with slack < 0; wns = min over V, tns = sum over V, both 0
// when V is empty.
std::pair<double, double> tns_wns(const std::vector<std::pair<int, double>>& endpoint_slacks);

// Full STA pass for one placement snapshot.
TimingAnnotation run_sta(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                         const DesignConstraints& constraints, int threads = 1);

} // namespace tdp

#endif
