#include "tdp/sta.hpp"

#include <limits>

#include "tdp/errors.hpp"
#include "tdp/parallel.hpp"

namespace tdp {

double net_delay(const Point& source_pos, const Point& sink_pos, double sink_cap, const DesignConstraints& constraints)
{
    const double length = manhattan(source_pos, sink_pos);
    return (constraints.r_unit * length) * (constraints.c_unit * length + sink_cap);
}

double arc_delay(const Arc& arc, const Netlist& netlist, const PinPositions& pos, const DesignConstraints& constraints)
{
    if (arc.kind == ArcKind::CellArc) return netlist.cells[static_cast<std::size_t>(arc.owner)].delay;
    return net_delay(pos[static_cast<std::size_t>(arc.from)], pos[static_cast<std::size_t>(arc.to)],
                     netlist.pins[static_cast<std::size_t>(arc.to)].load_cap, constraints);
}

namespace {

void check_levelized(const TimingGraph& graph)
{
    if (!graph.levelized || graph.level.size() != static_cast<std::size_t>(graph.num_pins))
        throw GraphError("timing graph is not levelized");
}

} // namespace

std::vector<double> propagate_arrival(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                                      const DesignConstraints& constraints, std::vector<bool>* arr_known, int threads)
{
    check_levelized(graph);
    const auto n = static_cast<std::size_t>(graph.num_pins);
    std::vector<double> arr(n, 0.0);
    std::vector<char> known(n, 0);

    for (const auto& level : graph.levels) {
        parallel_for(level.size(), threads, [&](std::size_t i) {
            const int v = level[i];
            if (graph.is_source[static_cast<std::size_t>(v)]) {
                arr[static_cast<std::size_t>(v)] = 0.0;
                known[static_cast<std::size_t>(v)] = 1;
                return;
            }
            double best = -std::numeric_limits<double>::infinity();
            bool found = false;
            for (int a : graph.in_arcs[static_cast<std::size_t>(v)]) { // ascending arc id; first max wins ties
                const Arc& arc = graph.arcs[static_cast<std::size_t>(a)];
                if (!known[static_cast<std::size_t>(arc.from)]) continue;
                const double cand = arr[static_cast<std::size_t>(arc.from)] + arc_delay(arc, netlist, pos, constraints);
                if (!found || cand > best) {
                    best = cand;
                    found = true;
                }
            }
            arr[static_cast<std::size_t>(v)] = found ? best : 0.0;
            known[static_cast<std::size_t>(v)] = found ? 1 : 0;
        });
    }

    if (arr_known) arr_known->assign(known.begin(), known.end());
    return arr;
}

std::vector<double> propagate_required(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                                       const DesignConstraints& constraints, std::vector<bool>* req_known, int threads)
{
    check_levelized(graph);
    const auto n = static_cast<std::size_t>(graph.num_pins);
    std::vector<double> req(n, constraints.clock_period);
    std::vector<char> known(n, 0);

    for (auto level = graph.levels.rbegin(); level != graph.levels.rend(); ++level) {
        parallel_for(level->size(), threads, [&](std::size_t i) {
            const int u = (*level)[i];
            double best = std::numeric_limits<double>::infinity();
            bool found = false;
            if (graph.is_endpoint[static_cast<std::size_t>(u)]) {
                best = constraints.clock_period;
                found = true;
            }
            for (int a : graph.out_arcs[static_cast<std::size_t>(u)]) {
                const Arc& arc = graph.arcs[static_cast<std::size_t>(a)];
                if (!known[static_cast<std::size_t>(arc.to)]) continue;
                const double cand = req[static_cast<std::size_t>(arc.to)] - arc_delay(arc, netlist, pos, constraints);
                if (!found || cand < best) {
                    best = cand;
                    found = true;
                }
            }
            req[static_cast<std::size_t>(u)] = found ? best : constraints.clock_period;
            known[static_cast<std::size_t>(u)] = found ? 1 : 0;
        });
    }

    if (req_known) req_known->assign(known.begin(), known.end());
    return req;
}

TimingAnnotation compute_slacks(const TimingGraph& graph, std::vector<double> arrivals, std::vector<double> required,
                                std::vector<bool> arr_known, std::vector<bool> req_known)
{
    TimingAnnotation ann;
    ann.arr = std::move(arrivals);
    ann.req = std::move(required);
    ann.arr_known = std::move(arr_known);
    ann.req_known = std::move(req_known);
    ann.slack.resize(ann.arr.size());
    for (std::size_t p = 0; p < ann.arr.size(); ++p) ann.slack[p] = ann.req[p] - ann.arr[p];
    ann.endpoint_slacks.reserve(graph.endpoints.size());
    for (int e : graph.endpoints) ann.endpoint_slacks.emplace_back(e, ann.slack[static_cast<std::size_t>(e)]);
    const auto [tns, wns] = tns_wns(ann.endpoint_slacks);
    ann.tns = tns;
    ann.wns = wns;
    return ann;
}

std::pair<double, double> tns_wns(const std::vector<std::pair<int, double>>& endpoint_slacks)
{
    double tns = 0.0;
    double wns = 0.0;
    for (const auto& [pin, slack] : endpoint_slacks) {
        if (slack < 0.0) {
            tns += slack;
            if (slack < wns) wns = slack;
        }
    }
    return {tns, wns};
}

TimingAnnotation run_sta(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                         const DesignConstraints& constraints, int threads)
{
    std::vector<bool> arr_known;
    std::vector<bool> req_known;
    auto arr = propagate_arrival(graph, netlist, pos, constraints, &arr_known, threads);
    auto req = propagate_required(graph, netlist, pos, constraints, &req_known, threads);
    return compute_slacks(graph, std::move(arr), std::move(req), std::move(arr_known), std::move(req_known));
}

} // namespace tdp
