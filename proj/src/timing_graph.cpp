#include "tdp/timing_graph.hpp"

#include <algorithm>
#include <queue>

#include "tdp/errors.hpp"

namespace tdp {

namespace {

[[noreturn]] void report_cycle(const Netlist& netlist, const TimingGraph& graph, const std::vector<int>& indeg)
{
    // Every remaining node lies on or feeds a cycle; walk predecessors among
    // the remaining set until a pin repeats.
    const auto n = static_cast<std::size_t>(graph.num_pins);
    std::vector<bool> remaining(n, false);
    int start = -1;
    for (std::size_t p = 0; p < n; ++p) {
        if (indeg[p] > 0) {
            remaining[p] = true;
            start = static_cast<int>(p);
        }
    }
    std::vector<int> seen_at(n, -1);
    std::vector<int> walk;
    int cur = start;
    while (seen_at[static_cast<std::size_t>(cur)] < 0) {
        seen_at[static_cast<std::size_t>(cur)] = static_cast<int>(walk.size());
        walk.push_back(cur);
        for (int a : graph.in_arcs[static_cast<std::size_t>(cur)]) {
            const int u = graph.arcs[static_cast<std::size_t>(a)].from;
            if (remaining[static_cast<std::size_t>(u)]) {
                cur = u;
                break;
            }
        }
    }
    std::string msg;
    for (std::size_t i = static_cast<std::size_t>(seen_at[static_cast<std::size_t>(cur)]); i < walk.size(); ++i) {
        if (!msg.empty()) msg += " <- ";
        msg += netlist.pins[static_cast<std::size_t>(walk[i])].name;
    }
    throw CycleError(msg);
}

} // namespace

TimingGraph build_timing_graph(const Netlist& netlist)
{
    TimingGraph graph;
    graph.num_pins = static_cast<int>(netlist.pins.size());
    graph.sources = netlist.sources;
    graph.endpoints = netlist.endpoints;
    graph.is_source = netlist.pin_is_source;
    graph.is_endpoint = netlist.pin_is_endpoint;
    if (graph.is_source.empty()) graph.is_source.assign(netlist.pins.size(), false);
    if (graph.is_endpoint.empty()) graph.is_endpoint.assign(netlist.pins.size(), false);

    for (std::size_t n = 0; n < netlist.nets.size(); ++n) {
        for (int s : netlist.nets[n].sinks)
            graph.arcs.push_back(Arc{netlist.nets[n].driver, s, ArcKind::NetArc, static_cast<int>(n)});
    }
    graph.num_net_arcs = static_cast<int>(graph.arcs.size());

    for (std::size_t c = 0; c < netlist.cells.size(); ++c) {
        for (int in : netlist.cell_pins[c]) {
            if (netlist.pins[static_cast<std::size_t>(in)].dir != PinDir::Input) continue;
            if (graph.is_endpoint[static_cast<std::size_t>(in)]) continue; // register data input
            for (int out : netlist.cell_pins[c]) {
                if (netlist.pins[static_cast<std::size_t>(out)].dir != PinDir::Output) continue;
                if (graph.is_source[static_cast<std::size_t>(out)]) continue; // register output
                graph.arcs.push_back(Arc{in, out, ArcKind::CellArc, static_cast<int>(c)});
            }
        }
    }
    graph.num_cell_arcs = static_cast<int>(graph.arcs.size()) - graph.num_net_arcs;

    const auto n = static_cast<std::size_t>(graph.num_pins);
    graph.in_arcs.assign(n, {});
    graph.out_arcs.assign(n, {});
    for (std::size_t a = 0; a < graph.arcs.size(); ++a) {
        graph.out_arcs[static_cast<std::size_t>(graph.arcs[a].from)].push_back(static_cast<int>(a));
        graph.in_arcs[static_cast<std::size_t>(graph.arcs[a].to)].push_back(static_cast<int>(a));
    }

    // Kahn levelization; level(v) = longest path from any in-degree-0 pin.
    std::vector<int> indeg(n, 0);
    for (std::size_t p = 0; p < n; ++p) indeg[p] = static_cast<int>(graph.in_arcs[p].size());
    graph.level.assign(n, 0);
    std::vector<int> order;
    order.reserve(n);
    for (std::size_t p = 0; p < n; ++p)
        if (indeg[p] == 0) order.push_back(static_cast<int>(p));
    for (std::size_t head = 0; head < order.size(); ++head) {
        const int u = order[head];
        for (int a : graph.out_arcs[static_cast<std::size_t>(u)]) {
            const int v = graph.arcs[static_cast<std::size_t>(a)].to;
            graph.level[static_cast<std::size_t>(v)] =
                std::max(graph.level[static_cast<std::size_t>(v)], graph.level[static_cast<std::size_t>(u)] + 1);
            if (--indeg[static_cast<std::size_t>(v)] == 0) order.push_back(v);
        }
    }
    if (order.size() != n) report_cycle(netlist, graph, indeg);

    int max_level = 0;
    for (std::size_t p = 0; p < n; ++p) max_level = std::max(max_level, graph.level[p]);
    graph.levels.assign(static_cast<std::size_t>(max_level) + 1, {});
    for (std::size_t p = 0; p < n; ++p) graph.levels[static_cast<std::size_t>(graph.level[p])].push_back(static_cast<int>(p));
    graph.levelized = true;

    // Endpoint reachability from the source set.
    std::vector<bool> reach(n, false);
    std::vector<int> stack;
    for (int s : graph.sources) {
        if (!reach[static_cast<std::size_t>(s)]) {
            reach[static_cast<std::size_t>(s)] = true;
            stack.push_back(s);
        }
    }
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int a : graph.out_arcs[static_cast<std::size_t>(u)]) {
            const int v = graph.arcs[static_cast<std::size_t>(a)].to;
            if (!reach[static_cast<std::size_t>(v)]) {
                reach[static_cast<std::size_t>(v)] = true;
                stack.push_back(v);
            }
        }
    }
    for (int e : graph.endpoints)
        if (!reach[static_cast<std::size_t>(e)])
            throw ValidationError("endpoint \"" + netlist.pins[static_cast<std::size_t>(e)].name +
                                  "\" unreachable from every source");

    return graph;
}

} // namespace tdp
