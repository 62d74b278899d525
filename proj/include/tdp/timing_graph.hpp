#ifndef TDP_TIMING_GRAPH_HPP
#define TDP_TIMING_GRAPH_HPP

#include <vector>

#include "tdp/netlist.hpp"

namespace tdp {

enum class ArcKind { NetArc, CellArc };

struct Arc {
    int from = -1;              // pin id
    int to = -1;                // pin id
    ArcKind kind = ArcKind::NetArc;
    int owner = -1;             // net id for NetArc, cell id for CellArc
};

// DAG over pins. Net arcs join each driver to each of its sinks; cell arcs
// join each input pin to each output pin of the same cell. Registers are
// timing boundaries: a cell arc is dropped when its input pin is a declared
// endpoint or its output pin is a declared source, so arrival re-anchors at
// register outputs and checking stops at register data inputs.
struct TimingGraph {
    int num_pins = 0;
    std::vector<Arc> arcs;                    // net arcs first, then cell arcs; ids are indices
    std::vector<std::vector<int>> in_arcs;    // per pin, ascending arc ids
    std::vector<std::vector<int>> out_arcs;
    std::vector<int> sources;                 // pin ids
    std::vector<int> endpoints;
    std::vector<bool> is_source;
    std::vector<bool> is_endpoint;
    std::vector<int> level;                   // longest-path-from-root rank
    std::vector<std::vector<int>> levels;     // pins grouped by level, ascending pin id within a level
    bool levelized = false;

    int num_net_arcs = 0;
    int num_cell_arcs = 0;
};

// Throws CycleError (with one cycle's pin names) on combinational loops and
// ValidationError if a declared endpoint is unreachable from every source.
TimingGraph build_timing_graph(const Netlist& netlist);

} // namespace tdp

#endif
