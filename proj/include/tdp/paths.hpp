#ifndef TDP_PATHS_HPP
#define TDP_PATHS_HPP

#include <memory>
#include <queue>
#include <string>
#include <vector>

#include "tdp/netlist.hpp"
#include "tdp/sta.hpp"
#include "tdp/timing_graph.hpp"

namespace tdp {

struct CriticalPath {
    std::vector<int> pins;   // source ... endpoint
    double slack = 0.0;      // clock_period - this path's end-to-end delay

    bool operator==(const CriticalPath&) const = default;
};

struct ExtractionReport {
    std::string policy;      // "topn" or "endpoint"
    int n = 0;
    int k = 0;
    std::vector<CriticalPath> paths;
    int unique_endpoints = 0;
    int unique_pin_pairs = 0;
    long long candidates_generated = 0;
    double elapsed_ms = 0.0;
};

struct PairHit {
    std::pair<int, int> pair; // canonical: lower pin id first
    double path_slack = 0.0;
};

// Lazily enumerates source->node paths in worst-first order (descending
// delay; equal delays broken by lexicographically smallest pin sequence).
// Candidate paths branch from already-found ones at each fan-in choice, one
// heap per node, so extracting the next path costs O(path length * log fanin)
// instead of re-walking the graph.
class PathEnumerator {
  public:
    PathEnumerator(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                   const DesignConstraints& constraints);

    struct Record {
        double delay = 0.0;
        std::vector<int> pins;
    };

    // rank-th worst path into `pin` (0-based), or nullptr once exhausted.
    const Record* path_to(int pin, std::size_t rank);

  private:
    struct Candidate {
        double delay;
        std::vector<int> pins;
        int via_arc;
        std::size_t pred_rank;
    };
    struct CandidateOrder {
        bool operator()(const Candidate& a, const Candidate& b) const
        {
            if (a.delay != b.delay) return a.delay < b.delay;
            return a.pins > b.pins; // smaller pin sequence wins ties
        }
    };
    struct NodeState {
        bool initialized = false;
        std::vector<Record> found;
        std::priority_queue<Candidate, std::vector<Candidate>, CandidateOrder> heap;
    };

    void initialize(int pin);
    void push_candidate(int pin, int arc, std::size_t pred_rank);

    const TimingGraph& graph_;
    const Netlist& netlist_;
    const PinPositions& pos_;
    const DesignConstraints& constraints_;
    std::vector<NodeState> nodes_;
};

// k worst paths ending at `endpoint`, worst first (ascending slack, ties by
// smallest pin sequence). Fewer are returned when the endpoint has fewer
// distinct paths. Throws EndpointError if the pin is not a graph endpoint.
std::vector<CriticalPath> k_worst_paths_to(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                                           const DesignConstraints& constraints, const TimingAnnotation& annotation,
                                           int endpoint, int k);

// Baseline policy: pick the n worst violated endpoints, enumerate up to n
// paths for each (an n^2 candidate blow-up, recorded in
// candidates_generated), keep the globally worst n.
ExtractionReport report_timing(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                               const DesignConstraints& constraints, const TimingAnnotation& annotation, int n,
                               int threads = 1);

// Per-endpoint policy: k worst paths for each of the n worst violated
// endpoints independently, so every selected endpoint is covered.
ExtractionReport report_timing_endpoint(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                                        const DesignConstraints& constraints, const TimingAnnotation& annotation,
                                        int n, int k, int threads = 1);

// One entry per net arc traversed by each path, in path order, canonicalized
// (lower pin id first) and tagged with that path's slack. Cell arcs are
// skipped: cell geometry is rigid, attraction between pins of one cell is
// meaningless. Multiset semantics: shared arcs appear once per path.
std::vector<PairHit> collect_pin_pairs(const Netlist& netlist, const std::vector<CriticalPath>& paths);

} // namespace tdp

#endif
