#include "tdp/paths.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "tdp/errors.hpp"
#include "tdp/parallel.hpp"

namespace tdp {

PathEnumerator::PathEnumerator(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                               const DesignConstraints& constraints)
    : graph_(graph), netlist_(netlist), pos_(pos), constraints_(constraints)
{
    nodes_.resize(static_cast<std::size_t>(graph.num_pins));
}

void PathEnumerator::push_candidate(int pin, int arc, std::size_t pred_rank)
{
    const Arc& a = graph_.arcs[static_cast<std::size_t>(arc)];
    const Record* pred = path_to(a.from, pred_rank);
    if (!pred) return;
    Candidate cand;
    cand.delay = pred->delay + arc_delay(a, netlist_, pos_, constraints_);
    cand.pins = pred->pins;
    cand.pins.push_back(pin);
    cand.via_arc = arc;
    cand.pred_rank = pred_rank;
    nodes_[static_cast<std::size_t>(pin)].heap.push(std::move(cand));
}

void PathEnumerator::initialize(int pin)
{
    NodeState& state = nodes_[static_cast<std::size_t>(pin)];
    state.initialized = true;
    if (graph_.is_source[static_cast<std::size_t>(pin)]) {
        state.found.push_back(Record{0.0, {pin}});
        return;
    }
    for (int a : graph_.in_arcs[static_cast<std::size_t>(pin)]) push_candidate(pin, a, 0);
}

const PathEnumerator::Record* PathEnumerator::path_to(int pin, std::size_t rank)
{
    NodeState& state = nodes_[static_cast<std::size_t>(pin)];
    if (!state.initialized) initialize(pin);
    while (state.found.size() <= rank && !state.heap.empty()) {
        Candidate top = state.heap.top();
        state.heap.pop();
        state.found.push_back(Record{top.delay, std::move(top.pins)});
        push_candidate(pin, top.via_arc, top.pred_rank + 1);
    }
    return rank < state.found.size() ? &state.found[rank] : nullptr;
}

std::vector<CriticalPath> k_worst_paths_to(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                                           const DesignConstraints& constraints, const TimingAnnotation& annotation,
                                           int endpoint, int k)
{
    (void)annotation;
    if (endpoint < 0 || endpoint >= graph.num_pins || !graph.is_endpoint[static_cast<std::size_t>(endpoint)])
        throw EndpointError("pin " + std::to_string(endpoint) + " is not an endpoint");
    PathEnumerator en(graph, netlist, pos, constraints);
    std::vector<CriticalPath> out;
    for (int i = 0; i < k; ++i) {
        const auto* rec = en.path_to(endpoint, static_cast<std::size_t>(i));
        if (!rec) break;
        out.push_back(CriticalPath{rec->pins, constraints.clock_period - rec->delay});
    }
    return out;
}

namespace {

// Violated endpoints, worst slack first, pin id breaking ties.
std::vector<std::pair<int, double>> violated_endpoints(const TimingAnnotation& annotation)
{
    std::vector<std::pair<int, double>> v;
    for (const auto& [pin, slack] : annotation.endpoint_slacks)
        if (slack < 0.0) v.emplace_back(pin, slack);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    return v;
}

void finish_report(ExtractionReport& report, const Netlist& netlist)
{
    std::set<int> endpoints;
    std::set<std::pair<int, int>> pairs;
    for (const auto& path : report.paths) {
        endpoints.insert(path.pins.back());
        for (std::size_t i = 0; i + 1 < path.pins.size(); ++i) {
            if (netlist.pins[static_cast<std::size_t>(path.pins[i])].dir == PinDir::Output)
                pairs.insert(std::minmax(path.pins[i], path.pins[i + 1]));
        }
    }
    report.unique_endpoints = static_cast<int>(endpoints.size());
    report.unique_pin_pairs = static_cast<int>(pairs.size());
}

// Enumerates per selected endpoint, sharing one enumerator when single
// threaded (prefixes memoize across endpoints) and using independent
// enumerators per endpoint otherwise. Results are assembled in endpoint-rank
// order either way.
std::vector<std::vector<CriticalPath>> enumerate_per_endpoint(const TimingGraph& graph, const Netlist& netlist,
                                                              const PinPositions& pos,
                                                              const DesignConstraints& constraints,
                                                              const TimingAnnotation& annotation,
                                                              const std::vector<std::pair<int, double>>& selected,
                                                              int k, int threads)
{
    std::vector<std::vector<CriticalPath>> per_endpoint(selected.size());
    if (threads <= 1) {
        PathEnumerator en(graph, netlist, pos, constraints);
        for (std::size_t i = 0; i < selected.size(); ++i) {
            std::vector<CriticalPath>& out = per_endpoint[i];
            for (int j = 0; j < k; ++j) {
                const auto* rec = en.path_to(selected[i].first, static_cast<std::size_t>(j));
                if (!rec) break;
                out.push_back(CriticalPath{rec->pins, constraints.clock_period - rec->delay});
            }
        }
    } else {
        parallel_for(selected.size(), threads, [&](std::size_t i) {
            per_endpoint[i] = k_worst_paths_to(graph, netlist, pos, constraints, annotation, selected[i].first, k);
        });
    }
    return per_endpoint;
}

} // namespace

ExtractionReport report_timing(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                               const DesignConstraints& constraints, const TimingAnnotation& annotation, int n,
                               int threads)
{
    const auto t0 = std::chrono::steady_clock::now();
    ExtractionReport report;
    report.policy = "topn";
    report.n = n;
    report.k = n;

    auto violated = violated_endpoints(annotation);
    if (violated.size() > static_cast<std::size_t>(n)) violated.resize(static_cast<std::size_t>(n));
    // n paths attempted per selected endpoint: the n^2 blow-up.
    report.candidates_generated = static_cast<long long>(violated.size()) * n;

    auto per_endpoint = enumerate_per_endpoint(graph, netlist, pos, constraints, annotation, violated, n, threads);
    std::vector<CriticalPath> all;
    for (auto& paths : per_endpoint)
        for (auto& p : paths) all.push_back(std::move(p));
    std::sort(all.begin(), all.end(), [](const CriticalPath& a, const CriticalPath& b) {
        if (a.slack != b.slack) return a.slack < b.slack;
        return a.pins < b.pins;
    });
    if (all.size() > static_cast<std::size_t>(n)) all.resize(static_cast<std::size_t>(n));
    report.paths = std::move(all);

    finish_report(report, netlist);
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

ExtractionReport report_timing_endpoint(const TimingGraph& graph, const Netlist& netlist, const PinPositions& pos,
                                        const DesignConstraints& constraints, const TimingAnnotation& annotation,
                                        int n, int k, int threads)
{
    const auto t0 = std::chrono::steady_clock::now();
    ExtractionReport report;
    report.policy = "endpoint";
    report.n = n;
    report.k = k;

    auto violated = violated_endpoints(annotation);
    if (violated.size() > static_cast<std::size_t>(n)) violated.resize(static_cast<std::size_t>(n));

    auto per_endpoint = enumerate_per_endpoint(graph, netlist, pos, constraints, annotation, violated, k, threads);
    for (auto& paths : per_endpoint) {
        report.candidates_generated += static_cast<long long>(paths.size());
        for (auto& p : paths) report.paths.push_back(std::move(p));
    }

    finish_report(report, netlist);
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::vector<PairHit> collect_pin_pairs(const Netlist& netlist, const std::vector<CriticalPath>& paths)
{
    std::vector<PairHit> hits;
    for (const auto& path : paths) {
        for (std::size_t i = 0; i + 1 < path.pins.size(); ++i) {
            // Along a path, a hop leaving an output pin is a net arc; a hop
            // leaving an input pin is a cell-internal arc.
            if (netlist.pins[static_cast<std::size_t>(path.pins[i])].dir != PinDir::Output) continue;
            hits.push_back(PairHit{std::minmax(path.pins[i], path.pins[i + 1]), path.slack});
        }
    }
    return hits;
}

} // namespace tdp
