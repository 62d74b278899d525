#include "tdp/compare.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "tdp/errors.hpp"
#include "tdp/parallel.hpp"
#include "tdp/timing_graph.hpp"
#include "tdp/wirelength.hpp"

namespace tdp {

namespace {

std::string fmt(double v, const char* spec = "%.6g")
{
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

CompareReport run_compare(const Design& design, const std::vector<OptimizerConfig>& configs, bool parallel)
{
    if (configs.size() < 2) throw ValidationError("compare: need >= 2 configurations");
    for (const OptimizerConfig& c : configs)
        if (c.seed != configs.front().seed)
            throw ValidationError("compare: all configurations must share one seed (config \"" + c.name +
                                  "\" differs)");

    CompareReport report;
    report.rows.resize(configs.size());

    // Frozen snapshot for the coverage columns: the first config with the
    // attraction and net-weighting terms disabled, halted where its timing
    // rounds would begin.
    OptimizerConfig snap_cfg = configs.front();
    snap_cfg.beta = 0.0;
    snap_cfg.net_weighting = false;
    snap_cfg.max_iters = std::min(snap_cfg.max_iters, snap_cfg.timing_start_iter);
    snap_cfg.timing_start_iter = snap_cfg.max_iters + 1; // plain wirelength + density prefix
    snap_cfg.stop_overflow = 0.0;
    const PlacementOutcome snapshot = run_placement(design, snap_cfg);

    const TimingGraph graph = build_timing_graph(design.netlist);
    const PinPositions snap_pins = pin_positions(design.netlist, snapshot.positions);
    const TimingAnnotation snap_ann = run_sta(graph, design.netlist, snap_pins, design.constraints);
    int n_fail = 0;
    for (const auto& [pin, slack] : snap_ann.endpoint_slacks)
        if (slack < 0.0) ++n_fail;

    parallel_for(configs.size(), parallel ? static_cast<int>(configs.size()) : 1, [&](std::size_t i) {
        CompareRow& row = report.rows[i];
        row.config_name = configs[i].name;
        try {
            if (n_fail > 0) {
                const ExtractionReport ext =
                    configs[i].extraction == ExtractionPolicy::Endpoint
                        ? report_timing_endpoint(graph, design.netlist, snap_pins, design.constraints, snap_ann,
                                                 n_fail, configs[i].k)
                        : report_timing(graph, design.netlist, snap_pins, design.constraints, snap_ann, n_fail);
                row.unique_endpoints = ext.unique_endpoints;
                row.unique_pin_pairs = ext.unique_pin_pairs;
                row.candidates_generated = ext.candidates_generated;
            }

            const auto t0 = std::chrono::steady_clock::now();
            const PlacementOutcome outcome = run_placement(design, configs[i]);
            const auto t1 = std::chrono::steady_clock::now();
            row.runtime_s = std::chrono::duration<double>(t1 - t0).count();
            row.tns = outcome.final_timing.tns;
            row.wns = outcome.final_timing.wns;
            row.hpwl = hpwl_total(design.netlist, pin_positions(design.netlist, outcome.positions));
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
    });
    return report;
}

std::string compare_to_csv(const CompareReport& report)
{
    std::string out = "config,status,tns,wns,hpwl,runtime_s,unique_endpoints,unique_pin_pairs,candidates_generated\n";
    for (const CompareRow& r : report.rows) {
        out += csv_escape(r.config_name);
        out += ',';
        out += r.ok ? "ok" : csv_escape(r.error);
        out += ',';
        out += fmt(r.tns, "%.17g");
        out += ',';
        out += fmt(r.wns, "%.17g");
        out += ',';
        out += fmt(r.hpwl, "%.17g");
        out += ',';
        out += fmt(r.runtime_s, "%.3f");
        out += ',';
        out += std::to_string(r.unique_endpoints);
        out += ',';
        out += std::to_string(r.unique_pin_pairs);
        out += ',';
        out += std::to_string(r.candidates_generated);
        out += '\n';
    }
    return out;
}

std::string compare_to_table(const CompareReport& report)
{
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-24s %-6s %14s %12s %14s %10s %8s %8s %12s\n", "config", "status", "tns",
                  "wns", "hpwl", "runtime_s", "uniq_ep", "uniq_pp", "candidates");
    out += line;
    out += std::string(
        24 + 1 + 6 + 1 + 14 + 1 + 12 + 1 + 14 + 1 + 10 + 1 + 8 + 1 + 8 + 1 + 12, '-');
    out += '\n';
    for (const CompareRow& r : report.rows) {
        if (r.ok) {
            std::snprintf(line, sizeof line, "%-24s %-6s %14.4f %12.4f %14.2f %10.2f %8d %8d %12lld\n",
                          r.config_name.c_str(), "ok", r.tns, r.wns, r.hpwl, r.runtime_s, r.unique_endpoints,
                          r.unique_pin_pairs, r.candidates_generated);
            out += line;
        } else {
            std::snprintf(line, sizeof line, "%-24s %-6s %s\n", r.config_name.c_str(), "error", r.error.c_str());
            out += line;
        }
    }
    return out;
}

} // namespace tdp
