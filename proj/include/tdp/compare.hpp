#ifndef TDP_COMPARE_HPP
#define TDP_COMPARE_HPP

#include <string>
#include <vector>

#include "tdp/netlist.hpp"
#include "tdp/placer.hpp"

namespace tdp {

struct CompareRow {
    std::string config_name;
    bool ok = false;
    std::string error;
    double tns = 0.0;
    double wns = 0.0;
    double hpwl = 0.0;
    double runtime_s = 0.0;
    // Extraction coverage measured on the shared frozen snapshot, not on the
    // run's own trajectory, so policies are compared apples-to-apples.
    int unique_endpoints = 0;
    int unique_pin_pairs = 0;
    long long candidates_generated = 0;
};

struct CompareReport {
    std::vector<CompareRow> rows;
};

/// Ablation harness: runs every configuration on the same design. All
/// configs must agree on the seed (ValidationError otherwise; ditto for
/// fewer than two configs). Coverage columns come from one frozen snapshot:
/// the first config rerun with beta = 0 up to its timing_start_iter, STA'd
/// once, then each row's extraction policy evaluated there. A failing row
/// records its error and the remaining rows still run. With parallel set,
/// full runs execute concurrently (they share nothing mutable).
CompareReport run_compare(const Design& design, const std::vector<OptimizerConfig>& configs, bool parallel = false);

std::string compare_to_csv(const CompareReport& report);

/// Fixed-width table for terminal output.
std::string compare_to_table(const CompareReport& report);

} // namespace tdp

#endif
