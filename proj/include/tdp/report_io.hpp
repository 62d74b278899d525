#ifndef TDP_REPORT_IO_HPP
#define TDP_REPORT_IO_HPP

#include <string>
#include <vector>

#include "tdp/netlist.hpp"
#include "tdp/paths.hpp"
#include "tdp/sta.hpp"

namespace tdp {

/// timing.json: {tns, wns, endpoints:[{pin, slack}], pins:[{pin, arr, req,
/// slack}]}, every pin referenced by name.
std::string timing_to_json(const TimingAnnotation& annotation, const Netlist& netlist);

/// paths.json: {policy, n, k, candidates_generated, elapsed_ms,
/// paths:[{slack, pins:[...]}], unique_endpoints, unique_pin_pairs}.
std::string report_to_json(const ExtractionReport& report, const Netlist& netlist);

/// Reads the paths array back (for overlay plotting). Throws MismatchError
/// when a path names a pin the netlist does not have.
std::vector<CriticalPath> paths_from_json(const std::string& text, const Netlist& netlist);

/// placement.json: {cells:[{name, x, y}]}, one entry per cell in id order.
std::string placement_to_json(const Netlist& netlist, const std::vector<Point>& positions);

/// Positions for every cell of the design. The file must cover exactly the
/// design's cell set; anything missing, unknown, or duplicated is a
/// MismatchError.
std::vector<Point> placement_from_json(const std::string& text, const Design& design);

} // namespace tdp

#endif
