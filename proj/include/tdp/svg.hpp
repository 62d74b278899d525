#ifndef TDP_SVG_HPP
#define TDP_SVG_HPP

#include <string>
#include <vector>

#include "tdp/netlist.hpp"
#include "tdp/paths.hpp"

namespace tdp {

/// Standalone SVG of one placement snapshot: die outline (a <path>), cells
/// as <rect>, terminal pins as <circle>, and one <polyline> per overlaid
/// critical path following its net hops, with per-path slack labels in the
/// title band. Throws MismatchError when a path references a pin id outside
/// the netlist.
std::string render_svg(const Design& design, const std::vector<Point>& positions,
                       const std::vector<CriticalPath>& paths);

} // namespace tdp

#endif
