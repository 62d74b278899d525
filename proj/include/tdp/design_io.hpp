#ifndef TDP_DESIGN_IO_HPP
#define TDP_DESIGN_IO_HPP

#include <string>

#include "tdp/netlist.hpp"

namespace tdp {

// Design file schema (JSON, UTF-8). Top-level keys:
//   core: [x_lo, y_lo, x_hi, y_hi]
//   clock_period, r_unit, c_unit, default_cell_delay (optional, 1.0)
//   cells: [{name, width, height, fixed?, x?, y?, delay?}]
//   pins:  [{name, cell | terminal:{x,y}, dx?, dy?, dir:"in"|"out", cap?}]
//   nets:  [{name, driver, sinks:[...]}]
//   sources: [pin names], endpoints: [pin names]
// Unknown keys are rejected at every level.

Design load_design(const std::string& path);
Design design_from_json(const std::string& text);
std::string design_to_json(const Design& design);
void save_design(const Design& design, const std::string& path);

// Schema/shape violations and full semantic validation. Throws ParseError or
// ValidationError. Called by the loaders; exposed for in-memory designs.
void validate_design(const Design& design);

} // namespace tdp

#endif
