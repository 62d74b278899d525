#ifndef TDP_GENERATOR_HPP
#define TDP_GENERATOR_HPP

#include <cstdint>

#include "tdp/netlist.hpp"
#include "tdp/placer.hpp"

namespace tdp {

struct GeneratorSpec {
    std::uint64_t seed = 1;
    int n_cells = 100;                 // combinational cells
    int n_registers = -1;              // negative selects n_cells / 10
    double avg_fanout = 2.0;           // mean sinks per driven net
    double target_fail_fraction = 0.2; // endpoints failing after the coarse run
    Rect core;                         // degenerate rect selects automatic sizing
    double r_unit = 1e-4;              // sized so one core-crossing net costs a
    double c_unit = 1e-4;              // few gate delays, as on a real die
};

/// Configuration of the deterministic coarse placement (wirelength + density
/// only) used to calibrate the clock period. Exposed so callers can replay
/// the calibration snapshot on an emitted design.
OptimizerConfig coarse_config(const GeneratorSpec& spec);

/// Random layered DAG between terminal/register boundaries: primary inputs
/// on the left edge, primary outputs on the right, movable cells without
/// initial coordinates. The clock period is set at the
/// (1 - target_fail_fraction) quantile of endpoint arrival times measured
/// after the coarse placement, so roughly that fraction of endpoints fails.
/// Fully deterministic in the seed. Throws GenerationError when the spec is
/// unsatisfiable.
Design generate_synthetic(const GeneratorSpec& spec);

} // namespace tdp

#endif
