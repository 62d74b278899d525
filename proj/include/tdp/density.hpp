#ifndef TDP_DENSITY_HPP
#define TDP_DENSITY_HPP

#include <vector>

#include "tdp/netlist.hpp"

namespace tdp {

struct DensityResult {
    double value = 0.0;     // sum over bins of max(0, occupancy - capacity)^2
    double overflow = 0.0;  // sum of max(0, occupancy - capacity) / total movable area
    std::vector<Point> d_cell; // gradient per cell (zero for fixed cells)
};

// Bin-overflow density. Movable cell area is spread with a quadratic
// B-spline footprint integrated over the cell extent, which is C^1 in the
// cell position and sums to the exact cell area across an unbounded grid.
// Fixed cells contribute their exact rectangle overlap and never move.
class DensityGrid {
  public:
    DensityGrid(const Netlist& netlist, const Rect& core, int nx, int ny, double target_density);

    DensityResult evaluate(const Netlist& netlist, const std::vector<Point>& cell_pos, int threads = 1) const;

    int nx() const { return nx_; }
    int ny() const { return ny_; }

  private:
    Rect core_;
    int nx_;
    int ny_;
    double bin_w_;
    double bin_h_;
    double capacity_;          // per bin: target_density * bin area
    double total_movable_area_;
};

} // namespace tdp

#endif
