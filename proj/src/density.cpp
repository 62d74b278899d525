#include "tdp/density.hpp"

#include <algorithm>
#include <cmath>

#include "tdp/errors.hpp"
#include "tdp/parallel.hpp"

namespace tdp {

namespace {

// Quadratic B-spline bump, support |u| <= 1.5, partition of unity on a unit
// grid.
double bspline2(double u)
{
    const double a = std::abs(u);
    if (a >= 1.5) return 0.0;
    if (a <= 0.5) return 0.75 - a * a;
    const double t = 1.5 - a;
    return 0.5 * t * t;
}

// Antiderivative of bspline2 with I(-1.5) = 0, I(1.5) = 1.
double bspline2_integral(double u)
{
    if (u <= -1.5) return 0.0;
    if (u >= 1.5) return 1.0;
    if (u <= -0.5) {
        const double t = u + 1.5;
        return t * t * t / 6.0;
    }
    if (u <= 0.5) return 0.5 + 0.75 * u - u * u * u / 3.0;
    const double t = 1.5 - u;
    return 1.0 - t * t * t / 6.0;
}

// Smoothed overlap of a cell extent [lo, hi] with the bin centered at c
// (bin pitch h), normalized so the weights over all bins sum to 1.
// d/d(center) is (bspline2(hi') - bspline2(lo')) / (hi - lo).
double extent_weight(double lo, double hi, double c, double h)
{
    return (bspline2_integral((hi - c) / h) - bspline2_integral((lo - c) / h)) * h / (hi - lo);
}

double extent_weight_grad(double lo, double hi, double c, double h)
{
    return (bspline2((hi - c) / h) - bspline2((lo - c) / h)) / (hi - lo);
}

} // namespace

DensityGrid::DensityGrid(const Netlist& netlist, const Rect& core, int nx, int ny, double target_density)
    : core_(core), nx_(nx), ny_(ny)
{
    if (nx < 1 || ny < 1) throw ValidationError("density grid must be at least 1x1");
    bin_w_ = core.width() / nx;
    bin_h_ = core.height() / ny;
    capacity_ = target_density * bin_w_ * bin_h_;

    total_movable_area_ = 0.0;
    for (const Cell& cell : netlist.cells)
        if (!cell.is_fixed) total_movable_area_ += cell.width * cell.height;
}

DensityResult DensityGrid::evaluate(const Netlist& netlist, const std::vector<Point>& cell_pos, int threads) const
{
    DensityResult out;
    out.d_cell.assign(netlist.cells.size(), Point{});
    const std::size_t n_bins = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
    std::vector<double> occupancy(n_bins, 0.0);

    // Fixed cells: exact rectangle overlap, recomputed here so fixed
    // positions supplied per snapshot are honored.
    for (std::size_t c = 0; c < netlist.cells.size(); ++c) {
        const Cell& cell = netlist.cells[c];
        if (!cell.is_fixed) continue;
        const double x_lo = cell_pos[c].x, x_hi = x_lo + cell.width;
        const double y_lo = cell_pos[c].y, y_hi = y_lo + cell.height;
        const int bx0 = std::max(0, static_cast<int>(std::floor((x_lo - core_.x_lo) / bin_w_)));
        const int bx1 = std::min(nx_ - 1, static_cast<int>(std::floor((x_hi - core_.x_lo) / bin_w_)));
        const int by0 = std::max(0, static_cast<int>(std::floor((y_lo - core_.y_lo) / bin_h_)));
        const int by1 = std::min(ny_ - 1, static_cast<int>(std::floor((y_hi - core_.y_lo) / bin_h_)));
        for (int bx = bx0; bx <= bx1; ++bx) {
            for (int by = by0; by <= by1; ++by) {
                const double ox = std::min(x_hi, core_.x_lo + (bx + 1) * bin_w_) - std::max(x_lo, core_.x_lo + bx * bin_w_);
                const double oy = std::min(y_hi, core_.y_lo + (by + 1) * bin_h_) - std::max(y_lo, core_.y_lo + by * bin_h_);
                if (ox > 0.0 && oy > 0.0)
                    occupancy[static_cast<std::size_t>(bx) * static_cast<std::size_t>(ny_) + static_cast<std::size_t>(by)] +=
                        ox * oy;
            }
        }
    }

    // Movable cells: per-cell footprint entries computed in parallel, then
    // scattered in cell id order.
    struct Entry {
        int bin;
        double w;        // weight, summing to ~1 over bins
        double dwx, dwy; // d(w)/d(cell x), d(w)/d(cell y)
    };
    std::vector<std::vector<Entry>> footprints(netlist.cells.size());
    parallel_for(netlist.cells.size(), threads, [&](std::size_t c) {
        const Cell& cell = netlist.cells[c];
        if (cell.is_fixed) return;
        const double x_lo = cell_pos[c].x, x_hi = x_lo + cell.width;
        const double y_lo = cell_pos[c].y, y_hi = y_lo + cell.height;
        // Support of the integrated spline: 1.5 bins beyond the extent.
        const int bx0 = std::max(0, static_cast<int>(std::floor((x_lo - 1.5 * bin_w_ - core_.x_lo) / bin_w_ - 0.5)));
        const int bx1 = std::min(nx_ - 1, static_cast<int>(std::ceil((x_hi + 1.5 * bin_w_ - core_.x_lo) / bin_w_ - 0.5)));
        const int by0 = std::max(0, static_cast<int>(std::floor((y_lo - 1.5 * bin_h_ - core_.y_lo) / bin_h_ - 0.5)));
        const int by1 = std::min(ny_ - 1, static_cast<int>(std::ceil((y_hi + 1.5 * bin_h_ - core_.y_lo) / bin_h_ - 0.5)));
        const double area = cell.width * cell.height;
        auto& list = footprints[c];
        for (int bx = bx0; bx <= bx1; ++bx) {
            const double cx = core_.x_lo + (bx + 0.5) * bin_w_;
            const double wx = extent_weight(x_lo, x_hi, cx, bin_w_);
            const double dwx = extent_weight_grad(x_lo, x_hi, cx, bin_w_);
            if (wx == 0.0 && dwx == 0.0) continue;
            for (int by = by0; by <= by1; ++by) {
                const double cy = core_.y_lo + (by + 0.5) * bin_h_;
                const double wy = extent_weight(y_lo, y_hi, cy, bin_h_);
                const double dwy = extent_weight_grad(y_lo, y_hi, cy, bin_h_);
                if (wy == 0.0 && dwy == 0.0) continue;
                Entry e;
                e.bin = bx * ny_ + by;
                e.w = area * wx * wy;
                e.dwx = area * dwx * wy;
                e.dwy = area * wx * dwy;
                list.push_back(e);
            }
        }
    });
    for (std::size_t c = 0; c < footprints.size(); ++c)
        for (const Entry& e : footprints[c]) occupancy[static_cast<std::size_t>(e.bin)] += e.w;

    std::vector<double> excess(n_bins);
    double value = 0.0;
    double over = 0.0;
    for (std::size_t b = 0; b < n_bins; ++b) {
        excess[b] = std::max(0.0, occupancy[b] - capacity_);
        value += excess[b] * excess[b];
        over += excess[b];
    }
    out.value = value;
    out.overflow = total_movable_area_ > 0.0 ? over / total_movable_area_ : 0.0;

    parallel_for(netlist.cells.size(), threads, [&](std::size_t c) {
        double gx = 0.0, gy = 0.0;
        for (const Entry& e : footprints[c]) {
            const double f = 2.0 * excess[static_cast<std::size_t>(e.bin)];
            gx += f * e.dwx;
            gy += f * e.dwy;
        }
        out.d_cell[c] = Point{gx, gy};
    });
    return out;
}

} // namespace tdp
