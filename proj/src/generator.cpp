#include "tdp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tdp/design_io.hpp"
#include "tdp/errors.hpp"
#include "tdp/rng.hpp"

namespace tdp {

namespace {

constexpr int kLocalityWindow = 30;
constexpr double kLocalityProb = 0.7;
constexpr int kMaxDepth = 20; // combinational levels between register boundaries

// Index into the available-driver list; biased toward recent drivers so the
// DAG has mostly local structure with occasional long hops.
int pick_driver_index(std::mt19937_64& rng, int n_drivers)
{
    if (n_drivers > kLocalityWindow && rng_unit(rng) < kLocalityProb)
        return static_cast<int>(rng_int(rng, n_drivers - kLocalityWindow, n_drivers - 1));
    return static_cast<int>(rng_int(rng, 0, n_drivers - 1));
}

// Same, but for sinks that extend a combinational path: skip drivers already
// at the depth bound so logic depth stays realistic. Sources (terminals and
// register outputs) sit at depth 0, so a pick always exists.
int pick_shallow_driver_index(std::mt19937_64& rng, const std::vector<int>& depth)
{
    const int n = static_cast<int>(depth.size());
    for (int attempt = 0; attempt < 16; ++attempt) {
        const int idx = pick_driver_index(rng, n);
        if (depth[static_cast<std::size_t>(idx)] < kMaxDepth) return idx;
    }
    std::vector<int> shallow;
    for (int d = 0; d < n; ++d)
        if (depth[static_cast<std::size_t>(d)] < kMaxDepth) shallow.push_back(d);
    return shallow[static_cast<std::size_t>(rng_int(rng, 0, static_cast<int>(shallow.size()) - 1))];
}

} // namespace

OptimizerConfig coarse_config(const GeneratorSpec& spec)
{
    OptimizerConfig c;
    c.name = "coarse";
    c.beta = 0.0;
    c.max_iters = 300;
    c.timing_start_iter = 300; // never reached: wirelength + density only
    c.stop_overflow = 0.0;
    c.seed = spec.seed;
    c.threads = 1;
    return c;
}

Design generate_synthetic(const GeneratorSpec& spec)
{
    if (spec.n_cells < 1) throw GenerationError("generator: n_cells must be >= 1");
    if (!(spec.avg_fanout > 0.0)) throw GenerationError("generator: avg_fanout must be > 0");
    if (spec.avg_fanout > spec.n_cells) throw GenerationError("generator: avg_fanout exceeds cell count");
    if (!(spec.target_fail_fraction >= 0.0 && spec.target_fail_fraction <= 1.0))
        throw GenerationError("generator: target_fail_fraction must be in [0, 1]");
    if (!(spec.r_unit > 0.0 && spec.c_unit > 0.0)) throw GenerationError("generator: r_unit and c_unit must be > 0");

    const int n_cells = spec.n_cells;
    const int n_regs = spec.n_registers >= 0 ? spec.n_registers : n_cells / 10;
    const int n_pi = std::max(2, n_cells / 20);
    const int n_po = std::max(2, n_cells / 20);
    const int n_drivers_total = n_pi + n_cells + n_regs;

    // Mean combinational fan-in that makes total sink count match
    // avg_fanout * drivers; register data pins and primary outputs are the
    // non-combinational sinks.
    const double mean_in =
        std::clamp((spec.avg_fanout * n_drivers_total - n_regs - n_po) / n_cells, 1.0, 8.0);

    std::mt19937_64 rng(spec.seed);
    Design design;
    Netlist& nl = design.netlist;

    // Register slots are spread evenly through the construction sequence so
    // source/endpoint boundaries appear at all depths.
    const int total_slots = n_cells + n_regs;
    std::vector<bool> slot_is_reg(static_cast<std::size_t>(total_slots), false);
    for (int r = 0; r < n_regs; ++r)
        slot_is_reg[static_cast<std::size_t>((r + 1) * total_slots / (n_regs + 1))] = true;

    struct SinkRef {
        int pin;
        int driver_pin;
    };
    std::vector<int> drivers;            // output pin ids available so far
    std::vector<int> driver_sink_count;  // parallel to drivers
    std::vector<int> driver_depth;       // combinational levels below each driver
    std::vector<SinkRef> connections;    // in creation order

    auto add_connection = [&](int sink_pin, int driver_idx) {
        connections.push_back({sink_pin, drivers[static_cast<std::size_t>(driver_idx)]});
        ++driver_sink_count[static_cast<std::size_t>(driver_idx)];
    };

    // Primary inputs: fixed terminals on the left edge. The core rect is
    // resolved later, so terminal coordinates use a unit-square parameter and
    // are rescaled after sizing.
    std::vector<int> unit_scaled_pins;
    for (int i = 0; i < n_pi; ++i) {
        Pin p;
        p.name = "pi" + std::to_string(i);
        p.dir = PinDir::Output;
        p.terminal_pos = Point{0.0, (i + 0.5) / n_pi};
        unit_scaled_pins.push_back(static_cast<int>(nl.pins.size()));
        nl.sources.push_back(static_cast<int>(nl.pins.size()));
        drivers.push_back(static_cast<int>(nl.pins.size()));
        driver_sink_count.push_back(0);
        driver_depth.push_back(0);
        nl.pins.push_back(p);
    }

    int comb_idx = 0, reg_idx = 0;
    for (int slot = 0; slot < total_slots; ++slot) {
        Cell cell;
        cell.width = rng_uniform(rng, 400.0, 800.0);
        cell.height = rng_uniform(rng, 400.0, 800.0);
        cell.delay = rng_uniform(rng, 0.5, 1.5);
        const int cell_id = static_cast<int>(nl.cells.size());

        if (slot_is_reg[static_cast<std::size_t>(slot)]) {
            cell.name = "r" + std::to_string(reg_idx++);
            Pin d;
            d.name = cell.name + ".d";
            d.cell = cell_id;
            d.offset = Point{rng_uniform(rng, 0.0, cell.width), rng_uniform(rng, 0.0, cell.height)};
            d.dir = PinDir::Input;
            d.load_cap = rng_uniform(rng, 0.5, 2.0);
            const int d_pin = static_cast<int>(nl.pins.size());
            nl.pins.push_back(d);
            nl.endpoints.push_back(d_pin);
            add_connection(d_pin, pick_driver_index(rng, static_cast<int>(drivers.size())));

            Pin q;
            q.name = cell.name + ".q";
            q.cell = cell_id;
            q.offset = Point{rng_uniform(rng, 0.0, cell.width), rng_uniform(rng, 0.0, cell.height)};
            q.dir = PinDir::Output;
            const int q_pin = static_cast<int>(nl.pins.size());
            nl.pins.push_back(q);
            nl.sources.push_back(q_pin);
            drivers.push_back(q_pin);
            driver_sink_count.push_back(0);
            driver_depth.push_back(0);
        } else {
            cell.name = "c" + std::to_string(comb_idx++);
            const int n_in = static_cast<int>(mean_in) + (rng_unit(rng) < mean_in - std::floor(mean_in) ? 1 : 0);
            int depth_in = 0;
            for (int i = 0; i < std::max(1, n_in); ++i) {
                Pin p;
                p.name = cell.name + ".i" + std::to_string(i);
                p.cell = cell_id;
                p.offset = Point{rng_uniform(rng, 0.0, cell.width), rng_uniform(rng, 0.0, cell.height)};
                p.dir = PinDir::Input;
                p.load_cap = rng_uniform(rng, 0.5, 2.0);
                const int pin_id = static_cast<int>(nl.pins.size());
                nl.pins.push_back(p);
                const int idx = pick_shallow_driver_index(rng, driver_depth);
                depth_in = std::max(depth_in, driver_depth[static_cast<std::size_t>(idx)]);
                add_connection(pin_id, idx);
            }
            Pin o;
            o.name = cell.name + ".o";
            o.cell = cell_id;
            o.offset = Point{rng_uniform(rng, 0.0, cell.width), rng_uniform(rng, 0.0, cell.height)};
            o.dir = PinDir::Output;
            nl.pins.push_back(o);
            drivers.push_back(static_cast<int>(nl.pins.size()) - 1);
            driver_sink_count.push_back(0);
            driver_depth.push_back(depth_in + 1);
        }
        nl.cells.push_back(cell);
    }

    // Primary outputs: fixed terminals on the right edge, preferring drivers
    // that feed nothing yet so few outputs dangle.
    for (int i = 0; i < n_po; ++i) {
        Pin p;
        p.name = "po" + std::to_string(i);
        p.dir = PinDir::Input;
        p.terminal_pos = Point{1.0, (i + 0.5) / n_po};
        p.load_cap = rng_uniform(rng, 0.5, 2.0);
        unit_scaled_pins.push_back(static_cast<int>(nl.pins.size()));
        const int pin_id = static_cast<int>(nl.pins.size());
        nl.pins.push_back(p);
        nl.endpoints.push_back(pin_id);

        std::vector<int> idle;
        for (std::size_t d = 0; d < drivers.size(); ++d)
            if (driver_sink_count[d] == 0 && !nl.pins[static_cast<std::size_t>(drivers[d])].is_terminal())
                idle.push_back(static_cast<int>(d));
        int idx;
        if (!idle.empty()) idx = idle[static_cast<std::size_t>(rng_int(rng, 0, static_cast<int>(idle.size()) - 1))];
        else idx = static_cast<int>(rng_int(rng, 0, static_cast<int>(drivers.size()) - 1));
        add_connection(pin_id, idx);
    }

    // One net per driver that feeds at least one sink, in driver order.
    for (std::size_t d = 0; d < drivers.size(); ++d) {
        if (driver_sink_count[d] == 0) continue;
        Net net;
        net.name = "n" + std::to_string(nl.nets.size());
        net.driver = drivers[d];
        for (const SinkRef& c : connections)
            if (c.driver_pin == drivers[d]) net.sinks.push_back(c.pin);
        nl.nets.push_back(net);
    }

    // Core: square sized for ~75% utilization unless the caller pinned one.
    Rect core = spec.core;
    if (!core.nondegenerate()) {
        double area = 0.0;
        for (const Cell& c : nl.cells) area += c.width * c.height;
        const double side = std::ceil(std::sqrt(area / 0.75));
        core = Rect{0.0, 0.0, side, side};
    }
    for (int pin_id : unit_scaled_pins) {
        Pin& p = nl.pins[static_cast<std::size_t>(pin_id)];
        p.terminal_pos = Point{core.x_lo + p.terminal_pos.x * core.width(),
                               core.y_lo + p.terminal_pos.y * core.height()};
    }

    design.constraints.clock_period = 1.0; // placeholder until calibration
    design.constraints.r_unit = spec.r_unit;
    design.constraints.c_unit = spec.c_unit;
    design.constraints.core = core;
    nl.finalize();

    design.positions.assign(nl.cells.size(), Point{});
    design.pos_explicit.assign(nl.cells.size(), false);
    for (std::size_t c = 0; c < nl.cells.size(); ++c)
        design.positions[c] = Point{core.x_lo + (core.width() - nl.cells[c].width) / 2.0,
                                    core.y_lo + (core.height() - nl.cells[c].height) / 2.0};
    validate_design(design);

    // Calibrate the clock: coarse placement, then pick the period at the
    // requested quantile of endpoint arrivals.
    const PlacementOutcome coarse = run_placement(design, coarse_config(spec));
    std::vector<double> arrivals;
    arrivals.reserve(nl.endpoints.size());
    for (int ep : nl.endpoints) arrivals.push_back(coarse.final_timing.arr[static_cast<std::size_t>(ep)]);
    std::sort(arrivals.begin(), arrivals.end());

    const int n_ep = static_cast<int>(arrivals.size());
    const int n_pass = std::clamp(static_cast<int>(std::lround((1.0 - spec.target_fail_fraction) * n_ep)), 0, n_ep);
    double clock;
    if (n_pass == 0) clock = std::max(arrivals.front() * 0.95, 1e-9);
    else if (n_pass == n_ep) clock = arrivals.back() * 1.05;
    else clock = 0.5 * (arrivals[static_cast<std::size_t>(n_pass) - 1] + arrivals[static_cast<std::size_t>(n_pass)]);
    design.constraints.clock_period = clock;

    return design;
}

} // namespace tdp
