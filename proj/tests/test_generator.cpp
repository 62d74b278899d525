#include <doctest.h>

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "tdp/design_io.hpp"
#include "tdp/errors.hpp"
#include "tdp/generator.hpp"
#include "tdp/placer.hpp"
#include "tdp/sta.hpp"
#include "tdp/timing_graph.hpp"

using namespace tdp;
using namespace tdptest;

namespace {

GeneratorSpec small_spec(std::uint64_t seed, int cells = 60)
{
    GeneratorSpec s;
    s.seed = seed;
    s.n_cells = cells;
    return s;
}

bool is_register(const Netlist& nl, std::size_t cell)
{
    bool endpoint_in = false, source_out = false;
    for (int p : nl.cell_pins[cell])
    {
        const auto pi = static_cast<std::size_t>(p);
        if (nl.pins[pi].dir == PinDir::Input && nl.pin_is_endpoint[pi]) endpoint_in = true;
        if (nl.pins[pi].dir == PinDir::Output && nl.pin_is_source[pi]) source_out = true;
    }
    return endpoint_in && source_out;
}

} // namespace

TEST_CASE("same seed, same bytes")
{
    const std::string a = design_to_json(generate_synthetic(small_spec(7)));
    const std::string b = design_to_json(generate_synthetic(small_spec(7)));
    CHECK(a == b);
    const std::string c = design_to_json(generate_synthetic(small_spec(8)));
    CHECK(a != c);
}

TEST_CASE("unsatisfiable specs are refused")
{
    auto with = [](auto&& edit) {
        GeneratorSpec s;
        edit(s);
        return generate_synthetic(s);
    };
    CHECK_THROWS_AS(with([](GeneratorSpec& s) { s.n_cells = 0; }), GenerationError);
    CHECK_THROWS_AS(with([](GeneratorSpec& s) { s.avg_fanout = 0.0; }), GenerationError);
    CHECK_THROWS_AS(with([](GeneratorSpec& s) {
                        s.n_cells = 3;
                        s.avg_fanout = 10.0;
                    }),
                    GenerationError);
    CHECK_THROWS_AS(with([](GeneratorSpec& s) { s.target_fail_fraction = 1.5; }), GenerationError);
    CHECK_THROWS_AS(with([](GeneratorSpec& s) { s.r_unit = 0.0; }), GenerationError);
}

TEST_CASE("emitted designs are structurally sound")
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
    {
        CAPTURE(seed);
        const Design d = generate_synthetic(small_spec(seed));
        CHECK_NOTHROW(validate_design(d));
        const TimingGraph g = build_timing_graph(d.netlist);

        // depth bound: at most 20 combinational stages of net + cell arc,
        // plus the final net into an endpoint
        int max_level = 0;
        for (int lvl : g.level) max_level = std::max(max_level, lvl);
        CHECK(max_level <= 41);

        // movable cells come without coordinates
        for (std::size_t c = 0; c < d.netlist.cells.size(); ++c)
        {
            CHECK_FALSE(d.netlist.cells[c].is_fixed);
            CHECK_FALSE(d.pos_explicit[c]);
        }

        CHECK(d.constraints.clock_period > 0.0);
        CHECK(d.constraints.r_unit == 1e-4);
        CHECK(d.constraints.c_unit == 1e-4);
    }
}

TEST_CASE("population counts follow the spec")
{
    const GeneratorSpec spec = small_spec(5); // 60 cells
    const Design d = generate_synthetic(spec);
    const Netlist& nl = d.netlist;

    int registers = 0;
    for (std::size_t c = 0; c < nl.cells.size(); ++c)
        if (is_register(nl, c)) ++registers;
    CHECK(static_cast<int>(nl.cells.size()) == 60 + registers); // comb cells plus registers
    CHECK(registers == 6);                                      // n_cells / 10

    int pis = 0, pos_ = 0;
    for (const Pin& p : nl.pins)
    {
        if (!p.is_terminal()) continue;
        if (p.dir == PinDir::Output)
        {
            ++pis;
            CHECK(p.terminal_pos.x == d.constraints.core.x_lo);
        }
        else
        {
            ++pos_;
            CHECK(p.terminal_pos.x == d.constraints.core.x_hi);
        }
    }
    CHECK(pis == 3); // max(2, cells / 20)
    CHECK(pos_ == 3);

    // endpoints: register data inputs plus primary outputs
    CHECK(static_cast<int>(nl.endpoints.size()) == registers + pos_);
    CHECK(static_cast<int>(nl.sources.size()) == registers + pis);

    double sinks = 0.0;
    for (const Net& n : nl.nets) sinks += static_cast<double>(n.sinks.size());
    const double fanout = sinks / static_cast<double>(nl.nets.size());
    CHECK(fanout >= 1.2);
    CHECK(fanout <= 3.0);
}

TEST_CASE("explicit register count is honored")
{
    GeneratorSpec s = small_spec(9, 40);
    s.n_registers = 11;
    const Design d = generate_synthetic(s);
    int registers = 0;
    for (std::size_t c = 0; c < d.netlist.cells.size(); ++c)
        if (is_register(d.netlist, c)) ++registers;
    CHECK(registers == 11);
}

TEST_CASE("auto core lands near 75 percent utilization")
{
    const Design d = generate_synthetic(small_spec(3));
    double area = 0.0;
    for (const Cell& c : d.netlist.cells) area += c.width * c.height;
    const Rect& core = d.constraints.core;
    const double util = area / (core.width() * core.height());
    CHECK(util >= 0.70);
    CHECK(util <= 0.80);
    CHECK(core.width() == core.height());
}

TEST_CASE("a custom core is used as given")
{
    GeneratorSpec s = small_spec(4);
    s.core = {100, 200, 6100, 5200};
    const Design d = generate_synthetic(s);
    CHECK(d.constraints.core.x_lo == 100.0);
    CHECK(d.constraints.core.y_hi == 5200.0);
    for (const Pin& p : d.netlist.pins)
    {
        if (!p.is_terminal()) continue;
        CHECK(p.terminal_pos.x == (p.dir == PinDir::Output ? 100.0 : 6100.0));
        CHECK(p.terminal_pos.y >= 200.0);
        CHECK(p.terminal_pos.y <= 5200.0);
    }
}

TEST_CASE("clock calibration hits the target fail fraction")
{
    GeneratorSpec spec;
    spec.seed = 11;
    spec.n_cells = 200;
    spec.target_fail_fraction = 0.2;
    const Design d = generate_synthetic(spec);

    // replay the calibration snapshot: coarse placement, then count
    const PlacementOutcome coarse = run_placement(d, coarse_config(spec));
    const TimingGraph g = build_timing_graph(d.netlist);
    const TimingAnnotation ann = run_sta(g, d.netlist, pin_positions(d.netlist, coarse.positions), d.constraints);

    const int n_ep = static_cast<int>(ann.endpoint_slacks.size());
    int failing = 0;
    for (const auto& [pin, slack] : ann.endpoint_slacks)
        if (slack < 0.0) ++failing;
    const int want = static_cast<int>(std::lround(0.2 * n_ep));
    CHECK(failing == want);
}

TEST_CASE("fail fraction extremes stay inside the clock")
{
    GeneratorSpec all_pass = small_spec(6);
    all_pass.target_fail_fraction = 0.0;
    const Design dp = generate_synthetic(all_pass);
    CHECK(dp.constraints.clock_period > 0.0);

    GeneratorSpec all_fail = small_spec(6);
    all_fail.target_fail_fraction = 1.0;
    const Design df = generate_synthetic(all_fail);
    CHECK(df.constraints.clock_period > 0.0);
    CHECK(df.constraints.clock_period < dp.constraints.clock_period);
}
