#ifndef TDP_TESTS_FIXTURES_HPP
#define TDP_TESTS_FIXTURES_HPP

#include <string>
#include <utility>
#include <vector>

#include "tdp/design_io.hpp"
#include "tdp/netlist.hpp"
#include "tdp/rng.hpp"

namespace tdptest {

using namespace tdp;

// Assembles valid in-memory designs without JSON detours. Cells added with
// a position are explicit; finish() builds the lookup tables.
struct DesignBuilder {
    Design d;

    DesignBuilder(Rect core, double clock, double r_unit, double c_unit)
    {
        d.constraints.core = core;
        d.constraints.clock_period = clock;
        d.constraints.r_unit = r_unit;
        d.constraints.c_unit = c_unit;
    }

    int cell(const std::string& name, double w, double h, double delay, Point pos, bool fixed = false)
    {
        Cell c;
        c.name = name;
        c.width = w;
        c.height = h;
        c.delay = delay;
        c.is_fixed = fixed;
        d.netlist.cells.push_back(c);
        d.positions.push_back(pos);
        d.pos_explicit.push_back(true);
        return static_cast<int>(d.netlist.cells.size()) - 1;
    }

    int pin(const std::string& name, int cell, PinDir dir, double cap = 0.0, Point offset = {})
    {
        Pin p;
        p.name = name;
        p.cell = cell;
        p.dir = dir;
        p.load_cap = cap;
        p.offset = offset;
        d.netlist.pins.push_back(p);
        return static_cast<int>(d.netlist.pins.size()) - 1;
    }

    int terminal(const std::string& name, Point pos, PinDir dir, double cap = 0.0)
    {
        Pin p;
        p.name = name;
        p.terminal_pos = pos;
        p.dir = dir;
        p.load_cap = cap;
        d.netlist.pins.push_back(p);
        return static_cast<int>(d.netlist.pins.size()) - 1;
    }

    int net(const std::string& name, int driver, std::vector<int> sinks)
    {
        Net n;
        n.name = name;
        n.driver = driver;
        n.sinks = std::move(sinks);
        d.netlist.nets.push_back(n);
        return static_cast<int>(d.netlist.nets.size()) - 1;
    }

    void source(int pin) { d.netlist.sources.push_back(pin); }
    void endpoint(int pin) { d.netlist.endpoints.push_back(pin); }

    Design finish()
    {
        d.netlist.finalize();
        return d;
    }
};

// Three-cell chain PI -> A -> B -> C -> PO, r = c = 1, zero offsets and
// caps, cells at (0,0), (3,0), (3,4). Net delays are rL * cL = L^2 over
// Manhattan lengths 0, 3, 4, 0, cell delays 1 each:
//   arr: PI 0, A.in 0, A.out 1, B.in 10, B.out 11, C.in 27, C.out 28, PO 28
//   slack along the whole path: 10 - 28 = -18
inline Design make_t1()
{
    DesignBuilder b({0, 0, 10, 10}, 10.0, 1.0, 1.0);
    const int a = b.cell("A", 1, 1, 1.0, {0, 0});
    const int bb = b.cell("B", 1, 1, 1.0, {3, 0});
    const int c = b.cell("C", 1, 1, 1.0, {3, 4});
    const int pi = b.terminal("PI", {0, 0}, PinDir::Output);
    const int a_in = b.pin("A.in", a, PinDir::Input);
    const int a_out = b.pin("A.out", a, PinDir::Output);
    const int b_in = b.pin("B.in", bb, PinDir::Input);
    const int b_out = b.pin("B.out", bb, PinDir::Output);
    const int c_in = b.pin("C.in", c, PinDir::Input);
    const int c_out = b.pin("C.out", c, PinDir::Output);
    const int po = b.terminal("PO", {3, 4}, PinDir::Input);
    b.net("n0", pi, {a_in});
    b.net("n1", a_out, {b_in});
    b.net("n2", b_out, {c_in});
    b.net("n3", c_out, {po});
    b.source(pi);
    b.endpoint(po);
    return b.finish();
}

// Multi-path fixture with all geometry collapsed to one point (every net
// delay 0), so path delays are pure cell-delay sums:
//   S -> X(7) -> M(8) -> EP1   delay 15, slack -5
//   S -> Y(6) -> M(8) -> EP1   delay 14, slack -4
//   S -> Z(13) -> EP2          delay 13, slack -3
inline Design make_t2()
{
    DesignBuilder b({0, 0, 10, 10}, 10.0, 1.0, 1.0);
    const int x = b.cell("X", 1, 1, 7.0, {0, 0});
    const int y = b.cell("Y", 1, 1, 6.0, {0, 0});
    const int z = b.cell("Z", 1, 1, 13.0, {0, 0});
    const int m = b.cell("M", 1, 1, 8.0, {0, 0});
    const int s = b.terminal("S", {0, 0}, PinDir::Output);
    const int x_in = b.pin("X.in", x, PinDir::Input);
    const int x_out = b.pin("X.out", x, PinDir::Output);
    const int y_in = b.pin("Y.in", y, PinDir::Input);
    const int y_out = b.pin("Y.out", y, PinDir::Output);
    const int z_in = b.pin("Z.in", z, PinDir::Input);
    const int z_out = b.pin("Z.out", z, PinDir::Output);
    const int m_a = b.pin("M.a", m, PinDir::Input);
    const int m_b = b.pin("M.b", m, PinDir::Input);
    const int m_out = b.pin("M.out", m, PinDir::Output);
    const int ep1 = b.terminal("EP1", {0, 0}, PinDir::Input);
    const int ep2 = b.terminal("EP2", {0, 0}, PinDir::Input);
    b.net("nS", s, {x_in, y_in, z_in});
    b.net("nX", x_out, {m_a});
    b.net("nY", y_out, {m_b});
    b.net("nM", m_out, {ep1});
    b.net("nZ", z_out, {ep2});
    b.source(s);
    b.endpoint(ep1);
    b.endpoint(ep2);
    return b.finish();
}

// Two-way diamond S -> {A, B} -> M -> EP at one point; path delays are
// delay_a + 1 and delay_b + 1.
inline Design make_diamond(double delay_a = 7.0, double delay_b = 5.0)
{
    DesignBuilder b({0, 0, 10, 10}, 10.0, 1.0, 1.0);
    const int a = b.cell("A", 1, 1, delay_a, {0, 0});
    const int bb = b.cell("B", 1, 1, delay_b, {0, 0});
    const int m = b.cell("M", 1, 1, 1.0, {0, 0});
    const int s = b.terminal("S", {0, 0}, PinDir::Output);
    const int a_in = b.pin("A.in", a, PinDir::Input);
    const int a_out = b.pin("A.out", a, PinDir::Output);
    const int b_in = b.pin("B.in", bb, PinDir::Input);
    const int b_out = b.pin("B.out", bb, PinDir::Output);
    const int m_a = b.pin("M.a", m, PinDir::Input);
    const int m_b = b.pin("M.b", m, PinDir::Input);
    const int m_out = b.pin("M.out", m, PinDir::Output);
    const int ep = b.terminal("EP", {0, 0}, PinDir::Input);
    b.net("nS", s, {a_in, b_in});
    b.net("nA", a_out, {m_a});
    b.net("nB", b_out, {m_b});
    b.net("nM", m_out, {ep});
    b.source(s);
    b.endpoint(ep);
    return b.finish();
}

// Shared-trunk blow-up fixture: four stages of {Ak, Bk} feeding a merge Mk,
// then one fan-out net into 16 branch cells Ej -> endpoints Tj. Each
// endpoint sees exactly 2^4 = 16 trunk variants; branch delays 10 + j make
// T16's cheapest variant worse than T15's dearest, so a global top-16 pick
// lands entirely on T16 while per-endpoint extraction covers all 16.
// Geometry is collapsed; delays: Ak = 5 + 0.001 * 2^(k-1), Bk = 5, Mk = 1,
// Ej = 10 + j, clock 30 (every endpoint violated).
inline Design make_trunk16()
{
    DesignBuilder b({0, 0, 10, 10}, 30.0, 1.0, 1.0);
    const int s = b.terminal("S", {0, 0}, PinDir::Output);
    b.source(s);
    int prev = s; // driver of the stage's input net
    for (int k = 1; k <= 4; ++k)
    {
        const std::string sk = std::to_string(k);
        const int a = b.cell("A" + sk, 1, 1, 5.0 + 0.001 * (1 << (k - 1)), {0, 0});
        const int bb = b.cell("B" + sk, 1, 1, 5.0, {0, 0});
        const int m = b.cell("M" + sk, 1, 1, 1.0, {0, 0});
        const int a_in = b.pin("A" + sk + ".in", a, PinDir::Input);
        const int a_out = b.pin("A" + sk + ".out", a, PinDir::Output);
        const int b_in = b.pin("B" + sk + ".in", bb, PinDir::Input);
        const int b_out = b.pin("B" + sk + ".out", bb, PinDir::Output);
        const int m_a = b.pin("M" + sk + ".a", m, PinDir::Input);
        const int m_b = b.pin("M" + sk + ".b", m, PinDir::Input);
        const int m_out = b.pin("M" + sk + ".out", m, PinDir::Output);
        b.net("in" + sk, prev, {a_in, b_in});
        b.net("a" + sk, a_out, {m_a});
        b.net("b" + sk, b_out, {m_b});
        prev = m_out;
    }
    std::vector<int> branch_ins;
    for (int j = 1; j <= 16; ++j)
    {
        const std::string sj = std::to_string(j);
        const int e = b.cell("E" + sj, 1, 1, 10.0 + j, {0, 0});
        const int e_in = b.pin("E" + sj + ".in", e, PinDir::Input);
        const int e_out = b.pin("E" + sj + ".out", e, PinDir::Output);
        const int t = b.terminal("T" + sj, {0, 0}, PinDir::Input);
        branch_ins.push_back(e_in);
        b.net("e" + sj, e_out, {t});
        b.endpoint(t);
    }
    b.net("fan", prev, branch_ins);
    return b.finish();
}

// Pinned 10-cell chain for the attraction-loss uniformity fixture: fixed
// terminals at x = 0 and x = 11 (y = 5), ten movable unit cells with center
// pins, consecutive pins paired. The quadratic optimum places pin i at
// x = i exactly (equal spacing).
struct ChainFixture {
    Netlist netlist;
    std::vector<std::pair<int, int>> pairs; // consecutive pin ids
    Rect core{0, 0, 11, 10};
};

inline ChainFixture make_chain()
{
    ChainFixture f;
    Pin left;
    left.name = "L";
    left.terminal_pos = {0, 5};
    left.dir = PinDir::Output;
    f.netlist.pins.push_back(left);
    for (int i = 1; i <= 10; ++i)
    {
        Cell c;
        c.name = "c" + std::to_string(i);
        c.width = 1;
        c.height = 1;
        f.netlist.cells.push_back(c);
        Pin p;
        p.name = c.name + ".p";
        p.cell = i - 1;
        p.offset = {0.5, 0.5};
        p.dir = PinDir::Input;
        f.netlist.pins.push_back(p);
    }
    Pin right;
    right.name = "R";
    right.terminal_pos = {11, 5};
    right.dir = PinDir::Input;
    f.netlist.pins.push_back(right);
    for (int i = 0; i < 11; ++i) f.pairs.emplace_back(i, i + 1);
    f.netlist.finalize();
    return f;
}

// Seeded random layered DAG for the oracle suites: 2-4 layers of 1-3 cells,
// fan-in 1-2 from anything earlier, a register boundary on roughly half the
// designs, random explicit positions, caps, RC constants and clock. Small
// enough that exhaustive path enumeration is instant.
inline Design random_design(std::uint64_t seed, int max_cells = 12)
{
    std::mt19937_64 rng(seed);
    const Rect core{0, 0, 20, 20};
    DesignBuilder b(core, rng_uniform(rng, 5.0, 50.0), rng_uniform(rng, 0.1, 1.0), rng_uniform(rng, 0.1, 1.0));

    const int n_pi = static_cast<int>(rng_int(rng, 1, 2));
    std::vector<int> drivers;
    for (int i = 0; i < n_pi; ++i)
    {
        const Point pos{core.x_lo, rng_uniform(rng, core.y_lo, core.y_hi)};
        const int p = b.terminal("pi" + std::to_string(i), pos, PinDir::Output);
        b.source(p);
        drivers.push_back(p);
    }

    const int n_layers = static_cast<int>(rng_int(rng, 2, 4));
    int made = 0;
    const bool with_register = rng_unit(rng) < 0.5;
    int register_slot = with_register ? static_cast<int>(rng_int(rng, 1, std::max(1, max_cells / 2))) : -1;
    struct Conn {
        int sink;
        int driver;
    };
    std::vector<Conn> conns;
    for (int layer = 0; layer < n_layers && made < max_cells; ++layer)
    {
        const int width = static_cast<int>(rng_int(rng, 1, 3));
        std::vector<int> layer_outs;
        for (int i = 0; i < width && made < max_cells; ++i, ++made)
        {
            const std::string name = "c" + std::to_string(made);
            const double w = rng_uniform(rng, 1.0, 2.0);
            const double h = rng_uniform(rng, 1.0, 2.0);
            const Point pos{rng_uniform(rng, core.x_lo, core.x_hi - w), rng_uniform(rng, core.y_lo, core.y_hi - h)};
            const int cell = b.cell(name, w, h, rng_uniform(rng, 0.1, 2.0), pos);
            const bool is_register = made == register_slot && layer > 0;
            const int n_in = is_register ? 1 : static_cast<int>(rng_int(rng, 1, 2));
            int first_in = -1;
            for (int j = 0; j < n_in; ++j)
            {
                const int p = b.pin(name + ".i" + std::to_string(j), cell, PinDir::Input, rng_uniform(rng, 0.0, 2.0),
                                    {rng_uniform(rng, 0.0, w), rng_uniform(rng, 0.0, h)});
                if (j == 0) first_in = p;
                conns.push_back({p, drivers[static_cast<std::size_t>(
                                        rng_int(rng, 0, static_cast<int>(drivers.size()) - 1))]});
            }
            const int out = b.pin(name + ".o", cell, PinDir::Output, 0.0,
                                  {rng_uniform(rng, 0.0, w), rng_uniform(rng, 0.0, h)});
            if (is_register)
            {
                b.endpoint(first_in);
                b.source(out);
            }
            layer_outs.push_back(out);
        }
        drivers.insert(drivers.end(), layer_outs.begin(), layer_outs.end());
    }

    const int n_po = static_cast<int>(rng_int(rng, 1, 2));
    for (int i = 0; i < n_po; ++i)
    {
        const Point pos{core.x_hi, rng_uniform(rng, core.y_lo, core.y_hi)};
        const int p = b.terminal("po" + std::to_string(i), pos, PinDir::Input, rng_uniform(rng, 0.0, 2.0));
        b.endpoint(p);
        conns.push_back({p, drivers[static_cast<std::size_t>(rng_int(rng, 0, static_cast<int>(drivers.size()) - 1))]});
    }

    for (int drv : drivers)
    {
        std::vector<int> sinks;
        for (const Conn& c : conns)
            if (c.driver == drv) sinks.push_back(c.sink);
        if (sinks.empty()) continue;
        b.net("n" + std::to_string(b.d.netlist.nets.size()), drv, std::move(sinks));
    }
    Design d = b.finish();
    validate_design(d);
    return d;
}

} // namespace tdptest

#endif
