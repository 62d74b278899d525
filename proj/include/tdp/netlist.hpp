#ifndef TDP_NETLIST_HPP
#define TDP_NETLIST_HPP

#include <string>
#include <vector>

#include "tdp/geometry.hpp"

namespace tdp {

enum class PinDir { Input, Output };

struct Cell {
    std::string name;
    double width = 0.0;
    double height = 0.0;
    bool is_fixed = false;
    double delay = 1.0; // applied to every input->output arc of this cell

    bool operator==(const Cell&) const = default;
};

constexpr int kTerminal = -1;

struct Pin {
    std::string name;
    int cell = kTerminal;        // owning cell id, or kTerminal
    Point terminal_pos;          // absolute anchor for terminal pins
    Point offset;                // from owner origin (or terminal anchor)
    PinDir dir = PinDir::Input;
    double load_cap = 0.0;       // sink-side capacitance

    bool is_terminal() const { return cell == kTerminal; }
    bool operator==(const Pin&) const = default;
};

struct Net {
    std::string name;
    int driver = -1;             // pin id, direction Output
    std::vector<int> sinks;      // pin ids, direction Input, nonempty

    bool operator==(const Net&) const = default;
};

struct DesignConstraints {
    double clock_period = 0.0;
    double r_unit = 0.0;         // resistance per layout length unit
    double c_unit = 0.0;         // capacitance per layout length unit
    double default_cell_delay = 1.0;
    Rect core;

    bool operator==(const DesignConstraints&) const = default;
};

struct Netlist {
    std::vector<Cell> cells;     // ids are indices, assigned in file order
    std::vector<Pin> pins;
    std::vector<Net> nets;
    std::vector<int> sources;    // pin ids with arrival constraints
    std::vector<int> endpoints;  // pin ids with required-time constraints

    // Derived lookup tables, rebuilt by finalize().
    std::vector<std::vector<int>> cell_pins; // per cell, ascending pin ids
    std::vector<int> pin_net;                // owning net id per pin, -1 if none
    std::vector<bool> pin_is_source;
    std::vector<bool> pin_is_endpoint;

    void finalize();

    bool operator==(const Netlist& o) const
    {
        return cells == o.cells && pins == o.pins && nets == o.nets && sources == o.sources &&
               endpoints == o.endpoints;
    }
};

// A loaded design: netlist, constraints, and per-cell initial positions
// (lower-left origins). Movable cells without coordinates in the file are
// centered in the core and marked implicit.
struct Design {
    Netlist netlist;
    DesignConstraints constraints;
    std::vector<Point> positions;      // per cell id
    std::vector<bool> pos_explicit;    // true if the file supplied x/y

    bool operator==(const Design&) const = default;
};

using PinPositions = std::vector<Point>; // indexed by pin id

// Pin position is owner position + offset; terminals anchor at their absolute
// location.
PinPositions pin_positions(const Netlist& netlist, const std::vector<Point>& cell_pos);

} // namespace tdp

#endif
