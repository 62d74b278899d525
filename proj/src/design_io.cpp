#include "tdp/design_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "tdp/errors.hpp"

namespace tdp {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) { known = true; break; }
        }
        if (!known) throw ParseError(std::string(where) + ": unknown key \"" + it.key() + "\"");
    }
}

double require_number(const json& obj, const char* where, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string(where) + ": missing \"" + key + "\"");
    if (!it->is_number()) throw ParseError(std::string(where) + ": \"" + key + "\" must be a number");
    return it->get<double>();
}

double optional_number(const json& obj, const char* where, const char* key, double fallback)
{
    auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number()) throw ParseError(std::string(where) + ": \"" + key + "\" must be a number");
    return it->get<double>();
}

std::string require_string(const json& obj, const char* where, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string(where) + ": missing \"" + key + "\"");
    if (!it->is_string()) throw ParseError(std::string(where) + ": \"" + key + "\" must be a string");
    return it->get<std::string>();
}

const json& require_array(const json& obj, const char* where, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string(where) + ": missing \"" + key + "\"");
    if (!it->is_array()) throw ParseError(std::string(where) + ": \"" + key + "\" must be an array");
    return *it;
}

} // namespace

Design design_from_json(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!root.is_object()) throw ParseError("top level must be an object");
    reject_unknown_keys(root, "design",
                        {"core", "clock_period", "r_unit", "c_unit", "default_cell_delay", "cells", "pins", "nets",
                         "sources", "endpoints"});

    Design design;
    DesignConstraints& cst = design.constraints;

    const json& core = require_array(root, "design", "core");
    if (core.size() != 4 || !core[0].is_number() || !core[1].is_number() || !core[2].is_number() ||
        !core[3].is_number())
        throw ParseError("core must be [x_lo, y_lo, x_hi, y_hi]");
    cst.core = Rect{core[0].get<double>(), core[1].get<double>(), core[2].get<double>(), core[3].get<double>()};
    cst.clock_period = require_number(root, "design", "clock_period");
    cst.r_unit = require_number(root, "design", "r_unit");
    cst.c_unit = require_number(root, "design", "c_unit");
    cst.default_cell_delay = optional_number(root, "design", "default_cell_delay", 1.0);

    Netlist& nl = design.netlist;
    std::unordered_map<std::string, int> cell_id;
    std::unordered_map<std::string, int> pin_id;

    for (const json& jc : require_array(root, "design", "cells")) {
        if (!jc.is_object()) throw ParseError("cells: entries must be objects");
        reject_unknown_keys(jc, "cell", {"name", "width", "height", "fixed", "x", "y", "delay"});
        Cell cell;
        cell.name = require_string(jc, "cell", "name");
        const std::string where = "cell \"" + cell.name + "\"";
        cell.width = require_number(jc, where.c_str(), "width");
        cell.height = require_number(jc, where.c_str(), "height");
        cell.delay = optional_number(jc, where.c_str(), "delay", cst.default_cell_delay);
        if (auto it = jc.find("fixed"); it != jc.end()) {
            if (!it->is_boolean()) throw ParseError(where + ": \"fixed\" must be a boolean");
            cell.is_fixed = it->get<bool>();
        }
        Point pos{0.0, 0.0};
        const bool has_x = jc.contains("x");
        const bool has_y = jc.contains("y");
        if (has_x != has_y) throw ParseError(where + ": x and y must be given together");
        if (has_x) {
            pos.x = require_number(jc, where.c_str(), "x");
            pos.y = require_number(jc, where.c_str(), "y");
        }
        if (!cell_id.emplace(cell.name, static_cast<int>(nl.cells.size())).second)
            throw ValidationError("duplicate cell name \"" + cell.name + "\"");
        nl.cells.push_back(cell);
        design.pos_explicit.push_back(has_x);
        design.positions.push_back(pos);
    }

    for (const json& jp : require_array(root, "design", "pins")) {
        if (!jp.is_object()) throw ParseError("pins: entries must be objects");
        reject_unknown_keys(jp, "pin", {"name", "cell", "terminal", "dx", "dy", "dir", "cap"});
        Pin pin;
        pin.name = require_string(jp, "pin", "name");
        const std::string where = "pin \"" + pin.name + "\"";
        const bool has_cell = jp.contains("cell");
        const bool has_terminal = jp.contains("terminal");
        if (has_cell == has_terminal) throw ParseError(where + ": exactly one of \"cell\" or \"terminal\" required");
        if (has_cell) {
            const std::string owner = require_string(jp, where.c_str(), "cell");
            auto it = cell_id.find(owner);
            if (it == cell_id.end()) throw ValidationError(where + ": unknown cell \"" + owner + "\"");
            pin.cell = it->second;
        } else {
            const json& jt = jp.at("terminal");
            if (!jt.is_object()) throw ParseError(where + ": \"terminal\" must be an object");
            reject_unknown_keys(jt, "terminal", {"x", "y"});
            pin.terminal_pos = Point{require_number(jt, where.c_str(), "x"), require_number(jt, where.c_str(), "y")};
        }
        pin.offset = Point{optional_number(jp, where.c_str(), "dx", 0.0), optional_number(jp, where.c_str(), "dy", 0.0)};
        const std::string dir = require_string(jp, where.c_str(), "dir");
        if (dir == "in") pin.dir = PinDir::Input;
        else if (dir == "out") pin.dir = PinDir::Output;
        else throw ParseError(where + ": dir must be \"in\" or \"out\"");
        pin.load_cap = optional_number(jp, where.c_str(), "cap", 0.0);
        if (!pin_id.emplace(pin.name, static_cast<int>(nl.pins.size())).second)
            throw ValidationError("duplicate pin name \"" + pin.name + "\"");
        nl.pins.push_back(pin);
    }

    auto lookup_pin = [&](const std::string& name, const std::string& where) {
        auto it = pin_id.find(name);
        if (it == pin_id.end()) throw ValidationError(where + ": unknown pin \"" + name + "\"");
        return it->second;
    };

    for (const json& jn : require_array(root, "design", "nets")) {
        if (!jn.is_object()) throw ParseError("nets: entries must be objects");
        reject_unknown_keys(jn, "net", {"name", "driver", "sinks"});
        Net net;
        net.name = require_string(jn, "net", "name");
        const std::string where = "net \"" + net.name + "\"";
        net.driver = lookup_pin(require_string(jn, where.c_str(), "driver"), where);
        const json& sinks = require_array(jn, where.c_str(), "sinks");
        for (const json& js : sinks) {
            if (!js.is_string()) throw ParseError(where + ": sinks must be pin names");
            net.sinks.push_back(lookup_pin(js.get<std::string>(), where));
        }
        nl.nets.push_back(net);
    }

    for (const json& js : require_array(root, "design", "sources")) {
        if (!js.is_string()) throw ParseError("sources must be pin names");
        nl.sources.push_back(lookup_pin(js.get<std::string>(), "sources"));
    }
    for (const json& je : require_array(root, "design", "endpoints")) {
        if (!je.is_string()) throw ParseError("endpoints must be pin names");
        nl.endpoints.push_back(lookup_pin(je.get<std::string>(), "endpoints"));
    }

    // Movable cells without file coordinates start centered in the core.
    for (std::size_t c = 0; c < nl.cells.size(); ++c) {
        if (!design.pos_explicit[c]) {
            design.positions[c] = Point{(cst.core.x_lo + cst.core.x_hi) / 2.0 - nl.cells[c].width / 2.0,
                                        (cst.core.y_lo + cst.core.y_hi) / 2.0 - nl.cells[c].height / 2.0};
        }
    }

    validate_design(design);
    design.netlist.finalize();
    return design;
}

void validate_design(const Design& design)
{
    const Netlist& nl = design.netlist;
    const DesignConstraints& cst = design.constraints;

    if (!cst.core.nondegenerate()) throw ValidationError("core region is degenerate");
    if (!(cst.clock_period > 0.0)) throw ValidationError("clock_period must be > 0");
    if (!(cst.r_unit > 0.0) || !(cst.c_unit > 0.0)) throw ValidationError("r_unit and c_unit must be > 0");

    bool any_movable = false;
    for (std::size_t c = 0; c < nl.cells.size(); ++c) {
        const Cell& cell = nl.cells[c];
        if (!(cell.width > 0.0) || !(cell.height > 0.0))
            throw ValidationError("zero-size cell \"" + cell.name + "\"");
        if (cell.width > cst.core.width() || cell.height > cst.core.height())
            throw ValidationError("cell \"" + cell.name + "\" larger than core");
        if (cell.is_fixed) {
            if (!design.pos_explicit[c])
                throw ValidationError("fixed cell \"" + cell.name + "\" has no coordinates");
            const Point p = design.positions[c];
            if (!cst.core.contains(Rect{p.x, p.y, p.x + cell.width, p.y + cell.height}))
                throw ValidationError("fixed cell \"" + cell.name + "\" outside core");
        } else {
            any_movable = true;
        }
    }
    if (!any_movable) throw ValidationError("no movable cells");

    for (const Pin& pin : nl.pins) {
        if (pin.load_cap < 0.0) throw ValidationError("pin \"" + pin.name + "\": cap must be >= 0");
    }

    std::vector<int> pin_net(nl.pins.size(), -1);
    auto claim = [&](int pin, const Net& net) {
        auto& slot = pin_net[static_cast<std::size_t>(pin)];
        if (slot >= 0)
            throw ValidationError("pin \"" + nl.pins[static_cast<std::size_t>(pin)].name + "\" used by nets \"" +
                                  nl.nets[static_cast<std::size_t>(slot)].name + "\" and \"" + net.name + "\"");
        slot = static_cast<int>(&net - nl.nets.data());
    };
    for (const Net& net : nl.nets) {
        const std::string where = "net \"" + net.name + "\"";
        if (nl.pins[static_cast<std::size_t>(net.driver)].dir != PinDir::Output)
            throw ValidationError(where + ": driver must be an output pin");
        if (net.sinks.empty()) throw ValidationError(where + ": needs at least one sink");
        claim(net.driver, net);
        for (int s : net.sinks) {
            if (s == net.driver) throw ValidationError(where + ": driver and sink on the same pin");
            if (nl.pins[static_cast<std::size_t>(s)].dir != PinDir::Input)
                throw ValidationError(where + ": sink \"" + nl.pins[static_cast<std::size_t>(s)].name +
                                      "\" must be an input pin");
            claim(s, net);
        }
    }

    for (int s : nl.sources)
        if (nl.pins[static_cast<std::size_t>(s)].dir != PinDir::Output)
            throw ValidationError("source pin \"" + nl.pins[static_cast<std::size_t>(s)].name + "\" must be an output");
    for (int e : nl.endpoints)
        if (nl.pins[static_cast<std::size_t>(e)].dir != PinDir::Input)
            throw ValidationError("endpoint pin \"" + nl.pins[static_cast<std::size_t>(e)].name + "\" must be an input");
}

std::string design_to_json(const Design& design)
{
    const Netlist& nl = design.netlist;
    const DesignConstraints& cst = design.constraints;
    json root;
    root["core"] = {cst.core.x_lo, cst.core.y_lo, cst.core.x_hi, cst.core.y_hi};
    root["clock_period"] = cst.clock_period;
    root["r_unit"] = cst.r_unit;
    root["c_unit"] = cst.c_unit;
    root["default_cell_delay"] = cst.default_cell_delay;

    json cells = json::array();
    for (std::size_t c = 0; c < nl.cells.size(); ++c) {
        const Cell& cell = nl.cells[c];
        json jc;
        jc["name"] = cell.name;
        jc["width"] = cell.width;
        jc["height"] = cell.height;
        if (cell.is_fixed) jc["fixed"] = true;
        if (design.pos_explicit[c]) {
            jc["x"] = design.positions[c].x;
            jc["y"] = design.positions[c].y;
        }
        if (cell.delay != cst.default_cell_delay) jc["delay"] = cell.delay;
        cells.push_back(jc);
    }
    root["cells"] = cells;

    json pins = json::array();
    for (const Pin& pin : nl.pins) {
        json jp;
        jp["name"] = pin.name;
        if (pin.is_terminal()) jp["terminal"] = {{"x", pin.terminal_pos.x}, {"y", pin.terminal_pos.y}};
        else jp["cell"] = nl.cells[static_cast<std::size_t>(pin.cell)].name;
        if (pin.offset.x != 0.0) jp["dx"] = pin.offset.x;
        if (pin.offset.y != 0.0) jp["dy"] = pin.offset.y;
        jp["dir"] = pin.dir == PinDir::Input ? "in" : "out";
        if (pin.load_cap != 0.0) jp["cap"] = pin.load_cap;
        pins.push_back(jp);
    }
    root["pins"] = pins;

    json nets = json::array();
    for (const Net& net : nl.nets) {
        json jn;
        jn["name"] = net.name;
        jn["driver"] = nl.pins[static_cast<std::size_t>(net.driver)].name;
        json sinks = json::array();
        for (int s : net.sinks) sinks.push_back(nl.pins[static_cast<std::size_t>(s)].name);
        jn["sinks"] = sinks;
        nets.push_back(jn);
    }
    root["nets"] = nets;

    json sources = json::array();
    for (int s : nl.sources) sources.push_back(nl.pins[static_cast<std::size_t>(s)].name);
    root["sources"] = sources;
    json endpoints = json::array();
    for (int e : nl.endpoints) endpoints.push_back(nl.pins[static_cast<std::size_t>(e)].name);
    root["endpoints"] = endpoints;

    return root.dump(2) + "\n";
}

Design load_design(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return design_from_json(buf.str());
}

void save_design(const Design& design, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write \"" + path + "\"");
    out << design_to_json(design);
}

} // namespace tdp
