#include "tdp/report_io.hpp"

#include <unordered_map>

#include <json.hpp>

#include "tdp/errors.hpp"

namespace tdp {

using nlohmann::json;

namespace {

json parse_or_throw(const std::string& text, const char* what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

std::unordered_map<std::string, int> pin_index(const Netlist& netlist)
{
    std::unordered_map<std::string, int> idx;
    idx.reserve(netlist.pins.size());
    for (std::size_t p = 0; p < netlist.pins.size(); ++p) idx.emplace(netlist.pins[p].name, static_cast<int>(p));
    return idx;
}

} // namespace

std::string timing_to_json(const TimingAnnotation& annotation, const Netlist& netlist)
{
    json endpoints = json::array();
    for (const auto& [pin, slack] : annotation.endpoint_slacks) {
        json e;
        e["pin"] = netlist.pins[static_cast<std::size_t>(pin)].name;
        e["slack"] = slack;
        endpoints.push_back(e);
    }
    json pins = json::array();
    for (std::size_t p = 0; p < netlist.pins.size(); ++p) {
        json row;
        row["pin"] = netlist.pins[p].name;
        row["arr"] = annotation.arr[p];
        row["req"] = annotation.req[p];
        row["slack"] = annotation.slack[p];
        pins.push_back(row);
    }
    json j;
    j["tns"] = annotation.tns;
    j["wns"] = annotation.wns;
    j["endpoints"] = endpoints;
    j["pins"] = pins;
    return j.dump(2) + "\n";
}

std::string report_to_json(const ExtractionReport& report, const Netlist& netlist)
{
    json paths = json::array();
    for (const CriticalPath& p : report.paths) {
        json row;
        row["slack"] = p.slack;
        json names = json::array();
        for (int pin : p.pins) names.push_back(netlist.pins[static_cast<std::size_t>(pin)].name);
        row["pins"] = names;
        paths.push_back(row);
    }
    json j;
    j["policy"] = report.policy;
    j["n"] = report.n;
    j["k"] = report.k;
    j["candidates_generated"] = report.candidates_generated;
    j["elapsed_ms"] = report.elapsed_ms;
    j["paths"] = paths;
    j["unique_endpoints"] = report.unique_endpoints;
    j["unique_pin_pairs"] = report.unique_pin_pairs;
    return j.dump(2) + "\n";
}

std::vector<CriticalPath> paths_from_json(const std::string& text, const Netlist& netlist)
{
    const json j = parse_or_throw(text, "paths file");
    if (!j.is_object() || !j.contains("paths") || !j["paths"].is_array())
        throw ParseError("paths file: expected an object with a \"paths\" array");
    const auto idx = pin_index(netlist);
    std::vector<CriticalPath> out;
    for (const json& row : j["paths"]) {
        if (!row.is_object() || !row.contains("pins") || !row["pins"].is_array())
            throw ParseError("paths file: each path needs a \"pins\" array");
        CriticalPath path;
        if (row.contains("slack")) {
            if (!row["slack"].is_number()) throw ParseError("paths file: \"slack\" must be a number");
            path.slack = row["slack"].get<double>();
        }
        for (const json& name : row["pins"]) {
            if (!name.is_string()) throw ParseError("paths file: pin references must be strings");
            const auto it = idx.find(name.get<std::string>());
            if (it == idx.end())
                throw MismatchError("paths file references unknown pin \"" + name.get<std::string>() + "\"");
            path.pins.push_back(it->second);
        }
        out.push_back(std::move(path));
    }
    return out;
}

std::string placement_to_json(const Netlist& netlist, const std::vector<Point>& positions)
{
    json cells = json::array();
    for (std::size_t c = 0; c < netlist.cells.size(); ++c) {
        json row;
        row["name"] = netlist.cells[c].name;
        row["x"] = positions[c].x;
        row["y"] = positions[c].y;
        cells.push_back(row);
    }
    json j;
    j["cells"] = cells;
    return j.dump(2) + "\n";
}

std::vector<Point> placement_from_json(const std::string& text, const Design& design)
{
    const json j = parse_or_throw(text, "placement file");
    if (!j.is_object() || !j.contains("cells") || !j["cells"].is_array())
        throw ParseError("placement file: expected an object with a \"cells\" array");

    std::unordered_map<std::string, int> idx;
    for (std::size_t c = 0; c < design.netlist.cells.size(); ++c)
        idx.emplace(design.netlist.cells[c].name, static_cast<int>(c));

    std::vector<Point> positions = design.positions;
    std::vector<bool> seen(design.netlist.cells.size(), false);
    for (const json& row : j["cells"]) {
        if (!row.is_object() || !row.contains("name") || !row.contains("x") || !row.contains("y"))
            throw ParseError("placement file: each cell needs name, x, y");
        if (!row["name"].is_string() || !row["x"].is_number() || !row["y"].is_number())
            throw ParseError("placement file: cell entries must be {name: string, x: number, y: number}");
        const std::string name = row["name"].get<std::string>();
        const auto it = idx.find(name);
        if (it == idx.end()) throw MismatchError("placement references unknown cell \"" + name + "\"");
        const auto c = static_cast<std::size_t>(it->second);
        if (seen[c]) throw MismatchError("placement lists cell \"" + name + "\" twice");
        seen[c] = true;
        positions[c] = Point{row["x"].get<double>(), row["y"].get<double>()};
    }
    for (std::size_t c = 0; c < seen.size(); ++c)
        if (!seen[c]) throw MismatchError("placement is missing cell \"" + design.netlist.cells[c].name + "\"");
    return positions;
}

} // namespace tdp
