#include "tdp/svg.hpp"

#include <cstdio>

#include "tdp/errors.hpp"

namespace tdp {

namespace {

const char* kPathColors[] = {"#d62728", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};

std::string num(double v)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string escape_text(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

} // namespace

std::string render_svg(const Design& design, const std::vector<Point>& positions,
                       const std::vector<CriticalPath>& paths)
{
    const Netlist& nl = design.netlist;
    const Rect& core = design.constraints.core;
    for (const CriticalPath& p : paths)
        for (int pin : p.pins)
            if (pin < 0 || pin >= static_cast<int>(nl.pins.size()))
                throw MismatchError("path references a pin outside this design");

    const double scale = 640.0 / core.span();
    const double margin = 16.0;
    const double title_h = 22.0 + 16.0 * static_cast<double>(paths.size());
    const double width = 2.0 * margin + core.width() * scale;
    const double height = title_h + 2.0 * margin + core.height() * scale;
    const auto sx = [&](double x) { return margin + (x - core.x_lo) * scale; };
    const auto sy = [&](double y) { return title_h + margin + (core.y_hi - y) * scale; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    svg += "  <text x=\"" + num(margin) + "\" y=\"16\" font-family=\"monospace\" font-size=\"13\">placement (" +
           std::to_string(nl.cells.size()) + " cells, " + std::to_string(nl.nets.size()) + " nets)</text>\n";

    // Die outline drawn as a path so rect elements stay one-per-cell.
    svg += "  <path d=\"M " + num(sx(core.x_lo)) + " " + num(sy(core.y_lo)) + " L " + num(sx(core.x_hi)) + " " +
           num(sy(core.y_lo)) + " L " + num(sx(core.x_hi)) + " " + num(sy(core.y_hi)) + " L " + num(sx(core.x_lo)) +
           " " + num(sy(core.y_hi)) + " Z\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1.5\"/>\n";

    for (std::size_t c = 0; c < nl.cells.size(); ++c) {
        const Cell& cell = nl.cells[c];
        const char* fill = cell.is_fixed ? "#bdbdbd" : "#9ecae1";
        svg += "  <rect x=\"" + num(sx(positions[c].x)) + "\" y=\"" + num(sy(positions[c].y + cell.height)) +
               "\" width=\"" + num(cell.width * scale) + "\" height=\"" + num(cell.height * scale) + "\" fill=\"" +
               fill + "\" fill-opacity=\"0.85\" stroke=\"#3182bd\" stroke-width=\"0.8\"/>\n";
        if (nl.cells.size() <= 20)
            svg += "  <text x=\"" + num(sx(positions[c].x + cell.width / 2)) + "\" y=\"" +
                   num(sy(positions[c].y + cell.height / 2) + 4) +
                   "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" +
                   escape_text(cell.name) + "</text>\n";
    }

    const PinPositions pin_pos = pin_positions(nl, positions);
    for (std::size_t p = 0; p < nl.pins.size(); ++p) {
        if (!nl.pins[p].is_terminal()) continue;
        svg += "  <circle cx=\"" + num(sx(pin_pos[p].x)) + "\" cy=\"" + num(sy(pin_pos[p].y)) +
               "\" r=\"3\" fill=\"#636363\"/>\n";
    }

    for (std::size_t i = 0; i < paths.size(); ++i) {
        const CriticalPath& path = paths[i];
        const char* color = kPathColors[i % (sizeof kPathColors / sizeof kPathColors[0])];
        if (!path.pins.empty()) {
            // One vertex per net hop: the path enters a cell at a sink pin
            // and leaves from the driver side without an extra vertex.
            std::string pts = num(sx(pin_pos[static_cast<std::size_t>(path.pins[0])].x)) + "," +
                              num(sy(pin_pos[static_cast<std::size_t>(path.pins[0])].y));
            for (std::size_t k = 1; k < path.pins.size(); ++k) {
                const Pin& prev = nl.pins[static_cast<std::size_t>(path.pins[k - 1])];
                if (prev.dir != PinDir::Output) continue;
                const Point& pt = pin_pos[static_cast<std::size_t>(path.pins[k])];
                pts += " " + num(sx(pt.x)) + "," + num(sy(pt.y));
            }
            svg += "  <polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
                   "\" stroke-width=\"2\" stroke-opacity=\"0.9\"/>\n";
        }
        const std::string label = "path " + std::to_string(i) + ": slack=" + num(path.slack) + " (" +
                                  std::to_string(path.pins.size()) + " pins)";
        svg += "  <text x=\"" + num(margin) + "\" y=\"" + num(32.0 + 16.0 * static_cast<double>(i)) +
               "\" font-family=\"monospace\" font-size=\"12\" fill=\"" + color + "\">" + escape_text(label) +
               "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

} // namespace tdp
