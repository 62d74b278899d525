#include "tdp/netlist.hpp"

namespace tdp {

void Netlist::finalize()
{
    cell_pins.assign(cells.size(), {});
    pin_net.assign(pins.size(), -1);
    pin_is_source.assign(pins.size(), false);
    pin_is_endpoint.assign(pins.size(), false);

    for (std::size_t p = 0; p < pins.size(); ++p) {
        if (!pins[p].is_terminal()) cell_pins[static_cast<std::size_t>(pins[p].cell)].push_back(static_cast<int>(p));
    }
    for (std::size_t n = 0; n < nets.size(); ++n) {
        pin_net[static_cast<std::size_t>(nets[n].driver)] = static_cast<int>(n);
        for (int s : nets[n].sinks) pin_net[static_cast<std::size_t>(s)] = static_cast<int>(n);
    }
    for (int s : sources) pin_is_source[static_cast<std::size_t>(s)] = true;
    for (int e : endpoints) pin_is_endpoint[static_cast<std::size_t>(e)] = true;
}

PinPositions pin_positions(const Netlist& netlist, const std::vector<Point>& cell_pos)
{
    PinPositions pos(netlist.pins.size());
    for (std::size_t p = 0; p < netlist.pins.size(); ++p) {
        const Pin& pin = netlist.pins[p];
        const Point anchor = pin.is_terminal() ? pin.terminal_pos : cell_pos[static_cast<std::size_t>(pin.cell)];
        pos[p] = anchor + pin.offset;
    }
    return pos;
}

} // namespace tdp
