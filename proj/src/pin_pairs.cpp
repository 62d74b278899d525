#include "tdp/pin_pairs.hpp"

#include <cmath>

namespace tdp {

void update_pair_weights(PinPairWeights& weights, const std::vector<PairHit>& hits, double wns, double w0, double w1)
{
    if (wns >= 0.0) return;
    for (const PairHit& hit : hits) {
        if (hit.path_slack >= 0.0) continue;
        auto [it, fresh] = weights.try_emplace(hit.pair, w0);
        if (!fresh) it->second += w1 * (hit.path_slack / wns);
    }
}

PinPairLossResult pin_pair_loss(const PinPairWeights& weights, const PinPositions& pins, std::size_t num_pins,
                                PairLossKind kind)
{
    PinPairLossResult out;
    out.d_pin.assign(num_pins, Point{});
    for (const auto& [pair, w] : weights) {
        const Point& a = pins[static_cast<std::size_t>(pair.first)];
        const Point& b = pins[static_cast<std::size_t>(pair.second)];
        const double dx = a.x - b.x;
        const double dy = a.y - b.y;
        if (kind == PairLossKind::Quadratic) {
            out.value += w * (dx * dx + dy * dy);
            const double gx = 2.0 * w * dx;
            const double gy = 2.0 * w * dy;
            out.d_pin[static_cast<std::size_t>(pair.first)].x += gx;
            out.d_pin[static_cast<std::size_t>(pair.first)].y += gy;
            out.d_pin[static_cast<std::size_t>(pair.second)].x -= gx;
            out.d_pin[static_cast<std::size_t>(pair.second)].y -= gy;
        } else {
            const double dist = std::sqrt(dx * dx + dy * dy);
            out.value += w * dist;
            if (dist > 0.0) {
                const double gx = w * dx / dist;
                const double gy = w * dy / dist;
                out.d_pin[static_cast<std::size_t>(pair.first)].x += gx;
                out.d_pin[static_cast<std::size_t>(pair.first)].y += gy;
                out.d_pin[static_cast<std::size_t>(pair.second)].x -= gx;
                out.d_pin[static_cast<std::size_t>(pair.second)].y -= gy;
            }
        }
    }
    return out;
}

} // namespace tdp
