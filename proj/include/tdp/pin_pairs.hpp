#ifndef TDP_PIN_PAIRS_HPP
#define TDP_PIN_PAIRS_HPP

#include <map>
#include <utility>
#include <vector>

#include "tdp/geometry.hpp"
#include "tdp/netlist.hpp"
#include "tdp/paths.hpp"

namespace tdp {

/// Maintained attraction set P: canonical (lower pin id, higher pin id) ->
/// weight. Ordered map so every traversal is deterministic.
using PinPairWeights = std::map<std::pair<int, int>, double>;

/// Applies one round of the dynamic weight schedule. `hits` must be ordered
/// worst path first (the order collect_pin_pairs preserves). A pair seen for
/// the first time enters at w0; every later encounter — in this round or any
/// earlier one — adds w1 * (path_slack / wns). Hits with non-negative path
/// slack are ignored. Callers must skip the round entirely when wns >= 0.
void update_pair_weights(PinPairWeights& weights, const std::vector<PairHit>& hits, double wns, double w0, double w1);

enum class PairLossKind {
    Quadratic, ///< w * ((xi-xj)^2 + (yi-yj)^2)
    Linear,    ///< w * sqrt((xi-xj)^2 + (yi-yj)^2), ablation comparator
};

struct PinPairLossResult {
    double value = 0.0;
    std::vector<Point> d_pin; ///< gradient per pin coordinate
};

/// Attraction loss over the maintained set. Gradients land on pin
/// coordinates; the caller folds them onto owner cells (fixed cells simply
/// never receive the fold, so pairs touching fixed pins pull only the movable
/// side).
PinPairLossResult pin_pair_loss(const PinPairWeights& weights, const PinPositions& pins, std::size_t num_pins,
                                PairLossKind kind = PairLossKind::Quadratic);

} // namespace tdp

#endif
