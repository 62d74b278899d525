#ifndef TDP_PLACER_HPP
#define TDP_PLACER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tdp/density.hpp"
#include "tdp/netlist.hpp"
#include "tdp/paths.hpp"
#include "tdp/pin_pairs.hpp"
#include "tdp/sta.hpp"

namespace tdp {

enum class ExtractionPolicy { Endpoint, TopN };

/// Everything that shapes a run. The timing knobs carry the defaults the
/// whole suite is tuned around (beta = 2.5e-5, m = 15, w0 = 10, w1 = 0.2,
/// timing from iteration 500); the optimizer knobs are free to override.
struct OptimizerConfig {
    std::string name = "default"; // row label in comparison reports

    // Objective
    double gamma_frac = 0.01;     // WA smoothing, fraction of core span
    int grid_nx = 16;
    int grid_ny = 16;
    double target_density = 0.6;
    double beta = 2.5e-5;         // pin-pair attraction multiplier
    PairLossKind pp_loss = PairLossKind::Quadratic;
    bool net_weighting = false;   // criticality-weighted nets (ablation baseline)

    // Timing schedule
    int m = 15;                   // timing round period, iterations
    double w0 = 10.0;
    double w1 = 0.2;
    int timing_start_iter = 500;
    ExtractionPolicy extraction = ExtractionPolicy::Endpoint;
    int k = 1;                    // paths per endpoint for the endpoint policy

    // Optimizer
    int max_iters = 1500;
    double stop_overflow = 0.0;   // engaged once timing rounds have started
    double mu = 1.05;             // lambda growth per iteration
    double lambda0 = 0.0;         // <= 0 selects gradient-norm balancing
    double lambda_max = 1e8;      // cap as a factor over the resolved lambda0
    double step0_frac = 0.01;     // initial step, fraction of core span
    double step_decay = 0.999;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 1;
    double init_jitter_frac = 0.02; // spread applied to implicit initial positions

    int threads = 1;
};

/// JSON round-trip with unknown-key rejection; every field is optional and
/// defaults as above. pp_loss is "quadratic"|"linear", extraction is
/// "endpoint"|"topn", lambda0 is "auto" or a positive number.
OptimizerConfig config_from_json(const std::string& text);
std::string config_to_json(const OptimizerConfig& config);
OptimizerConfig load_config(const std::string& path);
void save_config(const OptimizerConfig& config, const std::string& path);

struct TraceRow {
    int iter = 0;
    double hpwl = 0.0;
    double overflow = 0.0;
    bool has_timing = false; // true on STA iterations, where tns/wns are valid
    double tns = 0.0;
    double wns = 0.0;
    double wl_term = 0.0;      // weighted WA wirelength
    double density_term = 0.0; // raw density value (before lambda)
    double pp_term = 0.0;      // raw attraction value (before beta)
    double lambda = 0.0;
    double beta_pp = 0.0;      // beta * pp_term, the objective contribution
};

using MetricTrace = std::vector<TraceRow>;

/// Columns: iter,hpwl,overflow,tns,wns,wl_term,density_term,pp_term,lambda,
/// beta_pp. tns/wns cells are empty on rows without an STA pass. Values are
/// printed with %.17g so rewriting the file is bit-exact.
std::string metrics_to_csv(const MetricTrace& trace);

struct ObjectiveResult {
    double value = 0.0;        // wl + lambda*density + beta*pp
    double wl_term = 0.0;
    double density_term = 0.0;
    double pp_term = 0.0;
    double hpwl = 0.0;
    double overflow = 0.0;
    std::vector<Point> d_cell; // per cell; zero for fixed cells
};

/// Smoothed wirelength + density + attraction, with the analytic gradient
/// mapped onto movable-cell coordinates. net_weights may be empty (all 1).
/// Throws NonFiniteError if any term or gradient entry is non-finite.
ObjectiveResult objective_and_gradient(const Netlist& netlist, const std::vector<Point>& cell_pos,
                                       const DensityGrid& grid, const PinPairWeights& weights,
                                       const std::vector<double>& net_weights, double gamma, double lambda,
                                       double beta, PairLossKind pp_loss = PairLossKind::Quadratic, int threads = 1);

/// Criticality weights for the net-weighting baseline:
/// w_e = 1 + max(0, -worst_pin_slack(e) / |wns|), all 1 when wns >= 0.
std::vector<double> apply_net_weights(const TimingAnnotation& annotation, const Netlist& netlist);

/// Adam over a flat coordinate vector; kept public so tests can drive single
/// objective terms through the same update rule as the full engine.
struct AdamState {
    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}

    void step(std::vector<double>& x, const std::vector<double>& grad, double lr, double beta1, double beta2,
              double eps);

    std::vector<double> m;
    std::vector<double> v;
    int t = 0;
};

struct PlacementOutcome {
    std::vector<Point> positions;  // all cells, fixed ones untouched
    MetricTrace trace;
    PinPairWeights pair_weights;
    TimingAnnotation final_timing; // STA at the returned positions
    int iterations = 0;
    std::string stop_reason;       // "max_iters" or "overflow"
};

/// Called after each timing round with the fresh annotation and extraction
/// report (report is empty when wns >= 0 and the round was skipped).
using TimingRoundObserver =
    std::function<void(int iter, const TimingAnnotation& annotation, const ExtractionReport& report)>;

/// Full optimization loop: per-iteration gradient step on the combined
/// objective, lambda *= mu, and from timing_start_iter an STA + extraction +
/// weight-update round every m iterations (before that iteration's step).
/// Stops at max_iters, or earlier once overflow <= stop_overflow after
/// timing has engaged.
PlacementOutcome run_placement(const Design& design, const OptimizerConfig& config,
                               const TimingRoundObserver& observer = {});

/// Final maintained set as JSON: {pairs:[{a,b,weight}]} with pin names,
/// sorted by pin ids.
std::string weights_to_json(const PinPairWeights& weights, const Netlist& netlist);

} // namespace tdp

#endif
