#include "tdp/placer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "tdp/errors.hpp"
#include "tdp/parallel.hpp"
#include "tdp/rng.hpp"
#include "tdp/timing_graph.hpp"
#include "tdp/wirelength.hpp"

namespace tdp {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) { known = true; break; }
        }
        if (!known) throw ParseError("config: unknown key \"" + it.key() + "\"");
    }
}

void get_num(const json& j, const char* key, double& out)
{
    if (!j.contains(key)) return;
    if (!j[key].is_number()) throw ParseError(std::string("config: \"") + key + "\" must be a number");
    out = j[key].get<double>();
}

void get_int(const json& j, const char* key, int& out)
{
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) throw ParseError(std::string("config: \"") + key + "\" must be an integer");
    out = j[key].get<int>();
}

void get_bool(const json& j, const char* key, bool& out)
{
    if (!j.contains(key)) return;
    if (!j[key].is_boolean()) throw ParseError(std::string("config: \"") + key + "\" must be a boolean");
    out = j[key].get<bool>();
}

void get_str(const json& j, const char* key, std::string& out)
{
    if (!j.contains(key)) return;
    if (!j[key].is_string()) throw ParseError(std::string("config: \"") + key + "\" must be a string");
    out = j[key].get<std::string>();
}

void require_positive(double v, const char* what)
{
    if (!(v > 0.0)) throw ValidationError(std::string("config: ") + what + " must be > 0");
}

void validate_config(const OptimizerConfig& c)
{
    if (c.grid_nx < 1 || c.grid_ny < 1) throw ValidationError("config: density grid must be at least 1x1");
    require_positive(c.target_density, "target_density");
    require_positive(c.gamma_frac, "gamma_frac");
    if (c.beta < 0.0) throw ValidationError("config: beta must be >= 0");
    if (c.m < 1) throw ValidationError("config: m must be >= 1");
    require_positive(c.w0, "w0");
    if (c.w1 < 0.0) throw ValidationError("config: w1 must be >= 0");
    if (c.timing_start_iter < 0) throw ValidationError("config: timing_start_iter must be >= 0");
    if (c.k < 1) throw ValidationError("config: k must be >= 1");
    if (c.max_iters < 0) throw ValidationError("config: max_iters must be >= 0");
    if (c.stop_overflow < 0.0) throw ValidationError("config: stop_overflow must be >= 0");
    require_positive(c.mu, "mu");
    require_positive(c.lambda_max, "lambda_max");
    require_positive(c.step0_frac, "step0_frac");
    if (!(c.step_decay > 0.0 && c.step_decay <= 1.0)) throw ValidationError("config: step_decay must be in (0, 1]");
    if (!(c.adam_beta1 >= 0.0 && c.adam_beta1 < 1.0) || !(c.adam_beta2 >= 0.0 && c.adam_beta2 < 1.0))
        throw ValidationError("config: adam betas must be in [0, 1)");
    require_positive(c.adam_eps, "adam_eps");
    if (c.init_jitter_frac < 0.0) throw ValidationError("config: init_jitter_frac must be >= 0");
    if (c.threads < 1) throw ValidationError("config: threads must be >= 1");
}

std::string fmt17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void clamp_to_core(Point& p, const Cell& cell, const Rect& core)
{
    p.x = std::clamp(p.x, core.x_lo, core.x_hi - cell.width);
    p.y = std::clamp(p.y, core.y_lo, core.y_hi - cell.height);
}

} // namespace

OptimizerConfig config_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("config: expected a JSON object");
    reject_unknown_keys(j, {"name",       "gamma_frac",        "grid_nx",     "grid_ny",    "target_density",
                            "beta",       "pp_loss",           "net_weighting", "m",        "w0",
                            "w1",         "timing_start_iter", "extraction",  "k",          "max_iters",
                            "stop_overflow", "mu",             "lambda0",     "lambda_max", "step0_frac", "step_decay",
                            "adam_beta1", "adam_beta2",        "adam_eps",    "seed",       "init_jitter_frac",
                            "threads"});

    OptimizerConfig c;
    get_str(j, "name", c.name);
    get_num(j, "gamma_frac", c.gamma_frac);
    get_int(j, "grid_nx", c.grid_nx);
    get_int(j, "grid_ny", c.grid_ny);
    get_num(j, "target_density", c.target_density);
    get_num(j, "beta", c.beta);
    get_num(j, "mu", c.mu);
    get_int(j, "m", c.m);
    get_num(j, "w0", c.w0);
    get_num(j, "w1", c.w1);
    get_int(j, "timing_start_iter", c.timing_start_iter);
    get_int(j, "k", c.k);
    get_int(j, "max_iters", c.max_iters);
    get_num(j, "stop_overflow", c.stop_overflow);
    get_num(j, "lambda_max", c.lambda_max);
    get_num(j, "step0_frac", c.step0_frac);
    get_num(j, "step_decay", c.step_decay);
    get_num(j, "adam_beta1", c.adam_beta1);
    get_num(j, "adam_beta2", c.adam_beta2);
    get_num(j, "adam_eps", c.adam_eps);
    get_num(j, "init_jitter_frac", c.init_jitter_frac);
    get_int(j, "threads", c.threads);
    get_bool(j, "net_weighting", c.net_weighting);

    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw ParseError("config: \"seed\" must be an integer");
        c.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("pp_loss")) {
        std::string s;
        get_str(j, "pp_loss", s);
        if (s == "quadratic") c.pp_loss = PairLossKind::Quadratic;
        else if (s == "linear") c.pp_loss = PairLossKind::Linear;
        else throw ParseError("config: pp_loss must be \"quadratic\" or \"linear\"");
    }
    if (j.contains("extraction")) {
        std::string s;
        get_str(j, "extraction", s);
        if (s == "endpoint") c.extraction = ExtractionPolicy::Endpoint;
        else if (s == "topn") c.extraction = ExtractionPolicy::TopN;
        else throw ParseError("config: extraction must be \"endpoint\" or \"topn\"");
    }
    if (j.contains("lambda0")) {
        if (j["lambda0"].is_string()) {
            if (j["lambda0"].get<std::string>() != "auto")
                throw ParseError("config: lambda0 must be \"auto\" or a positive number");
            c.lambda0 = 0.0;
        } else if (j["lambda0"].is_number()) {
            c.lambda0 = j["lambda0"].get<double>();
            if (!(c.lambda0 > 0.0)) throw ParseError("config: lambda0 must be \"auto\" or a positive number");
        } else {
            throw ParseError("config: lambda0 must be \"auto\" or a positive number");
        }
    }

    validate_config(c);
    return c;
}

std::string config_to_json(const OptimizerConfig& c)
{
    json j;
    j["name"] = c.name;
    j["gamma_frac"] = c.gamma_frac;
    j["grid_nx"] = c.grid_nx;
    j["grid_ny"] = c.grid_ny;
    j["target_density"] = c.target_density;
    j["beta"] = c.beta;
    j["pp_loss"] = c.pp_loss == PairLossKind::Quadratic ? "quadratic" : "linear";
    j["net_weighting"] = c.net_weighting;
    j["m"] = c.m;
    j["w0"] = c.w0;
    j["w1"] = c.w1;
    j["timing_start_iter"] = c.timing_start_iter;
    j["extraction"] = c.extraction == ExtractionPolicy::Endpoint ? "endpoint" : "topn";
    j["k"] = c.k;
    j["max_iters"] = c.max_iters;
    j["stop_overflow"] = c.stop_overflow;
    j["mu"] = c.mu;
    if (c.lambda0 > 0.0) j["lambda0"] = c.lambda0;
    else j["lambda0"] = "auto";
    j["lambda_max"] = c.lambda_max;
    j["step0_frac"] = c.step0_frac;
    j["step_decay"] = c.step_decay;
    j["adam_beta1"] = c.adam_beta1;
    j["adam_beta2"] = c.adam_beta2;
    j["adam_eps"] = c.adam_eps;
    j["seed"] = c.seed;
    j["init_jitter_frac"] = c.init_jitter_frac;
    j["threads"] = c.threads;
    return j.dump(2) + "\n";
}

OptimizerConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

void save_config(const OptimizerConfig& config, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write config file: " + path);
    out << config_to_json(config);
}

std::string metrics_to_csv(const MetricTrace& trace)
{
    std::string out = "iter,hpwl,overflow,tns,wns,wl_term,density_term,pp_term,lambda,beta_pp\n";
    for (const TraceRow& r : trace) {
        out += std::to_string(r.iter);
        out += ',';
        out += fmt17(r.hpwl);
        out += ',';
        out += fmt17(r.overflow);
        out += ',';
        if (r.has_timing) out += fmt17(r.tns);
        out += ',';
        if (r.has_timing) out += fmt17(r.wns);
        out += ',';
        out += fmt17(r.wl_term);
        out += ',';
        out += fmt17(r.density_term);
        out += ',';
        out += fmt17(r.pp_term);
        out += ',';
        out += fmt17(r.lambda);
        out += ',';
        out += fmt17(r.beta_pp);
        out += '\n';
    }
    return out;
}

std::vector<double> apply_net_weights(const TimingAnnotation& annotation, const Netlist& netlist)
{
    std::vector<double> w(netlist.nets.size(), 1.0);
    if (annotation.wns >= 0.0) return w;
    for (std::size_t e = 0; e < netlist.nets.size(); ++e) {
        const Net& net = netlist.nets[e];
        double worst = annotation.slack[static_cast<std::size_t>(net.driver)];
        for (int s : net.sinks) worst = std::min(worst, annotation.slack[static_cast<std::size_t>(s)]);
        if (worst < 0.0) w[e] = 1.0 + (-worst) / (-annotation.wns);
    }
    return w;
}

ObjectiveResult objective_and_gradient(const Netlist& netlist, const std::vector<Point>& cell_pos,
                                       const DensityGrid& grid, const PinPairWeights& weights,
                                       const std::vector<double>& net_weights, double gamma, double lambda,
                                       double beta, PairLossKind pp_loss_kind, int threads)
{
    if (!net_weights.empty() && net_weights.size() != netlist.nets.size())
        throw ValidationError("net weight count does not match net count");

    ObjectiveResult out;
    const PinPositions pos = pin_positions(netlist, cell_pos);

    // Per-net smoothed wirelength in parallel; accumulation onto pins stays
    // in net order so results are identical for any worker count.
    std::vector<NetTermGrad> per_net(netlist.nets.size());
    parallel_for(netlist.nets.size(), threads, [&](std::size_t e) {
        const Net& net = netlist.nets[e];
        std::vector<Point> net_pos;
        net_pos.reserve(net.sinks.size() + 1);
        net_pos.push_back(pos[static_cast<std::size_t>(net.driver)]);
        for (int s : net.sinks) net_pos.push_back(pos[static_cast<std::size_t>(s)]);
        per_net[e] = wa_wirelength(net_pos, gamma);
    });

    std::vector<Point> pin_grad(netlist.pins.size(), Point{});
    for (std::size_t e = 0; e < netlist.nets.size(); ++e) {
        const double w = net_weights.empty() ? 1.0 : net_weights[e];
        out.wl_term += w * per_net[e].value;
        const Net& net = netlist.nets[e];
        auto add = [&](int pin, const Point& g) {
            pin_grad[static_cast<std::size_t>(pin)].x += w * g.x;
            pin_grad[static_cast<std::size_t>(pin)].y += w * g.y;
        };
        add(net.driver, per_net[e].d_pin[0]);
        for (std::size_t s = 0; s < net.sinks.size(); ++s) add(net.sinks[s], per_net[e].d_pin[s + 1]);
    }

    const DensityResult dens = grid.evaluate(netlist, cell_pos, threads);
    out.density_term = dens.value;
    out.overflow = dens.overflow;

    const PinPairLossResult pp = pin_pair_loss(weights, pos, netlist.pins.size(), pp_loss_kind);
    out.pp_term = pp.value;

    out.d_cell.assign(netlist.cells.size(), Point{});
    for (std::size_t p = 0; p < netlist.pins.size(); ++p) {
        const Pin& pin = netlist.pins[p];
        if (pin.is_terminal()) continue;
        auto& g = out.d_cell[static_cast<std::size_t>(pin.cell)];
        g.x += pin_grad[p].x + beta * pp.d_pin[p].x;
        g.y += pin_grad[p].y + beta * pp.d_pin[p].y;
    }
    for (std::size_t c = 0; c < netlist.cells.size(); ++c) {
        if (netlist.cells[c].is_fixed) {
            out.d_cell[c] = Point{};
            continue;
        }
        out.d_cell[c].x += lambda * dens.d_cell[c].x;
        out.d_cell[c].y += lambda * dens.d_cell[c].y;
    }

    out.hpwl = hpwl_total(netlist, pos);
    out.value = out.wl_term + lambda * out.density_term + beta * out.pp_term;

    bool finite = std::isfinite(out.value) && std::isfinite(out.wl_term) && std::isfinite(out.density_term) &&
                  std::isfinite(out.pp_term);
    for (const Point& g : out.d_cell) finite = finite && std::isfinite(g.x) && std::isfinite(g.y);
    if (!finite) throw NonFiniteError("non-finite objective or gradient");
    return out;
}

void AdamState::step(std::vector<double>& x, const std::vector<double>& grad, double lr, double beta1, double beta2,
                     double eps)
{
    ++t;
    const double c1 = 1.0 - std::pow(beta1, t);
    const double c2 = 1.0 - std::pow(beta2, t);
    for (std::size_t i = 0; i < x.size(); ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
        x[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
    }
}

PlacementOutcome run_placement(const Design& design, const OptimizerConfig& config, const TimingRoundObserver& observer)
{
    validate_config(config);
    const Netlist& nl = design.netlist;
    const DesignConstraints& dc = design.constraints;
    const TimingGraph graph = build_timing_graph(nl);

    PlacementOutcome out;
    out.positions = design.positions;
    out.stop_reason = "max_iters";

    const double span = dc.core.span();
    const double gamma = config.gamma_frac * span;

    // Implicit (file-omitted) starts sit stacked at the core center; a small
    // seeded spread breaks that symmetry so identical cells do not move in
    // lockstep forever.
    std::mt19937_64 rng(config.seed);
    for (std::size_t c = 0; c < nl.cells.size(); ++c) {
        const Cell& cell = nl.cells[c];
        if (cell.is_fixed || design.pos_explicit[c]) continue;
        out.positions[c].x += rng_uniform(rng, -1.0, 1.0) * config.init_jitter_frac * dc.core.width();
        out.positions[c].y += rng_uniform(rng, -1.0, 1.0) * config.init_jitter_frac * dc.core.height();
        clamp_to_core(out.positions[c], cell, dc.core);
    }

    const DensityGrid grid(nl, dc.core, config.grid_nx, config.grid_ny, config.target_density);
    PinPairWeights pairs;
    std::vector<double> net_weights; // empty means unit weights

    double lambda = config.lambda0;
    if (lambda <= 0.0) {
        // Balance the two gradient fields at the start: |lambda * grad D|_1
        // = |grad WL|_1.
        const ObjectiveResult wl_only =
            objective_and_gradient(nl, out.positions, grid, {}, {}, gamma, 0.0, 0.0, config.pp_loss, config.threads);
        const DensityResult d0 = grid.evaluate(nl, out.positions, config.threads);
        double wl_l1 = 0.0, d_l1 = 0.0;
        for (std::size_t c = 0; c < nl.cells.size(); ++c) {
            if (nl.cells[c].is_fixed) continue;
            wl_l1 += std::abs(wl_only.d_cell[c].x) + std::abs(wl_only.d_cell[c].y);
            d_l1 += std::abs(d0.d_cell[c].x) + std::abs(d0.d_cell[c].y);
        }
        lambda = (wl_l1 > 0.0 && d_l1 > 0.0) ? wl_l1 / d_l1 : 1.0;
    }
    // Unchecked geometric growth would reach ~1e19 over 900 iterations and
    // drown every other force in rounding noise, so the multiplier saturates.
    const double lambda_cap = lambda * config.lambda_max;

    AdamState adam(2 * nl.cells.size());
    std::vector<double> flat(2 * nl.cells.size());
    std::vector<double> grad_flat(2 * nl.cells.size());
    bool timing_engaged = false;

    for (int iter = 0; iter < config.max_iters; ++iter) {
        bool sta_row = false;
        double row_tns = 0.0, row_wns = 0.0;
        if (iter >= config.timing_start_iter && (iter - config.timing_start_iter) % config.m == 0) {
            timing_engaged = true;
            const PinPositions ppos = pin_positions(nl, out.positions);
            const TimingAnnotation ann = run_sta(graph, nl, ppos, dc, config.threads);
            sta_row = true;
            row_tns = ann.tns;
            row_wns = ann.wns;
            ExtractionReport report;
            if (ann.wns < 0.0) {
                int n_fail = 0;
                for (const auto& [pin, slack] : ann.endpoint_slacks)
                    if (slack < 0.0) ++n_fail;
                report = config.extraction == ExtractionPolicy::Endpoint
                             ? report_timing_endpoint(graph, nl, ppos, dc, ann, n_fail, config.k, config.threads)
                             : report_timing(graph, nl, ppos, dc, ann, n_fail, config.threads);
                const std::vector<PairHit> hits = collect_pin_pairs(nl, report.paths);
                update_pair_weights(pairs, hits, ann.wns, config.w0, config.w1);
            }
            if (config.net_weighting) net_weights = apply_net_weights(ann, nl);
            if (observer) observer(iter, ann, report);
        }

        ObjectiveResult obj;
        try {
            obj = objective_and_gradient(nl, out.positions, grid, pairs, net_weights, gamma, lambda, config.beta,
                                         config.pp_loss, config.threads);
        } catch (const NonFiniteError& e) {
            throw NonFiniteError(std::string(e.what()) + " at iteration " + std::to_string(iter));
        }

        TraceRow row;
        row.iter = iter;
        row.hpwl = obj.hpwl;
        row.overflow = obj.overflow;
        row.has_timing = sta_row;
        row.tns = row_tns;
        row.wns = row_wns;
        row.wl_term = obj.wl_term;
        row.density_term = obj.density_term;
        row.pp_term = obj.pp_term;
        row.lambda = lambda;
        row.beta_pp = config.beta * obj.pp_term;
        out.trace.push_back(row);

        if (timing_engaged && obj.overflow <= config.stop_overflow) {
            out.stop_reason = "overflow";
            break;
        }

        for (std::size_t c = 0; c < nl.cells.size(); ++c) {
            flat[2 * c] = out.positions[c].x;
            flat[2 * c + 1] = out.positions[c].y;
            grad_flat[2 * c] = obj.d_cell[c].x;
            grad_flat[2 * c + 1] = obj.d_cell[c].y;
        }
        const double lr = config.step0_frac * span * std::pow(config.step_decay, iter);
        adam.step(flat, grad_flat, lr, config.adam_beta1, config.adam_beta2, config.adam_eps);
        for (std::size_t c = 0; c < nl.cells.size(); ++c) {
            if (nl.cells[c].is_fixed) continue;
            out.positions[c] = Point{flat[2 * c], flat[2 * c + 1]};
            clamp_to_core(out.positions[c], nl.cells[c], dc.core);
        }
        lambda = std::min(lambda * config.mu, lambda_cap);
    }

    out.iterations = static_cast<int>(out.trace.size());
    out.pair_weights = std::move(pairs);
    out.final_timing = run_sta(graph, nl, pin_positions(nl, out.positions), dc, config.threads);
    return out;
}

std::string weights_to_json(const PinPairWeights& weights, const Netlist& netlist)
{
    json arr = json::array();
    for (const auto& [pair, w] : weights) {
        json item;
        item["a"] = netlist.pins[static_cast<std::size_t>(pair.first)].name;
        item["b"] = netlist.pins[static_cast<std::size_t>(pair.second)].name;
        item["weight"] = w;
        arr.push_back(item);
    }
    json j;
    j["pairs"] = arr;
    return j.dump(2) + "\n";
}

} // namespace tdp
