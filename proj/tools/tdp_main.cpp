#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tdp/compare.hpp"
#include "tdp/design_io.hpp"
#include "tdp/errors.hpp"
#include "tdp/generator.hpp"
#include "tdp/placer.hpp"
#include "tdp/report_io.hpp"
#include "tdp/sta.hpp"
#include "tdp/svg.hpp"
#include "tdp/timing_graph.hpp"
#include "tdp/wirelength.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw tdp::ParseError("cannot open file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path);
    if (!out) throw tdp::ValidationError("cannot write output file: " + path);
    out << content;
}

int count_failing(const tdp::TimingAnnotation& ann)
{
    int n = 0;
    for (const auto& [pin, slack] : ann.endpoint_slacks)
        if (slack < 0.0) ++n;
    return n;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"timing-driven analytical global placer"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "tdp 0.1.0");

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic design");
    tdp::GeneratorSpec spec;
    std::string gen_out;
    gen->add_option("--seed", spec.seed, "rng seed")->capture_default_str();
    gen->add_option("--cells", spec.n_cells, "combinational cell count")->capture_default_str();
    gen->add_option("--registers", spec.n_registers, "register count (negative: cells/10)")->capture_default_str();
    gen->add_option("--fanout", spec.avg_fanout, "mean sinks per net")->capture_default_str();
    gen->add_option("--fail-frac", spec.target_fail_fraction, "fraction of endpoints failing after the coarse run")
        ->capture_default_str();
    gen->add_option("--r-unit", spec.r_unit, "resistance per length unit")->capture_default_str();
    gen->add_option("--c-unit", spec.c_unit, "capacitance per length unit")->capture_default_str();
    gen->add_option("-o,--out", gen_out, "output design file")->required();

    // place
    auto* place = app.add_subcommand("place", "run the full placement flow");
    std::string place_design, place_config, place_out;
    place->add_option("design", place_design, "design file")->required();
    place->add_option("--config", place_config, "optimizer config (defaults when omitted)");
    place->add_option("-o,--out", place_out, "output directory")->required();

    // sta
    auto* sta = app.add_subcommand("sta", "static timing analysis of a placement");
    std::string sta_design, sta_placement, sta_out;
    sta->add_option("design", sta_design, "design file")->required();
    sta->add_option("placement", sta_placement, "placement file")->required();
    sta->add_option("-o,--out", sta_out, "output timing report")->required();

    // report-paths
    auto* rp = app.add_subcommand("report-paths", "extract worst paths from a placement");
    std::string rp_design, rp_placement, rp_out, rp_policy = "endpoint";
    int rp_n = 0, rp_k = 1;
    rp->add_option("design", rp_design, "design file")->required();
    rp->add_option("placement", rp_placement, "placement file")->required();
    rp->add_option("--policy", rp_policy, "extraction policy")
        ->check(CLI::IsMember({"endpoint", "topn"}))
        ->capture_default_str();
    rp->add_option("--n", rp_n, "endpoint budget (0: every violated endpoint)")->capture_default_str();
    rp->add_option("--k", rp_k, "paths per endpoint (endpoint policy)")->capture_default_str();
    rp->add_option("-o,--out", rp_out, "output paths file")->required();

    // compare
    auto* cmp = app.add_subcommand("compare", "run an ablation comparison");
    std::string cmp_design, cmp_out;
    std::vector<std::string> cmp_configs;
    bool cmp_parallel = false;
    cmp->add_option("design", cmp_design, "design file")->required();
    cmp->add_option("--configs", cmp_configs, "config files (two or more)")->required()->expected(-1);
    cmp->add_flag("--parallel", cmp_parallel, "run configurations concurrently");
    cmp->add_option("-o,--out", cmp_out, "output report CSV")->required();

    // plot
    auto* plot = app.add_subcommand("plot", "render a placement as SVG");
    std::string plot_design, plot_placement, plot_paths, plot_out;
    plot->add_option("design", plot_design, "design file")->required();
    plot->add_option("placement", plot_placement, "placement file")->required();
    plot->add_option("--paths", plot_paths, "paths file to overlay");
    plot->add_option("-o,--out", plot_out, "output SVG file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return 1;
    }

    try {
        if (gen->parsed()) {
            const tdp::Design design = tdp::generate_synthetic(spec);
            tdp::save_design(design, gen_out);
            std::printf("generated %zu cells, %zu pins, %zu nets; clock_period=%.6g -> %s\n",
                        design.netlist.cells.size(), design.netlist.pins.size(), design.netlist.nets.size(),
                        design.constraints.clock_period, gen_out.c_str());
        } else if (place->parsed()) {
            const tdp::Design design = tdp::load_design(place_design);
            const tdp::OptimizerConfig config =
                place_config.empty() ? tdp::OptimizerConfig{} : tdp::load_config(place_config);
            fs::create_directories(place_out);
            const tdp::PlacementOutcome outcome = tdp::run_placement(design, config);
            write_file((fs::path(place_out) / "placement.json").string(),
                       tdp::placement_to_json(design.netlist, outcome.positions));
            write_file((fs::path(place_out) / "metrics.csv").string(), tdp::metrics_to_csv(outcome.trace));
            write_file((fs::path(place_out) / "weights.json").string(),
                       tdp::weights_to_json(outcome.pair_weights, design.netlist));
            tdp::save_config(config, (fs::path(place_out) / "config.json").string());
            const double hpwl =
                tdp::hpwl_total(design.netlist, tdp::pin_positions(design.netlist, outcome.positions));
            std::printf("%d iterations (%s); hpwl=%.6g tns=%.6g wns=%.6g; %d/%zu endpoints failing\n",
                        outcome.iterations, outcome.stop_reason.c_str(), hpwl, outcome.final_timing.tns,
                        outcome.final_timing.wns, count_failing(outcome.final_timing),
                        design.netlist.endpoints.size());
        } else if (sta->parsed()) {
            const tdp::Design design = tdp::load_design(sta_design);
            const std::vector<tdp::Point> positions =
                tdp::placement_from_json(read_file(sta_placement), design);
            const tdp::TimingGraph graph = tdp::build_timing_graph(design.netlist);
            const tdp::TimingAnnotation ann = tdp::run_sta(
                graph, design.netlist, tdp::pin_positions(design.netlist, positions), design.constraints);
            write_file(sta_out, tdp::timing_to_json(ann, design.netlist));
            std::printf("tns=%.6g wns=%.6g; %d/%zu endpoints failing -> %s\n", ann.tns, ann.wns,
                        count_failing(ann), design.netlist.endpoints.size(), sta_out.c_str());
        } else if (rp->parsed()) {
            const tdp::Design design = tdp::load_design(rp_design);
            const std::vector<tdp::Point> positions = tdp::placement_from_json(read_file(rp_placement), design);
            const tdp::TimingGraph graph = tdp::build_timing_graph(design.netlist);
            const tdp::PinPositions pins = tdp::pin_positions(design.netlist, positions);
            const tdp::TimingAnnotation ann = tdp::run_sta(graph, design.netlist, pins, design.constraints);
            const int n = rp_n > 0 ? rp_n : count_failing(ann);
            const tdp::ExtractionReport report =
                rp_policy == "endpoint"
                    ? tdp::report_timing_endpoint(graph, design.netlist, pins, design.constraints, ann, n, rp_k)
                    : tdp::report_timing(graph, design.netlist, pins, design.constraints, ann, n);
            write_file(rp_out, tdp::report_to_json(report, design.netlist));
            std::printf("%zu paths (%s, n=%d, k=%d), %d unique endpoints, %d unique pin pairs -> %s\n",
                        report.paths.size(), report.policy.c_str(), report.n, report.k, report.unique_endpoints,
                        report.unique_pin_pairs, rp_out.c_str());
        } else if (cmp->parsed()) {
            const tdp::Design design = tdp::load_design(cmp_design);
            std::vector<tdp::OptimizerConfig> configs;
            for (const std::string& path : cmp_configs) {
                tdp::OptimizerConfig c = tdp::load_config(path);
                if (c.name == "default") c.name = fs::path(path).stem().string();
                configs.push_back(std::move(c));
            }
            const tdp::CompareReport report = tdp::run_compare(design, configs, cmp_parallel);
            write_file(cmp_out, tdp::compare_to_csv(report));
            nlohmann::json resolved = nlohmann::json::array();
            for (const tdp::OptimizerConfig& c : configs) resolved.push_back(nlohmann::json::parse(tdp::config_to_json(c)));
            write_file(fs::path(cmp_out).replace_extension(".configs.json").string(), resolved.dump(2) + "\n");
            std::fputs(tdp::compare_to_table(report).c_str(), stdout);
        } else if (plot->parsed()) {
            const tdp::Design design = tdp::load_design(plot_design);
            const std::vector<tdp::Point> positions = tdp::placement_from_json(read_file(plot_placement), design);
            std::vector<tdp::CriticalPath> paths;
            if (!plot_paths.empty()) paths = tdp::paths_from_json(read_file(plot_paths), design.netlist);
            write_file(plot_out, tdp::render_svg(design, positions, paths));
            std::printf("wrote %s (%zu cells, %zu paths)\n", plot_out.c_str(), design.netlist.cells.size(),
                        paths.size());
        }
    } catch (const tdp::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const tdp::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}
