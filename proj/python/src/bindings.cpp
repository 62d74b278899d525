#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;

namespace {

tdp::Design design_with_positions(const std::string& design_json, const std::string& placement_json)
{
    tdp::Design design = tdp::design_from_json(design_json);
    if (!placement_json.empty()) design.positions = tdp::placement_from_json(placement_json, design);
    return design;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "timing-driven analytical global placement core (JSON-string boundary)";

    py::register_exception<tdp::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<tdp::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<tdp::NonFiniteError>(m, "NonFiniteError", PyExc_RuntimeError);
    py::register_exception<tdp::GraphError>(m, "GraphError", PyExc_RuntimeError);

    m.def(
        "generate",
        [](std::uint64_t seed, int cells, int registers, double fanout, double fail_frac, double r_unit,
           double c_unit) {
            tdp::GeneratorSpec spec;
            spec.seed = seed;
            spec.n_cells = cells;
            spec.n_registers = registers;
            spec.avg_fanout = fanout;
            spec.target_fail_fraction = fail_frac;
            spec.r_unit = r_unit;
            spec.c_unit = c_unit;
            return tdp::design_to_json(tdp::generate_synthetic(spec));
        },
        py::arg("seed") = 1, py::arg("cells") = 100, py::arg("registers") = -1, py::arg("fanout") = 2.0,
        py::arg("fail_frac") = 0.2, py::arg("r_unit") = 1e-4, py::arg("c_unit") = 1e-4,
        "Generate a synthetic design; returns the design as a JSON string.");

    m.def(
        "validate", [](const std::string& design_json) { tdp::design_from_json(design_json); },
        py::arg("design_json"), "Parse and validate a design; raises on problems.");

    m.def("default_config", [] { return tdp::config_to_json(tdp::OptimizerConfig{}); },
          "Default optimizer configuration as a JSON string.");

    m.def(
        "sta",
        [](const std::string& design_json, const std::string& placement_json) {
            const tdp::Design design = design_with_positions(design_json, placement_json);
            const tdp::TimingGraph graph = tdp::build_timing_graph(design.netlist);
            const tdp::TimingAnnotation ann = tdp::run_sta(
                graph, design.netlist, tdp::pin_positions(design.netlist, design.positions), design.constraints);
            return tdp::timing_to_json(ann, design.netlist);
        },
        py::arg("design_json"), py::arg("placement_json") = std::string(),
        "Run STA at the given placement (or the design's initial positions); returns timing JSON.");

    m.def(
        "report_paths",
        [](const std::string& design_json, const std::string& placement_json, const std::string& policy, int n,
           int k) {
            const tdp::Design design = design_with_positions(design_json, placement_json);
            const tdp::TimingGraph graph = tdp::build_timing_graph(design.netlist);
            const tdp::PinPositions pins = tdp::pin_positions(design.netlist, design.positions);
            const tdp::TimingAnnotation ann = tdp::run_sta(graph, design.netlist, pins, design.constraints);
            if (n <= 0) {
                n = 0;
                for (const auto& [pin, slack] : ann.endpoint_slacks)
                    if (slack < 0.0) ++n;
            }
            tdp::ExtractionReport report;
            if (policy == "endpoint")
                report = tdp::report_timing_endpoint(graph, design.netlist, pins, design.constraints, ann, n, k);
            else if (policy == "topn")
                report = tdp::report_timing(graph, design.netlist, pins, design.constraints, ann, n);
            else
                throw tdp::ValidationError("policy must be \"endpoint\" or \"topn\"");
            return tdp::report_to_json(report, design.netlist);
        },
        py::arg("design_json"), py::arg("placement_json") = std::string(), py::arg("policy") = "endpoint",
        py::arg("n") = 0, py::arg("k") = 1, "Extract worst paths; n <= 0 covers every violated endpoint.");

    m.def(
        "place",
        [](const std::string& design_json, const std::string& config_json) {
            const tdp::Design design = tdp::design_from_json(design_json);
            const tdp::OptimizerConfig config =
                config_json.empty() ? tdp::OptimizerConfig{} : tdp::config_from_json(config_json);
            tdp::PlacementOutcome outcome;
            {
                py::gil_scoped_release release;
                outcome = tdp::run_placement(design, config);
            }
            py::dict out;
            out["placement_json"] = tdp::placement_to_json(design.netlist, outcome.positions);
            out["metrics_csv"] = tdp::metrics_to_csv(outcome.trace);
            out["weights_json"] = tdp::weights_to_json(outcome.pair_weights, design.netlist);
            out["tns"] = outcome.final_timing.tns;
            out["wns"] = outcome.final_timing.wns;
            out["hpwl"] =
                tdp::hpwl_total(design.netlist, tdp::pin_positions(design.netlist, outcome.positions));
            out["iterations"] = outcome.iterations;
            out["stop_reason"] = outcome.stop_reason;
            return out;
        },
        py::arg("design_json"), py::arg("config_json") = std::string(),
        "Run the placement flow; returns outputs and summary metrics as a dict.");

    m.def(
        "compare",
        [](const std::string& design_json, const std::vector<std::string>& config_jsons, bool parallel) {
            const tdp::Design design = tdp::design_from_json(design_json);
            std::vector<tdp::OptimizerConfig> configs;
            configs.reserve(config_jsons.size());
            for (const std::string& c : config_jsons) configs.push_back(tdp::config_from_json(c));
            tdp::CompareReport report;
            {
                py::gil_scoped_release release;
                report = tdp::run_compare(design, configs, parallel);
            }
            return tdp::compare_to_csv(report);
        },
        py::arg("design_json"), py::arg("config_jsons"), py::arg("parallel") = false,
        "Ablation comparison across configs; returns the report as CSV text.");

    m.def(
        "render_svg",
        [](const std::string& design_json, const std::string& placement_json, const std::string& paths_json) {
            const tdp::Design design = design_with_positions(design_json, placement_json);
            std::vector<tdp::CriticalPath> paths;
            if (!paths_json.empty()) paths = tdp::paths_from_json(paths_json, design.netlist);
            return tdp::render_svg(design, design.positions, paths);
        },
        py::arg("design_json"), py::arg("placement_json") = std::string(), py::arg("paths_json") = std::string(),
        "Render the placement (and optional path overlay) as an SVG string.");

    m.def(
        "hpwl",
        [](const std::string& design_json, const std::string& placement_json) {
            const tdp::Design design = design_with_positions(design_json, placement_json);
            return tdp::hpwl_total(design.netlist, tdp::pin_positions(design.netlist, design.positions));
        },
        py::arg("design_json"), py::arg("placement_json") = std::string(), "Exact HPWL of a placement.");
}
