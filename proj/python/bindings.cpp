// Python entry points. Graphs travel as edge-list or matrix text, reports as
// JSON text; the ncdisco package turns them into dicts.

#include "ncdisco/commands.hpp"
#include "ncdisco/error.hpp"
#include "ncdisco/graph_io.hpp"
#include "ncdisco/metrics.hpp"
#include "ncdisco/pipeline.hpp"
#include "ncdisco/random_graph.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace ncdisco;

namespace {

MixedGraph parse_text(const std::string& text, const std::string& format, GraphKind kind,
                      const std::string& source) {
    std::istringstream in(text);
    return parse_graph(in, parse_graph_format(format), kind, source);
}

std::pair<MixedGraph, MixedGraph> parse_pair(const std::string& truth, const std::string& estimate,
                                             const std::string& format, GraphKind truth_kind) {
    auto t = parse_text(truth, format, truth_kind, "truth");
    auto e = parse_text(estimate, format, GraphKind::cpdag, "estimate");
    return {t, align_to(e, t.labels())};
}

std::string expect(std::int64_t m_true, std::int64_t m_est, std::optional<int> d,
                   std::optional<std::int64_t> m_max, const std::vector<std::string>& metrics,
                   double level, bool sweep) {
    if (d.has_value() == m_max.has_value()) throw InputError("give exactly one of d or m_max");
    ExpectOptions o;
    o.params = d ? HyperParams::for_nodes(*d, m_true, m_est) : HyperParams{*m_max, m_true, m_est};
    for (const auto& m : metrics) o.metrics.push_back(parse_metric_id(m));
    o.level = level;
    o.sweep = sweep;
    return run_expect(o).dump();
}

std::string fit_test(const std::string& truth, const std::string& estimate, const std::string& format) {
    const auto [t, e] = parse_pair(truth, estimate, format, GraphKind::cpdag);
    return run_fit_test(t, e).dump();
}

std::string compare(const std::string& truth, const std::string& estimate, const std::string& format,
                    const std::vector<std::string>& metrics, std::size_t nc_reps, std::uint64_t seed,
                    const std::optional<std::string>& nc_kind, std::size_t extension_cap) {
    const auto [t, e] = parse_pair(truth, estimate, format, GraphKind::dag);
    CompareOptions o;
    for (const auto& m : metrics) o.metrics.push_back(parse_graph_metric(m));
    o.nc_reps = nc_reps;
    o.seed = seed;
    if (nc_kind) o.nc_kind = parse_graph_kind(*nc_kind);
    o.extension_cap = extension_cap;
    const Dag truth_dag = Dag::from_graph(t);
    py::gil_scoped_release unlock;
    return run_compare(truth_dag, e, o).dump();
}

py::tuple pipeline(const std::string& config) {
    Json j;
    try {
        j = Json::parse(config);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    const auto cfg = pipeline_config_from_json(j);
    std::string summary;
    std::ostringstream csv;
    {
        py::gil_scoped_release unlock;
        const auto result = run_study(cfg);
        summary = study_summary(result).dump();
        write_replications_csv(csv, result);
    }
    return py::make_tuple(summary, csv.str());
}

std::string sample(int d, std::size_t m, const std::string& kind, std::uint64_t seed, std::uint64_t stream,
                   const std::string& format) {
    const RngSeed s{seed, stream};
    const MixedGraph g = parse_graph_kind(kind) == GraphKind::dag ? MixedGraph(sample_er_dag(d, m, s))
                                                                   : MixedGraph(sample_er_cpdag(d, m, s));
    std::ostringstream out;
    write_graph(out, g, parse_graph_format(format));
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_ncdisco, m) {
    m.doc() = "Exact hypergeometric nulls and negative controls for causal discovery evaluation";
    m.attr("report_schema_version") = report_schema_version;

    auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    auto numerical_error = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<ClassTooLarge>(m, "ClassTooLarge", numerical_error.ptr());
    (void)input_error;

    m.def("expect", &expect, py::arg("m_true"), py::arg("m_est"), py::kw_only(), py::arg("d") = py::none(),
          py::arg("m_max") = py::none(), py::arg("metrics") = std::vector<std::string>{},
          py::arg("level") = 0.95, py::arg("sweep") = false);
    m.def("fit_test", &fit_test, py::arg("truth"), py::arg("estimate"), py::arg("format") = "auto");
    m.def("compare", &compare, py::arg("truth"), py::arg("estimate"), py::arg("format") = "auto",
          py::arg("metrics") = std::vector<std::string>{}, py::arg("nc_reps") = 1000, py::arg("seed") = 1,
          py::arg("nc_kind") = py::none(), py::arg("extension_cap") = default_extension_cap);
    m.def("pipeline", &pipeline, py::arg("config"));
    m.def("sample", &sample, py::arg("d"), py::arg("m"), py::arg("kind") = "dag", py::arg("seed") = 1,
          py::arg("stream") = 0, py::arg("format") = "edge-list");
}
