// Command-line front end for the ncdisco library.

#include "ncdisco/commands.hpp"
#include "ncdisco/error.hpp"
#include "ncdisco/graph_io.hpp"
#include "ncdisco/random_graph.hpp"
#include "ncdisco/sem.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace ncdisco;

namespace {

constexpr int exit_input = 2;
constexpr int exit_numerical = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("NCDISCO_SEED")) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw InputError(std::string("NCDISCO_SEED is not an unsigned integer: '") + env + "'");
    }
    return 1;
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    return out;
}

struct GraphArgs {
    std::string truth;
    std::string estimate;
    std::string format = "auto";
};

void add_graph_args(CLI::App* cmd, GraphArgs& g) {
    cmd->add_option("--truth", g.truth, "True DAG file")->required();
    cmd->add_option("--estimate", g.estimate, "Estimated graph file")->required();
    cmd->add_option("--format", g.format, "edge-list, matrix or auto")->capture_default_str();
}

// Reads truth and estimate and aligns the estimate's nodes to the truth's labels.
std::pair<MixedGraph, MixedGraph> load_pair(const GraphArgs& g, GraphKind truth_kind) {
    const auto format = parse_graph_format(g.format);
    auto truth = read_graph(g.truth, format, truth_kind);
    auto est = read_graph(g.estimate, format, GraphKind::cpdag);
    return {truth, align_to(est, truth.labels())};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Negative-control and exact-null evaluation of causal discovery output"};
    app.require_subcommand(1);

    // expect
    auto* expect = app.add_subcommand("expect", "Exact null expectation, median and interval of adjacency metrics");
    std::optional<int> ex_d;
    std::optional<std::int64_t> ex_m_max;
    std::int64_t ex_m_true = 0;
    std::int64_t ex_m_est = 0;
    std::vector<std::string> ex_metrics;
    double ex_level = 0.95;
    bool ex_sweep = false;
    bool ex_json = false;
    auto* d_opt = expect->add_option("--d", ex_d, "Number of nodes");
    auto* mmax_opt = expect->add_option("--m-max", ex_m_max, "Number of node pairs");
    d_opt->excludes(mmax_opt);
    expect->add_option("--m-true", ex_m_true, "Edges in the true graph")->required();
    expect->add_option("--m-est", ex_m_est, "Edges in the estimate")->required();
    expect->add_option("--metric", ex_metrics, "precision, recall, f1, npv or specificity (repeatable)");
    expect->add_option("--level", ex_level, "Central interval coverage")->capture_default_str();
    expect->add_flag("--sweep", ex_sweep, "Tabulate expectations over every m_est");
    expect->add_flag("--json", ex_json, "Print JSON");

    // fit-test
    auto* fit = app.add_subcommand("fit-test", "One-sided exact test of skeleton fit");
    GraphArgs fit_graphs;
    bool fit_json = false;
    add_graph_args(fit, fit_graphs);
    fit->add_flag("--json", fit_json, "Print JSON");

    // compare
    auto* compare = app.add_subcommand("compare", "Metrics for one estimate with negative-control p-values");
    GraphArgs cmp_graphs;
    std::size_t cmp_reps = 1000;
    std::optional<std::uint64_t> cmp_seed;
    std::vector<std::string> cmp_metrics;
    std::string cmp_kind;
    std::size_t cmp_cap = default_extension_cap;
    bool cmp_json = false;
    add_graph_args(compare, cmp_graphs);
    compare->add_option("--nc-reps", cmp_reps, "Negative controls to draw")->capture_default_str();
    compare->add_option("--seed", cmp_seed, "Master seed (default: NCDISCO_SEED or 1)");
    compare->add_option("--metric", cmp_metrics, "Metric name (repeatable; default all)");
    compare->add_option("--nc-kind", cmp_kind, "dag or cpdag (default: inferred from the estimate)");
    compare->add_option("--extension-cap", cmp_cap, "Largest equivalence class enumerated for SID")
        ->capture_default_str();
    compare->add_flag("--json", cmp_json, "Print JSON");

    // pipeline
    auto* pipeline = app.add_subcommand("pipeline", "Simulation study with paired negative controls");
    std::string pl_config;
    std::string pl_out;
    std::optional<std::size_t> pl_threads;
    std::optional<std::uint64_t> pl_seed;
    bool pl_json = false;
    pipeline->add_option("--config", pl_config, "JSON configuration file")->required();
    pipeline->add_option("--out-dir", pl_out, "Directory for summary.json and replications.csv")->required();
    pipeline->add_option("--threads", pl_threads, "Worker threads (results do not depend on this)");
    pipeline->add_option("--seed", pl_seed, "Master seed; overrides the config and NCDISCO_SEED");
    pipeline->add_flag("--json", pl_json, "Print the summary JSON instead of a table");

    // sample
    auto* sample = app.add_subcommand("sample", "Draw a random DAG or CPDAG with a fixed edge count");
    int sm_d = 0;
    std::size_t sm_m = 0;
    std::string sm_kind = "dag";
    std::string sm_format = "edge-list";
    std::optional<std::uint64_t> sm_seed;
    std::uint64_t sm_stream = 0;
    std::string sm_out;
    sample->add_option("--d", sm_d, "Number of nodes")->required();
    sample->add_option("--m", sm_m, "Number of edges")->required();
    sample->add_option("--kind", sm_kind, "dag or cpdag")->capture_default_str();
    sample->add_option("--format", sm_format, "edge-list or matrix")->capture_default_str();
    sample->add_option("--seed", sm_seed, "Master seed (default: NCDISCO_SEED or 1)");
    sample->add_option("--stream", sm_stream, "Stream index within the seed")->capture_default_str();
    sample->add_option("--out", sm_out, "Output file (default stdout)");

    // simulate-data
    auto* simdata = app.add_subcommand("simulate-data", "Sample data from a random linear Gaussian SEM on a DAG");
    std::string sd_graph;
    std::string sd_format = "auto";
    SemConfig sd_sem;
    std::optional<std::uint64_t> sd_seed;
    std::string sd_out;
    simdata->add_option("--graph", sd_graph, "DAG file")->required();
    simdata->add_option("--format", sd_format, "edge-list, matrix or auto")->capture_default_str();
    simdata->add_option("--n", sd_sem.n, "Sample size")->capture_default_str();
    simdata->add_option("--weight-lo", sd_sem.weight_lo, "Smallest absolute edge weight")->capture_default_str();
    simdata->add_option("--weight-hi", sd_sem.weight_hi, "Largest absolute edge weight")->capture_default_str();
    simdata->add_option("--variance-lo", sd_sem.variance_lo, "Smallest error variance")->capture_default_str();
    simdata->add_option("--variance-hi", sd_sem.variance_hi, "Largest error variance")->capture_default_str();
    simdata->add_option("--seed", sd_seed, "Master seed (default: NCDISCO_SEED or 1)");
    simdata->add_option("--out", sd_out, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    try {
        if (*expect) {
            if (!ex_d && !ex_m_max) throw InputError("expect: give --d or --m-max");
            ExpectOptions o;
            o.params = ex_d ? HyperParams::for_nodes(*ex_d, ex_m_true, ex_m_est)
                            : HyperParams{*ex_m_max, ex_m_true, ex_m_est};
            for (const auto& m : ex_metrics) o.metrics.push_back(parse_metric_id(m));
            o.level = ex_level;
            o.sweep = ex_sweep;
            const auto r = run_expect(o);
            if (ex_json) print_json(r);
            else render_expect(std::cout, r);
        } else if (*fit) {
            const auto [truth, est] = load_pair(fit_graphs, GraphKind::cpdag);
            const auto r = run_fit_test(truth, est);
            if (fit_json) print_json(r);
            else render_fit_test(std::cout, r);
        } else if (*compare) {
            const auto [truth, est] = load_pair(cmp_graphs, GraphKind::dag);
            CompareOptions o;
            o.nc_reps = cmp_reps;
            o.seed = cmp_seed ? *cmp_seed : default_seed();
            for (const auto& m : cmp_metrics) o.metrics.push_back(parse_graph_metric(m));
            if (!cmp_kind.empty()) o.nc_kind = parse_graph_kind(cmp_kind);
            o.extension_cap = cmp_cap;
            const auto r = run_compare(Dag::from_graph(truth), est, o);
            if (cmp_json) print_json(r);
            else render_compare(std::cout, r);
        } else if (*pipeline) {
            std::ifstream in(pl_config);
            if (!in) throw InputError("cannot open config '" + pl_config + "'");
            Json j;
            try {
                j = Json::parse(in);
            } catch (const Json::parse_error& e) {
                throw InputError(pl_config + ": invalid JSON: " + e.what());
            }
            if (j.is_object() && !j.contains("seed") && !pl_seed) j["seed"] = default_seed();
            auto cfg = pipeline_config_from_json(j);
            if (pl_seed) cfg.seed = *pl_seed;
            if (pl_threads) cfg.threads = *pl_threads;
            cfg.validate();
            const auto result = run_study(cfg);
            const auto summary = study_summary(result);
            fs::create_directories(pl_out);
            open_out(fs::path(pl_out) / "summary.json") << summary.dump(2) << '\n';
            auto csv = open_out(fs::path(pl_out) / "replications.csv");
            write_replications_csv(csv, result);
            if (pl_json) print_json(summary);
            else render_study(std::cout, summary);
        } else if (*sample) {
            const auto kind = parse_graph_kind(sm_kind);
            const auto format = parse_graph_format(sm_format);
            if (format == GraphFormat::detect) throw InputError("sample: choose edge-list or matrix");
            const RngSeed seed{sm_seed ? *sm_seed : default_seed(), sm_stream};
            const MixedGraph g = kind == GraphKind::dag ? MixedGraph(sample_er_dag(sm_d, sm_m, seed))
                                                        : MixedGraph(sample_er_cpdag(sm_d, sm_m, seed));
            if (sm_out.empty()) write_graph(std::cout, g, format);
            else {
                auto out = open_out(sm_out);
                write_graph(out, g, format);
            }
        } else if (*simdata) {
            sd_sem.validate();
            const auto g = Dag::from_graph(read_graph(sd_graph, parse_graph_format(sd_format), GraphKind::dag));
            // Same sub-streams as replication 0 of a pipeline run.
            const RngSeed base{sd_seed ? *sd_seed : default_seed(), 0};
            const auto model = draw_sem(g, sd_sem, base.child(2));
            const auto data = simulate(model, sd_sem.n, base.child(3));
            if (sd_out.empty()) write_csv(std::cout, data, g.labels());
            else {
                auto out = open_out(sd_out);
                write_csv(out, data, g.labels());
            }
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
