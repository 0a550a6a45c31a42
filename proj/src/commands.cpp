#include "ncdisco/commands.hpp"

#include "ncdisco/error.hpp"
#include "ncdisco/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <set>

namespace ncdisco {

namespace {

constexpr const char* nc_methods_note =
    "Negative controls are random graphs with the estimate's edge count and uniformly placed "
    "edges. p is the share of negative controls that score at least as well as the estimate; "
    "ties count toward the null.";

Json value_json(const MetricValue& v) { return v.is_missing() ? Json(nullptr) : Json(v.value()); }

Json rational_json(const Rational& r) { return Json{{"exact", r.str()}, {"value", r.to_double()}}; }

Json params_json(const HyperParams& p) {
    return Json{{"m_max", p.m_max}, {"m_true", p.m_true}, {"m_est", p.m_est}};
}

Json summary_json(const Summary& s) {
    return Json{{"mean", value_json(s.mean)},
                {"ci_low", value_json(s.ci_low)},
                {"ci_high", value_json(s.ci_high)},
                {"used", s.used},
                {"missing", s.missing}};
}

// Fixed-point text for a possibly null number.
std::string fmt(const Json& v, int digits = 3) {
    if (v.is_null()) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v.get<double>());
    return buf;
}

std::string csv_value(const MetricValue& v) {
    if (v.is_missing()) return "NA";
    // Shortest text that round-trips.
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v.value());
    return std::string(buf, res.ptr);
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

Json expect_row(MetricId m, const HyperParams& p, double level, bool strict) {
    Json row{{"metric", std::string(to_string(m))}};
    try {
        const double tail = (1.0 - level) / 2.0;
        row["expected"] = rational_json(expected_metric_exact(m, p));
        row["median"] = rational_json(metric_quantile_exact(m, 0.5, p));
        row["ci_low"] = rational_json(metric_quantile_exact(m, tail, p));
        row["ci_high"] = rational_json(metric_quantile_exact(m, 1.0 - tail, p));
    } catch (const InputError& e) {
        if (strict) throw;
        row["expected"] = nullptr;
        row["median"] = nullptr;
        row["ci_low"] = nullptr;
        row["ci_high"] = nullptr;
        row["note"] = e.what();
    }
    return row;
}

// JSON field readers that report the offending path.
class ConfigReader {
public:
    ConfigReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw InputError(where() + "expected an object");
    }

    void allow(std::initializer_list<const char*> keys) const {
        const std::set<std::string> ok(keys.begin(), keys.end());
        for (const auto& [k, v] : j_.items())
            if (!ok.count(k)) throw InputError(where(k) + "unknown field");
    }

    bool has(const char* key) const { return j_.contains(key); }
    const Json& at(const char* key) const { return j_.at(key); }
    std::string child_path(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

    template <typename T>
    void read_uint(const char* key, T& out) const {
        if (!has(key)) return;
        const auto& v = j_.at(key);
        if (!v.is_number_unsigned()) throw InputError(where(key) + "expected a non-negative integer");
        out = v.get<T>();
    }

    void read_int(const char* key, int& out) const {
        if (!has(key)) return;
        const auto& v = j_.at(key);
        if (!v.is_number_integer()) throw InputError(where(key) + "expected an integer");
        out = v.get<int>();
    }

    void read_double(const char* key, double& out) const {
        if (!has(key)) return;
        const auto& v = j_.at(key);
        if (!v.is_number()) throw InputError(where(key) + "expected a number");
        out = v.get<double>();
    }

    void read_string(const char* key, std::string& out) const {
        if (!has(key)) return;
        const auto& v = j_.at(key);
        if (!v.is_string()) throw InputError(where(key) + "expected a string");
        out = v.get<std::string>();
    }

    std::string where(const std::string& key = {}) const {
        std::string p = key.empty() ? path_ : (path_.empty() ? key : path_ + "." + key);
        return "config field '" + (p.empty() ? std::string("<root>") : p) + "': ";
    }

private:
    const Json& j_;
    std::string path_;
};

// Rethrows InputError with the config path prefixed.
template <typename Fn>
void with_path(const ConfigReader& r, const char* key, Fn&& fn) {
    try {
        fn();
    } catch (const InputError& e) {
        throw InputError(r.where(key) + e.what());
    }
}

}  // namespace

Json run_expect(const ExpectOptions& options) {
    const auto& p = options.params;
    p.validate();
    if (!(options.level > 0.0 && options.level < 1.0))
        throw InputError("level must lie strictly between 0 and 1");
    const bool strict = !options.metrics.empty();
    std::vector<MetricId> metrics = options.metrics;
    if (metrics.empty()) metrics.assign(std::begin(all_adjacency_metrics), std::end(all_adjacency_metrics));

    Json report{{"schema_version", report_schema_version},
                {"command", "expect"},
                {"params", params_json(p)},
                {"level", options.level},
                {"expected_tp", p.m_max > 0 ? Json(expected_tp(p)) : Json(nullptr)}};
    Json rows = Json::array();
    for (const auto m : metrics) rows.push_back(expect_row(m, p, options.level, strict));
    report["metrics"] = rows;

    if (options.sweep) {
        Json sweep = Json::array();
        for (std::int64_t m_est = 0; m_est <= p.m_max; ++m_est) {
            const HyperParams q{p.m_max, p.m_true, m_est};
            Json row{{"m_est", m_est}};
            for (const auto m : metrics) {
                try {
                    row[std::string(to_string(m))] = expected_metric(m, q);
                } catch (const InputError&) {
                    row[std::string(to_string(m))] = nullptr;
                }
            }
            sweep.push_back(row);
        }
        report["sweep"] = sweep;
    }
    return report;
}

void render_expect(std::ostream& out, const Json& r) {
    const auto& p = r.at("params");
    out << "HyperGeom(m_max=" << p.at("m_max") << ", m_true=" << p.at("m_true") << ", m_est=" << p.at("m_est")
        << "), central " << fmt(r.at("level"), 2) << " interval\n";
    out << std::left << std::setw(14) << "metric" << std::setw(18) << "expected" << std::setw(18) << "median"
        << std::setw(18) << "ci_low" << "ci_high\n";
    auto cell = [](const Json& v) {
        if (v.is_null()) return std::string("NA");
        return fmt(v.at("value")) + " (" + v.at("exact").get<std::string>() + ")";
    };
    for (const auto& row : r.at("metrics")) {
        out << std::setw(14) << row.at("metric").get<std::string>() << std::setw(18) << cell(row.at("expected"))
            << std::setw(18) << cell(row.at("median")) << std::setw(18) << cell(row.at("ci_low"))
            << cell(row.at("ci_high")) << '\n';
        if (row.contains("note")) out << "  note: " << row.at("note").get<std::string>() << '\n';
    }
    if (r.contains("sweep")) {
        out << "\nm_est";
        for (const auto& row : r.at("metrics")) out << ',' << row.at("metric").get<std::string>();
        out << '\n';
        for (const auto& row : r.at("sweep")) {
            out << row.at("m_est");
            for (const auto& m : r.at("metrics")) out << ',' << fmt(row.at(m.at("metric").get<std::string>()), 6);
            out << '\n';
        }
    }
}

Json run_fit_test(const MixedGraph& truth, const MixedGraph& est) {
    const auto counts = adjacency_confusion(truth, est);
    const auto p = HyperParams::for_nodes(truth.size(), static_cast<std::int64_t>(truth.edge_count()),
                                          static_cast<std::int64_t>(est.edge_count()));
    const double pv = skeleton_fit_test(counts.tp, p);
    return Json{{"schema_version", report_schema_version},
                {"command", "fit-test"},
                {"d", truth.size()},
                {"params", params_json(p)},
                {"tp_obs", counts.tp},
                {"expected_tp", expected_tp(p)},
                {"p_value", pv}};
}

void render_fit_test(std::ostream& out, const Json& r) {
    const auto& p = r.at("params");
    out << "d = " << r.at("d") << ", m_max = " << p.at("m_max") << ", m_true = " << p.at("m_true")
        << ", m_est = " << p.at("m_est") << '\n'
        << "observed true-positive adjacencies: " << r.at("tp_obs") << " (null expectation "
        << fmt(r.at("expected_tp"), 3) << ")\n"
        << "one-sided p = P(TP >= " << r.at("tp_obs") << ") = " << fmt(r.at("p_value"), 6) << '\n';
}

Json run_compare(const Dag& truth, const MixedGraph& est, const CompareOptions& options) {
    std::vector<GraphMetric> metrics = options.metrics;
    if (metrics.empty()) metrics.assign(std::begin(all_graph_metrics), std::end(all_graph_metrics));

    ReportOptions ro{metrics, options.extension_cap};
    const auto observed = full_report(truth, est, ro);

    SingleTruthOptions so;
    so.reps = options.nc_reps;
    so.seed = options.seed;
    so.kind = options.nc_kind;
    so.extension_cap = options.extension_cap;
    const auto nc = single_truth_nc(truth, est, metrics, so);

    Json rows = Json::array();
    for (const auto& res : nc) {
        rows.push_back(Json{{"metric", std::string(to_string(res.metric))},
                            {"name", std::string(display_name(res.metric))},
                            {"observed", value_json(res.observed)},
                            {"negative_control", summary_json(res.nc)},
                            {"p", value_json(res.p)},
                            {"pairs_used", res.used},
                            {"pairs_dropped", res.dropped}});
    }
    return Json{{"schema_version", report_schema_version},
                {"command", "compare"},
                {"d", observed.d},
                {"m_true", observed.m_true},
                {"m_est", observed.m_est},
                {"estimate_kind", observed.est_kind},
                {"nc_kind", std::string(to_string(options.nc_kind.value_or(nc_kind_for(est))))},
                {"nc_reps", options.nc_reps},
                {"seed", options.seed},
                {"metrics", rows},
                {"notes", observed.notes},
                {"methods", nc_methods_note}};
}

void render_compare(std::ostream& out, const Json& r) {
    out << "d = " << r.at("d") << ", m_true = " << r.at("m_true") << ", m_est = " << r.at("m_est")
        << ", estimate is a " << r.at("estimate_kind").get<std::string>() << "; " << r.at("nc_reps")
        << " " << r.at("nc_kind").get<std::string>() << " negative controls, seed " << r.at("seed") << "\n";
    out << std::left << std::setw(36) << "metric" << std::setw(10) << "observed" << std::setw(10) << "NC mean"
        << std::setw(20) << "NC 95% interval" << "p\n";
    for (const auto& row : r.at("metrics")) {
        const auto& nc = row.at("negative_control");
        out << std::setw(36) << row.at("name").get<std::string>() << std::setw(10) << fmt(row.at("observed"))
            << std::setw(10) << fmt(nc.at("mean"))
            << std::setw(20) << ("(" + fmt(nc.at("ci_low")) + ", " + fmt(nc.at("ci_high")) + ")")
            << fmt(row.at("p")) << '\n';
    }
    for (const auto& n : r.at("notes")) out << "note: " << n.get<std::string>() << '\n';
    out << r.at("methods").get<std::string>() << '\n';
}

PipelineConfig pipeline_config_from_json(const Json& j) {
    PipelineConfig cfg;
    const ConfigReader root(j, "");
    root.allow({"b", "d", "m_true", "algorithm", "metrics", "nc_kind", "seed", "threads", "extension_cap", "sem",
                "pc"});
    root.read_uint("b", cfg.b);
    root.read_int("d", cfg.d);
    root.read_uint("m_true", cfg.m_true);
    root.read_string("algorithm", cfg.algorithm);
    root.read_uint("seed", cfg.seed);
    root.read_uint("threads", cfg.threads);
    root.read_uint("extension_cap", cfg.extension_cap);
    if (root.has("nc_kind")) {
        std::string kind;
        root.read_string("nc_kind", kind);
        with_path(root, "nc_kind", [&] { cfg.nc_kind = parse_graph_kind(kind); });
    }
    if (root.has("metrics")) {
        const auto& arr = root.at("metrics");
        if (!arr.is_array()) throw InputError(root.where("metrics") + "expected an array of metric names");
        for (std::size_t k = 0; k < arr.size(); ++k) {
            const std::string key = "metrics[" + std::to_string(k) + "]";
            if (!arr[k].is_string()) throw InputError(root.where(key) + "expected a string");
            with_path(root, key.c_str(), [&] { cfg.metrics.push_back(parse_graph_metric(arr[k].get<std::string>())); });
        }
    }
    if (root.has("sem")) {
        const ConfigReader sem(root.at("sem"), "sem");
        sem.allow({"n", "weight_lo", "weight_hi", "variance_lo", "variance_hi"});
        sem.read_uint("n", cfg.sem.n);
        sem.read_double("weight_lo", cfg.sem.weight_lo);
        sem.read_double("weight_hi", cfg.sem.weight_hi);
        sem.read_double("variance_lo", cfg.sem.variance_lo);
        sem.read_double("variance_hi", cfg.sem.variance_hi);
        with_path(root, "sem", [&] { cfg.sem.validate(); });
    }
    if (root.has("pc")) {
        const ConfigReader pcr(root.at("pc"), "pc");
        pcr.allow({"alpha", "max_cond_size"});
        pcr.read_double("alpha", cfg.pc.alpha);
        if (pcr.has("max_cond_size") && !pcr.at("max_cond_size").is_null()) {
            int k = 0;
            pcr.read_int("max_cond_size", k);
            cfg.pc.max_cond_size = k;
        }
        with_path(root, "pc", [&] { cfg.pc.validate(); });
    }
    cfg.validate();
    return cfg;
}

Json pipeline_config_to_json(const PipelineConfig& cfg) {
    Json metrics = Json::array();
    for (const auto m : cfg.resolved_metrics()) metrics.push_back(std::string(to_string(m)));
    return Json{{"b", cfg.b},
                {"d", cfg.d},
                {"m_true", cfg.m_true},
                {"algorithm", cfg.custom_algorithm ? "custom" : cfg.algorithm},
                {"metrics", metrics},
                {"nc_kind", std::string(to_string(cfg.nc_kind))},
                {"seed", cfg.seed},
                {"extension_cap", cfg.extension_cap},
                {"sem",
                 {{"n", cfg.sem.n},
                  {"weight_lo", cfg.sem.weight_lo},
                  {"weight_hi", cfg.sem.weight_hi},
                  {"variance_lo", cfg.sem.variance_lo},
                  {"variance_hi", cfg.sem.variance_hi}}},
                {"pc",
                 {{"alpha", cfg.pc.alpha},
                  {"max_cond_size", cfg.pc.max_cond_size ? Json(*cfg.pc.max_cond_size) : Json(nullptr)}}}};
}

Json study_summary(const StudyResult& result) {
    std::vector<MetricValue> m_est;
    std::vector<MetricValue> nc_edges;
    for (const auto& rep : result.replications) {
        m_est.push_back(rep.estimated ? MetricValue(static_cast<double>(rep.m_est)) : MetricValue::missing());
        nc_edges.push_back(static_cast<double>(rep.nc_edges));
    }
    Json rows = Json::array();
    for (const auto& m : result.metrics) {
        rows.push_back(Json{{"metric", std::string(to_string(m.metric))},
                            {"name", std::string(display_name(m.metric))},
                            {"smaller_is_better", smaller_is_better(m.metric)},
                            {"algorithm", summary_json(m.algo)},
                            {"negative_control", summary_json(m.nc)},
                            {"p", value_json(m.p.p)},
                            {"pairs_used", m.p.used},
                            {"pairs_dropped", m.p.dropped}});
    }
    std::size_t with_errors = 0;
    for (const auto& rep : result.replications)
        if (!rep.errors.empty()) ++with_errors;
    return Json{{"schema_version", report_schema_version},
                {"command", "pipeline"},
                {"config", pipeline_config_to_json(result.config)},
                {"replications", result.replications.size()},
                {"failed_replications", result.failed_replications},
                {"replications_with_errors", with_errors},
                {"m_est", summary_json(summarize(m_est))},
                {"nc_edges", summary_json(summarize(nc_edges))},
                {"metrics", rows},
                {"methods",
                 "Each replication pairs the algorithm's estimate with one negative control whose edge count "
                 "is resampled with replacement from the estimates' edge counts. p is the share of pairs in "
                 "which the negative control scores at least as well as the algorithm; ties count toward "
                 "the null. Intervals are empirical 2.5% and 97.5% quantiles."}};
}

void render_study(std::ostream& out, const Json& s) {
    const auto& cfg = s.at("config");
    out << "b = " << s.at("replications") << ", d = " << cfg.at("d") << ", m_true = " << cfg.at("m_true")
        << ", n = " << cfg.at("sem").at("n") << ", alpha = " << cfg.at("pc").at("alpha") << ", algorithm "
        << cfg.at("algorithm").get<std::string>() << ", mean m_est = " << fmt(s.at("m_est").at("mean"), 2)
        << ", failed replications = " << s.at("failed_replications") << "\n";
    out << std::left << std::setw(36) << "metric" << std::setw(24) << "algorithm" << std::setw(24)
        << "negative control" << "p\n";
    auto cell = [](const Json& sum) {
        return fmt(sum.at("mean"), 2) + " (" + fmt(sum.at("ci_low"), 2) + ", " + fmt(sum.at("ci_high"), 2) + ")";
    };
    for (const auto& row : s.at("metrics"))
        out << std::setw(36) << row.at("name").get<std::string>() << std::setw(24) << cell(row.at("algorithm"))
            << std::setw(24) << cell(row.at("negative_control")) << fmt(row.at("p")) << '\n';
}

void write_replications_csv(std::ostream& out, const StudyResult& result) {
    std::vector<std::string> keys;
    for (const auto& m : result.metrics) keys.emplace_back(to_string(m.metric));
    out << "replication,m_true,m_est,nc_edges";
    for (const auto& k : keys) out << ",algo_" << k;
    for (const auto& k : keys) out << ",nc_" << k;
    out << ",errors\n";
    for (const auto& rep : result.replications) {
        out << rep.index << ',' << rep.truth.edge_count() << ',' << (rep.estimated ? std::to_string(rep.m_est) : "NA")
            << ',' << rep.nc_edges;
        for (const auto& k : keys) out << ',' << csv_value(rep.algo.at(k));
        for (const auto& k : keys) out << ',' << csv_value(rep.nc.at(k));
        std::string errors;
        for (const auto& e : rep.errors) errors += (errors.empty() ? "" : "; ") + e;
        out << ',' << (errors.empty() ? std::string() : csv_quote(errors)) << '\n';
    }
}

}  // namespace ncdisco
