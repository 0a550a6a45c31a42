#include "ncdisco/commands.hpp"
#include "ncdisco/error.hpp"
#include "ncdisco/graph_io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ncdisco;

namespace {

const Json& row_for(const Json& report, const std::string& metric) {
    for (const auto& r : report.at("metrics"))
        if (r.at("metric") == metric) return r;
    throw std::runtime_error("no row " + metric);
}

}  // namespace

TEST(Expect, WorkedExampleRows) {
    ExpectOptions o;
    o.params = HyperParams::for_nodes(5, 8, 7);
    const auto r = run_expect(o);
    const auto& prec = row_for(r, "precision");
    EXPECT_EQ(prec.at("expected").at("exact"), "4/5");
    EXPECT_EQ(prec.at("median").at("exact"), "6/7");
    EXPECT_EQ(prec.at("ci_low").at("exact"), "5/7");
    EXPECT_EQ(prec.at("ci_high").at("exact"), "1");
    const auto& rec = row_for(r, "recall");
    EXPECT_EQ(rec.at("expected").at("exact"), "7/10");
    EXPECT_EQ(rec.at("median").at("exact"), "3/4");
    EXPECT_EQ(rec.at("ci_low").at("exact"), "5/8");
    EXPECT_EQ(rec.at("ci_high").at("exact"), "7/8");
    std::ostringstream text;
    render_expect(text, r);
    EXPECT_NE(text.str().find("0.800 (4/5)"), std::string::npos);
}

TEST(Expect, EmptyTruth) {
    ExpectOptions o;
    o.params = {10, 0, 3};
    const auto r = run_expect(o);
    EXPECT_EQ(row_for(r, "precision").at("expected").at("value"), 0.0);
    EXPECT_TRUE(row_for(r, "recall").at("expected").is_null());
    o.metrics = {MetricId::recall};
    EXPECT_THROW(run_expect(o), InputError);
}

TEST(Expect, SweepCoversEveryEstimateSize) {
    ExpectOptions o;
    o.params = {10, 5, 5};
    o.metrics = {MetricId::f1};
    o.sweep = true;
    const auto r = run_expect(o);
    ASSERT_EQ(r.at("sweep").size(), 11u);
    EXPECT_NEAR(r.at("sweep")[10].at("f1").get<double>(), 2.0 / 3.0, 1e-15);
}

TEST(FitTest, FiveNodePair) {
    const auto truth = read_graph(oracle::fixture("five_node_truth.csv"), GraphFormat::detect, GraphKind::dag);
    const auto est = read_graph(oracle::fixture("five_node_estimate.csv"), GraphFormat::detect, GraphKind::cpdag);
    const auto r = run_fit_test(truth, align_to(est, truth.labels()));
    EXPECT_EQ(r.at("tp_obs"), 6);
    EXPECT_NEAR(r.at("p_value").get<double>(), 8.0 / 15.0, 1e-15);
}

TEST(FitTest, IdenticalGraphsGiveMinimalP) {
    const auto truth = read_graph(oracle::fixture("five_node_truth.csv"), GraphFormat::detect, GraphKind::dag);
    const auto r = run_fit_test(truth, truth);
    EXPECT_NEAR(r.at("p_value").get<double>(), pmf(8, {10, 8, 8}), 1e-15);
    EXPECT_THROW(run_fit_test(truth, Dag(5)), InputError);
}

TEST(Compare, FiveNodeReport) {
    const auto truth = Dag::from_graph(read_graph(oracle::fixture("five_node_truth.csv"), GraphFormat::detect, GraphKind::dag));
    const auto est = align_to(read_graph(oracle::fixture("five_node_estimate.csv"), GraphFormat::detect, GraphKind::cpdag),
                              truth.labels());
    CompareOptions o;
    o.metrics = {GraphMetric::shd};
    o.nc_reps = 200;
    const auto r = run_compare(truth, est, o);
    EXPECT_EQ(r.at("m_est"), 7);
    EXPECT_EQ(r.at("nc_kind"), "dag");
    EXPECT_EQ(row_for(r, "shd").at("observed"), 5.0);
    EXPECT_EQ(row_for(r, "shd").at("pairs_used"), 200);
    EXPECT_EQ(run_compare(truth, est, o), r);  // seeded
}

TEST(PipelineConfigJson, ParsesNestedFields) {
    const auto cfg = pipeline_config_from_json(Json::parse(R"({
        "b": 5, "d": 6, "m_true": 7, "algorithm": "pc-oracle", "nc_kind": "dag", "seed": 9,
        "metrics": ["shd", "sid_upper"], "sem": {"n": 100, "weight_lo": 0.2}, "pc": {"alpha": 0.01, "max_cond_size": 2}
    })"));
    EXPECT_EQ(cfg.b, 5u);
    EXPECT_EQ(cfg.d, 6);
    EXPECT_EQ(cfg.nc_kind, GraphKind::dag);
    EXPECT_EQ(cfg.metrics.size(), 2u);
    EXPECT_EQ(cfg.sem.n, 100u);
    EXPECT_DOUBLE_EQ(cfg.sem.weight_lo, 0.2);
    EXPECT_EQ(*cfg.pc.max_cond_size, 2);
    const auto round = pipeline_config_from_json(pipeline_config_to_json(cfg));
    EXPECT_EQ(pipeline_config_to_json(round), pipeline_config_to_json(cfg));
}

TEST(PipelineConfigJson, ErrorsNameTheField) {
    auto message = [](const char* text) {
        try {
            pipeline_config_from_json(Json::parse(text));
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(message(R"({"sem": {"n": "many"}})").find("'sem.n'"), std::string::npos);
    EXPECT_NE(message(R"({"bogus": 1})").find("'bogus'"), std::string::npos);
    EXPECT_NE(message(R"({"pc": {"alpha": 2}})").find("'pc'"), std::string::npos);
    EXPECT_NE(message(R"({"metrics": ["shd", "auc"]})").find("'metrics[1]'"), std::string::npos);
    EXPECT_NE(message(R"({"b": -3})").find("'b'"), std::string::npos);
    EXPECT_NE(message(R"([1, 2])").find("<root>"), std::string::npos);
}

TEST(StudyOutputs, SummaryRowsAndCsv) {
    PipelineConfig cfg;
    cfg.b = 1;
    cfg.algorithm = "pc-oracle";
    const auto result = run_study(cfg);
    const auto s = study_summary(result);
    std::vector<std::string> names;
    for (const auto& r : s.at("metrics")) names.push_back(r.at("name"));
    EXPECT_EQ(names.front(), "SHD");
    EXPECT_EQ(names.back(), "SID (upper bound)");
    std::ostringstream csv;
    write_replications_csv(csv, result);
    std::istringstream lines(csv.str());
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_FALSE(std::getline(lines, extra));
    EXPECT_EQ(header.rfind("replication,m_true,m_est,nc_edges,algo_shd", 0), 0u);
}
