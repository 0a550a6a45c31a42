#include "ncdisco/commands.hpp"
#include "ncdisco/error.hpp"
#include "ncdisco/pipeline.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace ncdisco;

TEST(PairedP, CountsTiesTowardNull) {
    const std::vector<MetricValue> algo{5.0, 5.0, 5.0, 5.0};
    const std::vector<MetricValue> nc{4.0, 5.0, 6.0, 7.0};
    EXPECT_DOUBLE_EQ(paired_p(algo, nc, Direction::smaller_favorable).p.value(), 0.5);
    EXPECT_DOUBLE_EQ(paired_p(algo, nc, Direction::larger_favorable).p.value(), 0.75);
}

TEST(PairedP, DropsMissingPairs) {
    const std::vector<MetricValue> algo{0.9, MetricValue::missing(), 0.5};
    const std::vector<MetricValue> nc{0.1, 0.2, MetricValue::missing()};
    const auto r = paired_p(algo, nc, Direction::larger_favorable);
    EXPECT_EQ(r.used, 1u);
    EXPECT_EQ(r.dropped, 2u);
    EXPECT_DOUBLE_EQ(r.p.value(), 0.0);
    const std::vector<MetricValue> none{MetricValue::missing()};
    EXPECT_TRUE(paired_p(none, none, Direction::larger_favorable).p.is_missing());
    EXPECT_THROW(paired_p(algo, none, Direction::larger_favorable), InputError);
}

TEST(Summarize, MeanAndType7Quantiles) {
    std::vector<MetricValue> v;
    for (int k = 10; k >= 1; --k) v.emplace_back(double(k));
    v.push_back(MetricValue::missing());
    const auto s = summarize(v);
    EXPECT_DOUBLE_EQ(s.mean.value(), 5.5);
    EXPECT_NEAR(s.ci_low.value(), 1.225, 1e-12);
    EXPECT_NEAR(s.ci_high.value(), 9.775, 1e-12);
    EXPECT_EQ(s.used, 10u);
    EXPECT_EQ(s.missing, 1u);
    EXPECT_TRUE(summarize(std::vector<MetricValue>{}).mean.is_missing());
}

TEST(RunStudy, OracleAlgorithmBeatsNegativeControls) {
    PipelineConfig cfg;
    cfg.b = 30;
    cfg.algorithm = "pc-oracle";
    cfg.metrics = {GraphMetric::shd, GraphMetric::adjacency_precision};
    const auto r = run_study(cfg);
    ASSERT_EQ(r.metrics.size(), 2u);
    EXPECT_DOUBLE_EQ(r.metrics[1].algo.mean.value(), 1.0);
    EXPECT_LT(r.metrics[0].p.p.value(), 0.05);
    for (const auto& rep : r.replications) {
        EXPECT_EQ(rep.truth.edge_count(), 15u);
        EXPECT_EQ(rep.m_est, 15u);
        EXPECT_EQ(rep.negative_control.edge_count(), rep.nc_edges);
    }
}

TEST(RunStudy, NegativeControlSizesComeFromObservedEstimates) {
    PipelineConfig cfg;
    cfg.b = 40;
    cfg.metrics = {GraphMetric::shd};
    cfg.custom_algorithm = [](const Dag& truth, const DataMatrix&, const RngSeed& seed) -> MixedGraph {
        return sample_er_dag(truth.size(), truth.children(0).size() + 2, seed);
    };
    const auto r = run_study(cfg);
    std::set<std::size_t> observed;
    for (const auto& rep : r.replications) observed.insert(rep.m_est);
    EXPECT_GT(observed.size(), 1u);
    for (const auto& rep : r.replications) EXPECT_TRUE(observed.count(rep.nc_edges)) << rep.nc_edges;
}

TEST(RunStudy, FailedReplicationsAreCountedAndMissing) {
    PipelineConfig cfg;
    cfg.b = 10;
    cfg.metrics = {GraphMetric::shd};
    cfg.custom_algorithm = [](const Dag& truth, const DataMatrix&, const RngSeed&) -> MixedGraph {
        if (truth.edge_count() % 2 == 0 && truth.has_directed(0, 1)) throw NumericalError("boom");
        return Dag(truth.size());
    };
    cfg.d = 4;
    cfg.m_true = 3;
    const auto r = run_study(cfg);
    std::size_t failed = 0;
    for (const auto& rep : r.replications)
        if (!rep.estimated) {
            ++failed;
            EXPECT_TRUE(rep.algo.at("shd").is_missing());
            EXPECT_FALSE(rep.errors.empty());
        }
    EXPECT_EQ(failed, r.failed_replications);
    EXPECT_EQ(r.metrics[0].p.dropped, failed);

    cfg.custom_algorithm = [](const Dag&, const DataMatrix&, const RngSeed&) -> MixedGraph {
        throw NumericalError("always");
    };
    EXPECT_THROW(run_study(cfg), NumericalError);
}

TEST(RunStudy, DeterministicAcrossThreadCounts) {
    PipelineConfig cfg;
    cfg.b = 24;
    cfg.sem.n = 200;
    cfg.seed = 77;
    std::string reference;
    for (std::size_t threads : {1u, 3u, 8u}) {
        cfg.threads = threads;
        std::ostringstream csv;
        write_replications_csv(csv, run_study(cfg));
        if (reference.empty()) reference = csv.str();
        else EXPECT_EQ(csv.str(), reference) << "threads=" << threads;
    }
}

TEST(RunStudy, ConfigValidation) {
    PipelineConfig cfg;
    cfg.m_true = 46;
    EXPECT_THROW(run_study(cfg), InputError);
    cfg = PipelineConfig{};
    cfg.algorithm = "ges";
    EXPECT_THROW(run_study(cfg), InputError);
    cfg = PipelineConfig{};
    cfg.b = 0;
    EXPECT_THROW(run_study(cfg), InputError);
}

TEST(SingleTruth, IdenticalEstimateIsRarelyMatched) {
    const auto truth = sample_er_dag(10, 15, RngSeed{3, 0});
    SingleTruthOptions o;
    o.reps = 500;
    const auto r = single_truth_nc(truth, truth, GraphMetric::shd, o);
    EXPECT_DOUBLE_EQ(r.observed.value(), 0.0);
    EXPECT_LT(r.p.value(), 0.01);
    EXPECT_EQ(r.used, 500u);
}

TEST(SingleTruth, NullEstimatesAreCalibrated) {
    // Estimates drawn from the null itself: P(p <= 0.05) must not exceed 0.05
    // beyond sampling noise (ties make the test conservative).
    int rejections = 0;
    const int trials = 300;
    for (int t = 0; t < trials; ++t) {
        const auto truth = sample_er_dag(8, 10, RngSeed{500, static_cast<std::uint64_t>(t)});
        const auto est = sample_er_cpdag(8, 10, RngSeed{501, static_cast<std::uint64_t>(t)});
        SingleTruthOptions o;
        o.reps = 200;
        o.seed = 502 + static_cast<std::uint64_t>(t);
        if (single_truth_nc(truth, est, GraphMetric::shd, o).p.value() <= 0.05) ++rejections;
    }
    EXPECT_LE(rejections / double(trials), 0.05 + 3 * std::sqrt(0.05 * 0.95 / trials));
}
