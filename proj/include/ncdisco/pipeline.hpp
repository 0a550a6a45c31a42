#pragma once

#include "ncdisco/graph.hpp"
#include "ncdisco/metrics.hpp"
#include "ncdisco/pc.hpp"
#include "ncdisco/random_graph.hpp"
#include "ncdisco/rng.hpp"
#include "ncdisco/sem.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ncdisco {

using NcKind = GraphKind;

/// DAG negative controls for fully directed acyclic estimates, CPDAGs otherwise.
NcKind nc_kind_for(const MixedGraph& estimate);

/// Draw one negative control with m edges.
MixedGraph draw_negative_control(int d, std::size_t m, NcKind kind, const RngSeed& seed);

enum class Direction { smaller_favorable, larger_favorable };

Direction direction_of(GraphMetric m);

struct PairedP {
    MetricValue p;  // missing when no usable pair remains
    std::size_t used = 0;
    std::size_t dropped = 0;
};

/// Share of pairs in which the negative control scores at least as well as
/// the algorithm. Pairs with a missing side are dropped and counted.
PairedP paired_p(std::span<const MetricValue> algo, std::span<const MetricValue> nc, Direction dir);

/// Mean and empirical 2.5% / 97.5% quantiles of the non-missing values.
struct Summary {
    MetricValue mean;
    MetricValue ci_low;
    MetricValue ci_high;
    std::size_t used = 0;
    std::size_t missing = 0;
};

Summary summarize(std::span<const MetricValue> values);

/// Discovery procedure under evaluation: (truth, data, seed) -> estimate.
/// The truth is available for oracle-style baselines only.
using Algorithm = std::function<MixedGraph(const Dag& truth, const DataMatrix& data, const RngSeed& seed)>;

struct PipelineConfig {
    std::size_t b = 1000;
    int d = 10;
    std::size_t m_true = 15;
    SemConfig sem;
    PcConfig pc;
    /// Built-in algorithm name: "pc" (Fisher z) or "pc-oracle" (d-separation).
    std::string algorithm = "pc";
    /// Overrides `algorithm` when set.
    Algorithm custom_algorithm;
    /// Empty means every metric.
    std::vector<GraphMetric> metrics;
    NcKind nc_kind = NcKind::cpdag;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    std::size_t extension_cap = default_extension_cap;

    void validate() const;
    std::vector<GraphMetric> resolved_metrics() const;
};

struct Replication {
    std::size_t index = 0;
    /// False when the algorithm failed; its metrics are then missing.
    bool estimated = false;
    Dag truth;
    MixedGraph estimate;
    MixedGraph negative_control;
    std::size_t m_est = 0;
    std::size_t nc_edges = 0;
    std::map<std::string, MetricValue> algo;
    std::map<std::string, MetricValue> nc;
    std::vector<std::string> errors;
};

struct MetricResult {
    GraphMetric metric;
    Summary algo;
    Summary nc;
    PairedP p;
};

struct StudyResult {
    PipelineConfig config;
    std::vector<Replication> replications;
    std::vector<MetricResult> metrics;
    std::size_t failed_replications = 0;
};

/// Runs the simulation study, draws edge-count-matched negative controls and
/// compares them pairwise. Deterministic in config.seed for any thread count.
StudyResult run_study(const PipelineConfig& cfg);

struct SingleTruthResult {
    GraphMetric metric;
    MetricValue observed;
    Summary nc;
    MetricValue p;
    std::size_t used = 0;
    std::size_t dropped = 0;
};

struct SingleTruthOptions {
    std::size_t reps = 1000;
    std::uint64_t seed = 1;
    std::optional<NcKind> kind;  // inferred from the estimate when empty
    std::size_t extension_cap = default_extension_cap;
};

/// Negative controls for a single ground truth: reps random graphs with the
/// estimate's edge count, each scored against the truth.
std::vector<SingleTruthResult> single_truth_nc(const Dag& truth, const MixedGraph& estimate,
                                               std::span<const GraphMetric> metrics,
                                               const SingleTruthOptions& options);
SingleTruthResult single_truth_nc(const Dag& truth, const MixedGraph& estimate, GraphMetric metric,
                                  const SingleTruthOptions& options);

}  // namespace ncdisco
