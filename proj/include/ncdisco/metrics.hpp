#pragma once

#include "ncdisco/confusion.hpp"
#include "ncdisco/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncdisco {

/// Graph-comparison metrics reported by full_report and the pipeline.
enum class GraphMetric {
    shd,
    adjacency_precision,
    adjacency_recall,
    adjacency_f1,
    adjacency_npv,
    adjacency_specificity,
    orientation_precision,
    orientation_recall,
    vstructure_recovery,
    sid_lower,
    sid_upper,
};

inline constexpr GraphMetric all_graph_metrics[] = {
    GraphMetric::shd,
    GraphMetric::adjacency_precision,
    GraphMetric::adjacency_recall,
    GraphMetric::adjacency_f1,
    GraphMetric::adjacency_npv,
    GraphMetric::adjacency_specificity,
    GraphMetric::orientation_precision,
    GraphMetric::orientation_recall,
    GraphMetric::vstructure_recovery,
    GraphMetric::sid_lower,
    GraphMetric::sid_upper,
};

std::string_view to_string(GraphMetric m);
GraphMetric parse_graph_metric(std::string_view name);
/// Human-readable row label, e.g. "Adjacency precision".
std::string_view display_name(GraphMetric m);
/// True when smaller values indicate a better estimate (SHD, SID).
bool smaller_is_better(GraphMetric m);
bool needs_sid(GraphMetric m);

struct SidBounds {
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    bool exact = false;

    friend bool operator==(const SidBounds&, const SidBounds&) = default;
};

struct MetricReport {
    std::map<std::string, MetricValue> values;
    int d = 0;
    std::int64_t m_true = 0;
    std::int64_t m_est = 0;
    std::string truth_kind;
    std::string est_kind;
    std::vector<std::string> notes;

    MetricValue at(GraphMetric m) const;
};

struct ReportOptions {
    /// Empty means every metric.
    std::vector<GraphMetric> metrics;
    std::size_t extension_cap = default_extension_cap;
};

ConfusionCounts adjacency_confusion(const MixedGraph& truth, const MixedGraph& est);

/// Endpoint classification over adjacencies present in both graphs;
/// undirected edges contribute two tails.
ConfusionCounts orientation_confusion(const MixedGraph& truth, const MixedGraph& est);

/// Unit cost per pair that is present in one graph only or joined differently.
std::int64_t shd(const MixedGraph& a, const MixedGraph& b);

/// Share of the truth's v-structures found in the estimate; 1 when the truth has none.
MetricValue vstructure_recovery(const MixedGraph& truth, const MixedGraph& est);

/// Whether adjusting for `given` identifies the total effect of i on j in g
/// (generalized adjustment criterion).
bool valid_adjustment(const Dag& g, Node i, Node j, std::span<const Node> given);

std::int64_t sid(const Dag& truth, const Dag& est);

/// Exact for a DAG estimate; min/max over the equivalence class otherwise.
SidBounds sid(const Dag& truth, const MixedGraph& est, std::size_t cap = default_extension_cap);

MetricReport full_report(const Dag& truth, const MixedGraph& est, const ReportOptions& options = {});

}  // namespace ncdisco
