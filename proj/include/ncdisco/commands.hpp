#pragma once

#include "ncdisco/graph.hpp"
#include "ncdisco/hypergeom.hpp"
#include "ncdisco/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ncdisco {

using Json = nlohmann::ordered_json;

/// Version stamped into every JSON report.
inline constexpr int report_schema_version = 1;

struct ExpectOptions {
    HyperParams params;
    /// Empty means all five adjacency metrics; undefined ones are then
    /// reported as null instead of raising.
    std::vector<MetricId> metrics;
    double level = 0.95;
    /// Also tabulate expectations for every m_est in [0, m_max].
    bool sweep = false;
};

Json run_expect(const ExpectOptions& options);
void render_expect(std::ostream& out, const Json& report);

/// Exact skeleton fit test of est against truth; both over the same labels.
Json run_fit_test(const MixedGraph& truth, const MixedGraph& est);
void render_fit_test(std::ostream& out, const Json& report);

struct CompareOptions {
    std::vector<GraphMetric> metrics;  // empty means all
    std::size_t nc_reps = 1000;
    std::uint64_t seed = 1;
    std::optional<GraphKind> nc_kind;
    std::size_t extension_cap = default_extension_cap;
};

Json run_compare(const Dag& truth, const MixedGraph& est, const CompareOptions& options);
void render_compare(std::ostream& out, const Json& report);

/// Builds a config from JSON, rejecting unknown or ill-typed fields with
/// their path (e.g. "sem.n").
PipelineConfig pipeline_config_from_json(const Json& j);
Json pipeline_config_to_json(const PipelineConfig& cfg);

Json study_summary(const StudyResult& result);
void render_study(std::ostream& out, const Json& summary);
/// One row per replication; missing values are written as NA.
void write_replications_csv(std::ostream& out, const StudyResult& result);

}  // namespace ncdisco
