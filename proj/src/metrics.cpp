#include "ncdisco/metrics.hpp"

#include "ncdisco/error.hpp"

#include <algorithm>
#include <iterator>

namespace ncdisco {

namespace {

void require_same_nodes(const MixedGraph& a, const MixedGraph& b) {
    if (a.size() != b.size())
        throw InputError("graphs differ in node count: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
}

}  // namespace

std::string_view to_string(GraphMetric m) {
    switch (m) {
        case GraphMetric::shd: return "shd";
        case GraphMetric::adjacency_precision: return "adjacency_precision";
        case GraphMetric::adjacency_recall: return "adjacency_recall";
        case GraphMetric::adjacency_f1: return "adjacency_f1";
        case GraphMetric::adjacency_npv: return "adjacency_npv";
        case GraphMetric::adjacency_specificity: return "adjacency_specificity";
        case GraphMetric::orientation_precision: return "orientation_precision";
        case GraphMetric::orientation_recall: return "orientation_recall";
        case GraphMetric::vstructure_recovery: return "vstructure_recovery";
        case GraphMetric::sid_lower: return "sid_lower";
        case GraphMetric::sid_upper: return "sid_upper";
    }
    return "unknown";
}

std::string_view display_name(GraphMetric m) {
    switch (m) {
        case GraphMetric::shd: return "SHD";
        case GraphMetric::adjacency_precision: return "Adjacency precision";
        case GraphMetric::adjacency_recall: return "Adjacency recall";
        case GraphMetric::adjacency_f1: return "Adjacency F1";
        case GraphMetric::adjacency_npv: return "Adjacency NPV";
        case GraphMetric::adjacency_specificity: return "Adjacency specificity";
        case GraphMetric::orientation_precision: return "Orientation precision";
        case GraphMetric::orientation_recall: return "Orientation recall";
        case GraphMetric::vstructure_recovery: return "Proportion recovered v-structures";
        case GraphMetric::sid_lower: return "SID (lower bound)";
        case GraphMetric::sid_upper: return "SID (upper bound)";
    }
    return "unknown";
}

GraphMetric parse_graph_metric(std::string_view name) {
    for (const auto m : all_graph_metrics)
        if (to_string(m) == name) return m;
    throw InputError("unknown metric '" + std::string(name) + "'");
}

bool smaller_is_better(GraphMetric m) {
    return m == GraphMetric::shd || m == GraphMetric::sid_lower || m == GraphMetric::sid_upper;
}

bool needs_sid(GraphMetric m) { return m == GraphMetric::sid_lower || m == GraphMetric::sid_upper; }

MetricValue MetricReport::at(GraphMetric m) const {
    const auto it = values.find(std::string(to_string(m)));
    if (it == values.end())
        throw InputError("metric '" + std::string(to_string(m)) + "' not in report");
    return it->second;
}

ConfusionCounts adjacency_confusion(const MixedGraph& truth, const MixedGraph& est) {
    require_same_nodes(truth, est);
    ConfusionCounts c;
    for (Node i = 0; i < truth.size(); ++i)
        for (Node j = i + 1; j < truth.size(); ++j) {
            const bool t = truth.adjacent(i, j);
            const bool e = est.adjacent(i, j);
            if (t && e) ++c.tp;
            else if (e) ++c.fp;
            else if (t) ++c.fn;
            else ++c.tn;
        }
    return c;
}

ConfusionCounts orientation_confusion(const MixedGraph& truth, const MixedGraph& est) {
    require_same_nodes(truth, est);
    ConfusionCounts c;
    auto classify = [&c](bool truth_head, bool est_head) {
        if (truth_head && est_head) ++c.tp;
        else if (!truth_head && !est_head) ++c.tn;
        else if (est_head) ++c.fp;
        else ++c.fn;
    };
    for (Node i = 0; i < truth.size(); ++i)
        for (Node j = i + 1; j < truth.size(); ++j) {
            if (!truth.adjacent(i, j) || !est.adjacent(i, j)) continue;
            classify(truth.has_directed(i, j), est.has_directed(i, j));  // endpoint at j
            classify(truth.has_directed(j, i), est.has_directed(j, i));  // endpoint at i
        }
    return c;
}

std::int64_t shd(const MixedGraph& a, const MixedGraph& b) {
    require_same_nodes(a, b);
    std::int64_t out = 0;
    for (Node i = 0; i < a.size(); ++i)
        for (Node j = i + 1; j < a.size(); ++j)
            if (a.pair_type(i, j) != b.pair_type(i, j)) ++out;
    return out;
}

MetricValue vstructure_recovery(const MixedGraph& truth, const MixedGraph& est) {
    require_same_nodes(truth, est);
    const auto t = v_structures(truth);
    if (t.empty()) return 1.0;
    const auto e = v_structures(est);
    std::vector<VStructure> common;
    std::set_intersection(t.begin(), t.end(), e.begin(), e.end(), std::back_inserter(common));
    return static_cast<double>(common.size()) / static_cast<double>(t.size());
}

bool valid_adjustment(const Dag& g, Node i, Node j, std::span<const Node> given) {
    g.check_node(i);
    g.check_node(j);
    if (i == j) throw InputError("valid_adjustment: i and j must differ");
    for (Node z : given) {
        g.check_node(z);
        if (z == i || z == j)
            throw InputError("valid_adjustment: adjustment set contains an endpoint");
    }
    const auto d = static_cast<std::size_t>(g.size());
    const auto de_i = descendants(g, i);
    const Node target[] = {j};
    const auto an_j = ancestors_of(g, target);

    // Nodes other than i on directed paths i -> ... -> j.
    std::vector<bool> causal(d, false);
    for (std::size_t w = 0; w < d; ++w)
        causal[w] = static_cast<Node>(w) != i && de_i[w] && an_j[w];

    std::vector<bool> forbidden(d, false);
    for (std::size_t w = 0; w < d; ++w) {
        if (!causal[w]) continue;
        const auto de_w = descendants(g, static_cast<Node>(w));
        for (std::size_t x = 0; x < d; ++x)
            if (de_w[x]) forbidden[x] = true;
    }
    for (Node z : given)
        if (forbidden[static_cast<std::size_t>(z)]) return false;

    // Proper back-door graph: drop the first edge of every causal path.
    std::vector<Edge> kept;
    for (const auto& e : g.directed_edges())
        if (!(e.from == i && causal[static_cast<std::size_t>(e.to)])) kept.push_back(e);
    const Dag backdoor(g.labels(), kept);
    return d_separated(backdoor, i, j, given);
}

std::int64_t sid(const Dag& truth, const Dag& est) {
    require_same_nodes(truth, est);
    std::int64_t wrong = 0;
    for (Node i = 0; i < truth.size(); ++i) {
        const auto pa = est.parents(i);
        const auto de_i = descendants(truth, i);
        for (Node j = 0; j < truth.size(); ++j) {
            if (j == i) continue;
            if (std::find(pa.begin(), pa.end(), j) != pa.end()) {
                // The estimate claims no effect of i on j.
                if (de_i[static_cast<std::size_t>(j)]) ++wrong;
            } else if (!valid_adjustment(truth, i, j, pa)) {
                ++wrong;
            }
        }
    }
    return wrong;
}

SidBounds sid(const Dag& truth, const MixedGraph& est, std::size_t cap) {
    require_same_nodes(truth, est);
    if (kind_of(est) == GraphKind::dag) {
        const auto v = sid(truth, Dag::from_graph(est));
        return {v, v, true};
    }
    const auto ext = enumerate_extensions(Cpdag(est), cap);
    if (ext.empty())
        throw NumericalError("estimate admits no consistent DAG extension; SID bounds undefined");
    SidBounds b{sid(truth, ext.front()), 0, false};
    b.upper = b.lower;
    for (std::size_t k = 1; k < ext.size(); ++k) {
        const auto v = sid(truth, ext[k]);
        b.lower = std::min(b.lower, v);
        b.upper = std::max(b.upper, v);
    }
    return b;
}

MetricReport full_report(const Dag& truth, const MixedGraph& est, const ReportOptions& options) {
    require_same_nodes(truth, est);
    std::vector<GraphMetric> wanted = options.metrics;
    if (wanted.empty()) wanted.assign(std::begin(all_graph_metrics), std::end(all_graph_metrics));
    auto want = [&wanted](GraphMetric m) {
        return std::find(wanted.begin(), wanted.end(), m) != wanted.end();
    };

    MetricReport r;
    r.d = truth.size();
    r.m_true = static_cast<std::int64_t>(truth.edge_count());
    r.m_est = static_cast<std::int64_t>(est.edge_count());
    r.truth_kind = "dag";
    r.est_kind = std::string(to_string(kind_of(est)));

    auto put = [&r](GraphMetric m, MetricValue v) { r.values[std::string(to_string(m))] = v; };

    if (want(GraphMetric::shd)) put(GraphMetric::shd, static_cast<double>(shd(truth, est)));

    const auto adj = adjacency_confusion(truth, est);
    const std::pair<GraphMetric, MetricId> adjacency[] = {
        {GraphMetric::adjacency_precision, MetricId::precision},
        {GraphMetric::adjacency_recall, MetricId::recall},
        {GraphMetric::adjacency_f1, MetricId::f1},
        {GraphMetric::adjacency_npv, MetricId::npv},
        {GraphMetric::adjacency_specificity, MetricId::specificity},
    };
    for (const auto& [gm, id] : adjacency)
        if (want(gm)) put(gm, metric_from_counts(id, adj));

    if (want(GraphMetric::orientation_precision) || want(GraphMetric::orientation_recall)) {
        const auto ori = orientation_confusion(truth, est);
        if (want(GraphMetric::orientation_precision))
            put(GraphMetric::orientation_precision, metric_from_counts(MetricId::precision, ori));
        if (want(GraphMetric::orientation_recall))
            put(GraphMetric::orientation_recall, metric_from_counts(MetricId::recall, ori));
    }
    if (want(GraphMetric::vstructure_recovery))
        put(GraphMetric::vstructure_recovery, vstructure_recovery(truth, est));

    if (want(GraphMetric::sid_lower) || want(GraphMetric::sid_upper)) {
        const auto b = sid(truth, est, options.extension_cap);
        if (want(GraphMetric::sid_lower)) put(GraphMetric::sid_lower, static_cast<double>(b.lower));
        if (want(GraphMetric::sid_upper)) put(GraphMetric::sid_upper, static_cast<double>(b.upper));
    }

    for (const auto& [name, v] : r.values)
        if (v.is_missing()) r.notes.push_back(name + " undefined (zero denominator)");
    return r;
}

}  // namespace ncdisco
