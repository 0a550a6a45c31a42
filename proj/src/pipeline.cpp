#include "ncdisco/pipeline.hpp"

#include "ncdisco/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iterator>
#include <mutex>
#include <thread>

namespace ncdisco {

namespace {

// Purpose salts for the per-replication sub-streams.
enum Salt : std::uint64_t {
    salt_truth = 1,
    salt_sem = 2,
    salt_data = 3,
    salt_algorithm = 4,
    salt_nc_size = 5,
    salt_nc_graph = 6,
};

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// exception thrown by any worker is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

std::map<std::string, MetricValue> evaluate(const Dag& truth, const MixedGraph& est,
                                            const std::vector<GraphMetric>& metrics,
                                            std::size_t cap, std::vector<std::string>& errors) {
    ReportOptions plain;
    plain.extension_cap = cap;
    bool sid_wanted = false;
    for (const auto m : metrics) {
        if (needs_sid(m)) sid_wanted = true;
        else plain.metrics.push_back(m);
    }
    std::map<std::string, MetricValue> out;
    if (!plain.metrics.empty()) out = full_report(truth, est, plain).values;
    if (sid_wanted) {
        std::optional<SidBounds> b;
        try {
            b = sid(truth, est, cap);
        } catch (const NumericalError& e) {
            errors.emplace_back(std::string("sid: ") + e.what());
        }
        for (const auto m : metrics) {
            if (!needs_sid(m)) continue;
            MetricValue v;
            if (b) v = static_cast<double>(m == GraphMetric::sid_lower ? b->lower : b->upper);
            out[std::string(to_string(m))] = v;
        }
    }
    return out;
}

double type7_quantile(const std::vector<double>& sorted, double level) {
    const double h = static_cast<double>(sorted.size() - 1) * level;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

bool at_least_as_good(double nc, double algo, Direction dir) {
    return dir == Direction::smaller_favorable ? nc <= algo : nc >= algo;
}

}  // namespace

NcKind nc_kind_for(const MixedGraph& estimate) { return kind_of(estimate); }

MixedGraph draw_negative_control(int d, std::size_t m, NcKind kind, const RngSeed& seed) {
    if (kind == NcKind::dag) return sample_er_dag(d, m, seed);
    return sample_er_cpdag(d, m, seed);
}

Direction direction_of(GraphMetric m) {
    return smaller_is_better(m) ? Direction::smaller_favorable : Direction::larger_favorable;
}

PairedP paired_p(std::span<const MetricValue> algo, std::span<const MetricValue> nc, Direction dir) {
    if (algo.size() != nc.size())
        throw InputError("paired_p: vectors differ in length (" + std::to_string(algo.size()) +
                         " vs " + std::to_string(nc.size()) + ")");
    PairedP out;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < algo.size(); ++i) {
        if (algo[i].is_missing() || nc[i].is_missing()) {
            ++out.dropped;
            continue;
        }
        ++out.used;
        if (at_least_as_good(nc[i].value(), algo[i].value(), dir)) ++hits;
    }
    if (out.used > 0) out.p = static_cast<double>(hits) / static_cast<double>(out.used);
    return out;
}

Summary summarize(std::span<const MetricValue> values) {
    Summary s;
    std::vector<double> xs;
    for (const auto& v : values) {
        if (v.is_missing()) ++s.missing;
        else xs.push_back(v.value());
    }
    s.used = xs.size();
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    std::sort(xs.begin(), xs.end());
    s.ci_low = type7_quantile(xs, 0.025);
    s.ci_high = type7_quantile(xs, 0.975);
    return s;
}

void PipelineConfig::validate() const {
    if (b < 1) throw InputError("b: replication count must be at least 1");
    if (d < 2) throw InputError("d: need at least two nodes");
    const std::size_t m_max = static_cast<std::size_t>(d) * static_cast<std::size_t>(d - 1) / 2;
    if (m_true > m_max)
        throw InputError("m_true: " + std::to_string(m_true) + " exceeds m_max = " + std::to_string(m_max));
    sem.validate();
    pc.validate();
    if (!custom_algorithm && algorithm != "pc" && algorithm != "pc-oracle")
        throw InputError("algorithm: unknown '" + algorithm + "' (expected pc or pc-oracle)");
    if (threads < 1) throw InputError("threads must be at least 1");
    if (extension_cap < 1) throw InputError("extension_cap must be positive");
}

std::vector<GraphMetric> PipelineConfig::resolved_metrics() const {
    if (!metrics.empty()) return metrics;
    return {std::begin(all_graph_metrics), std::end(all_graph_metrics)};
}

StudyResult run_study(const PipelineConfig& cfg) {
    cfg.validate();
    const auto metrics = cfg.resolved_metrics();
    StudyResult result;
    result.config = cfg;
    result.replications.resize(cfg.b);

    Algorithm algorithm = cfg.custom_algorithm;
    const bool needs_data = cfg.custom_algorithm || cfg.algorithm == "pc";
    if (!algorithm) {
        if (cfg.algorithm == "pc") {
            algorithm = [pc_cfg = cfg.pc](const Dag& truth, const DataMatrix& data, const RngSeed&) -> MixedGraph {
                return pc(data, pc_cfg, truth.labels()).graph;
            };
        } else {
            algorithm = [pc_cfg = cfg.pc](const Dag& truth, const DataMatrix&, const RngSeed&) -> MixedGraph {
                return pc_oracle(truth, pc_cfg).graph;
            };
        }
    }

    // Step 1: truths, data, estimates.
    parallel_for(cfg.b, cfg.threads, [&](std::size_t i) {
        auto& rep = result.replications[i];
        const RngSeed base{cfg.seed, i};
        rep.index = i;
        rep.truth = sample_er_dag(cfg.d, cfg.m_true, base.child(salt_truth));
        try {
            DataMatrix data;
            if (needs_data) {
                const auto model = draw_sem(rep.truth, cfg.sem, base.child(salt_sem));
                data = simulate(model, cfg.sem.n, base.child(salt_data));
            }
            rep.estimate = algorithm(rep.truth, data, base.child(salt_algorithm));
            if (rep.estimate.size() != cfg.d)
                throw InputError("algorithm returned a graph over " + std::to_string(rep.estimate.size()) + " nodes");
            rep.m_est = rep.estimate.edge_count();
            rep.estimated = true;
        } catch (const std::exception& e) {
            rep.errors.emplace_back(std::string("algorithm: ") + e.what());
        }
    });

    std::vector<std::size_t> observed_sizes;
    for (std::size_t i = 0; i < cfg.b; ++i)
        if (result.replications[i].estimated) observed_sizes.push_back(result.replications[i].m_est);
        else ++result.failed_replications;
    if (observed_sizes.empty()) throw NumericalError("every replication failed; no edge counts to resample");

    // Steps 2-3: edge counts resampled with replacement, negative controls, metrics.
    parallel_for(cfg.b, cfg.threads, [&](std::size_t i) {
        auto& rep = result.replications[i];
        const RngSeed base{cfg.seed, i};
        auto rng = make_engine(base.child(salt_nc_size));
        std::uniform_int_distribution<std::size_t> pick(0, observed_sizes.size() - 1);
        rep.nc_edges = observed_sizes[pick(rng)];
        rep.negative_control = draw_negative_control(cfg.d, rep.nc_edges, cfg.nc_kind, base.child(salt_nc_graph));

        std::vector<std::string> nc_errors;
        rep.nc = evaluate(rep.truth, rep.negative_control, metrics, cfg.extension_cap, nc_errors);
        for (auto& e : nc_errors) rep.errors.push_back("negative control " + e);
        if (rep.estimated) {
            std::vector<std::string> algo_errors;
            rep.algo = evaluate(rep.truth, rep.estimate, metrics, cfg.extension_cap, algo_errors);
            for (auto& e : algo_errors) rep.errors.push_back("estimate " + e);
        } else {
            for (const auto m : metrics) rep.algo[std::string(to_string(m))] = MetricValue::missing();
        }
    });

    // Step 4: pairwise comparison per metric.
    for (const auto m : metrics) {
        const std::string key(to_string(m));
        std::vector<MetricValue> a;
        std::vector<MetricValue> n;
        for (const auto& rep : result.replications) {
            a.push_back(rep.algo.at(key));
            n.push_back(rep.nc.at(key));
        }
        result.metrics.push_back({m, summarize(a), summarize(n), paired_p(a, n, direction_of(m))});
    }
    return result;
}

std::vector<SingleTruthResult> single_truth_nc(const Dag& truth, const MixedGraph& estimate,
                                               std::span<const GraphMetric> metrics,
                                               const SingleTruthOptions& options) {
    if (options.reps < 1) throw InputError("negative control count must be at least 1");
    if (truth.size() != estimate.size())
        throw InputError("graphs differ in node count: " + std::to_string(truth.size()) + " vs " +
                         std::to_string(estimate.size()));
    const std::vector<GraphMetric> wanted(metrics.begin(), metrics.end());
    const NcKind kind = options.kind.value_or(nc_kind_for(estimate));
    std::vector<std::string> ignored;
    const auto observed = evaluate(truth, estimate, wanted, options.extension_cap, ignored);

    std::vector<std::map<std::string, MetricValue>> draws(options.reps);
    for (std::size_t r = 0; r < options.reps; ++r) {
        const auto nc = draw_negative_control(truth.size(), estimate.edge_count(), kind,
                                              RngSeed{options.seed, r}.child(salt_nc_graph));
        std::vector<std::string> errors;
        draws[r] = evaluate(truth, nc, wanted, options.extension_cap, errors);
    }

    std::vector<SingleTruthResult> out;
    for (const auto m : wanted) {
        const std::string key(to_string(m));
        SingleTruthResult res{m, observed.at(key), {}, {}, 0, 0};
        std::vector<MetricValue> values;
        std::size_t hits = 0;
        for (const auto& draw : draws) {
            const auto v = draw.at(key);
            values.push_back(v);
            if (v.is_missing() || res.observed.is_missing()) {
                ++res.dropped;
                continue;
            }
            ++res.used;
            if (at_least_as_good(v.value(), res.observed.value(), direction_of(m))) ++hits;
        }
        res.nc = summarize(values);
        if (res.used > 0) res.p = static_cast<double>(hits) / static_cast<double>(res.used);
        out.push_back(std::move(res));
    }
    return out;
}

SingleTruthResult single_truth_nc(const Dag& truth, const MixedGraph& estimate, GraphMetric metric,
                                  const SingleTruthOptions& options) {
    const GraphMetric one[] = {metric};
    return single_truth_nc(truth, estimate, one, options).front();
}

}  // namespace ncdisco
