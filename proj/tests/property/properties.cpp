// Exhaustive and randomized property checks. Runnable on its own:
//   ./build/tests/ncdisco_properties

#include "ncdisco/commands.hpp"
#include "ncdisco/metrics.hpp"
#include "ncdisco/pc.hpp"
#include "ncdisco/pipeline.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

using namespace ncdisco;

namespace {

// DAGs on d nodes grouped into Markov equivalence classes by their full
// independence models.
std::vector<std::vector<Dag>> equivalence_classes(int d) {
    std::map<std::vector<bool>, std::vector<Dag>> groups;
    for (auto& g : oracle::all_dags(d)) groups[oracle::independence_model(g)].push_back(g);
    std::vector<std::vector<Dag>> out;
    for (auto& [model, members] : groups) out.push_back(std::move(members));
    return out;
}

std::set<std::vector<Edge>> edge_sets(const std::vector<Dag>& dags) {
    std::set<std::vector<Edge>> out;
    for (const auto& g : dags) out.insert(g.directed_edges());
    return out;
}

MixedGraph random_mixed(int d, std::mt19937_64& rng) {
    Cpdag g(d);
    std::uniform_int_distribution<int> state(0, 3);
    for (Node i = 0; i < d; ++i)
        for (Node j = i + 1; j < d; ++j) switch (state(rng)) {
                case 1: g.add_directed(i, j); break;
                case 2: g.add_directed(j, i); break;
                case 3: g.add_undirected(i, j); break;
                default: break;
            }
    return g;
}

}  // namespace

TEST(MarkovEquivalence, CpdagIdentifiesClassExactly) {
    for (int d = 1; d <= 4; ++d) {
        const auto classes = equivalence_classes(d);
        for (const auto& members : classes) {
            const auto c = dag_to_cpdag(members.front());
            for (const auto& g : members) ASSERT_EQ(dag_to_cpdag(g), c);

            // An edge is directed in the CPDAG iff every member agrees on it.
            for (Node i = 0; i < d; ++i)
                for (Node j = 0; j < d; ++j) {
                    if (!c.adjacent(i, j)) continue;
                    bool all_forward = true;
                    for (const auto& g : members) all_forward = all_forward && g.has_directed(i, j);
                    ASSERT_EQ(c.has_directed(i, j), all_forward);
                }

            const auto ext = enumerate_extensions(c);
            ASSERT_EQ(edge_sets(ext), edge_sets(members)) << "d=" << d;
            ASSERT_EQ(ext.size(), members.size());
            ASSERT_TRUE(is_proper_cpdag(c));
        }
        // Distinct classes have distinct CPDAGs.
        std::set<std::vector<PairType>> reps;
        for (const auto& members : classes) {
            const auto c = dag_to_cpdag(members.front());
            std::vector<PairType> key;
            for (Node i = 0; i < d; ++i)
                for (Node j = i + 1; j < d; ++j) key.push_back(c.pair_type(i, j));
            reps.insert(key);
        }
        ASSERT_EQ(reps.size(), classes.size());
    }
    EXPECT_EQ(oracle::all_dags(4).size(), 543u);
    EXPECT_EQ(equivalence_classes(4).size(), 185u);
}

TEST(ShdAxioms, MetricOnMixedGraphs) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
        const auto a = random_mixed(6, rng), b = random_mixed(6, rng), c = random_mixed(6, rng);
        ASSERT_EQ(shd(a, a), 0);
        ASSERT_GE(shd(a, b), 0);
        ASSERT_EQ(shd(a, b), shd(b, a));
        ASSERT_LE(shd(a, c), shd(a, b) + shd(b, c));
        ASSERT_EQ(shd(a, b) == 0, a == b);
        ASSERT_LE(shd(a, b), 15);
    }
}

TEST(DSeparation, ExhaustiveAgainstPathEnumeration) {
    for (int d = 2; d <= 4; ++d)
        for (const auto& g : oracle::all_dags(d))
            for (Node x = 0; x < d; ++x)
                for (Node y = 0; y < d; ++y) {
                    if (x == y) continue;
                    for (const auto& z : oracle::subsets_without(d, x, y))
                        ASSERT_EQ(d_separated(g, x, y, z), oracle::path_dsep(g, x, y, z));
                }
    std::mt19937_64 rng(41);
    for (int t = 0; t < 300; ++t) {
        const auto g = oracle::random_dag(5, static_cast<int>(rng() % 11), rng);
        for (Node x = 0; x < 5; ++x)
            for (Node y = x + 1; y < 5; ++y)
                for (const auto& z : oracle::subsets_without(5, x, y))
                    ASSERT_EQ(d_separated(g, x, y, z), oracle::path_dsep(g, x, y, z));
    }
}

TEST(SidBounds, BracketEveryExtension) {
    for (int d = 2; d <= 4; ++d) {
        const auto classes = equivalence_classes(d);
        const auto truths = oracle::all_dags(d);
        std::mt19937_64 rng(static_cast<std::uint64_t>(d));
        for (const auto& members : classes) {
            const auto c = dag_to_cpdag(members.front());
            for (int t = 0; t < 5; ++t) {
                const auto& truth = truths[rng() % truths.size()];
                std::int64_t lo = 1 << 30, hi = -1;
                for (const auto& g : members) {
                    const auto v = sid(truth, g);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                const auto b = sid(truth, c);
                ASSERT_EQ(b.lower, lo);
                ASSERT_EQ(b.upper, hi);
                ASSERT_EQ(b.exact, members.size() == 1 && c.fully_directed());
            }
        }
    }
}

TEST(OraclePc, ReturnsCpdagForAllSmallDags) {
    for (int d = 1; d <= 4; ++d)
        for (const auto& g : oracle::all_dags(d)) ASSERT_EQ(pc_oracle(g, PcConfig{}).graph, MixedGraph(dag_to_cpdag(g)));
}

TEST(PipelineDeterminism, ThreadCountDoesNotChangeOutput) {
    PipelineConfig cfg;
    cfg.b = 30;
    cfg.sem.n = 150;
    cfg.seed = 2024;
    std::string csv_ref, json_ref;
    for (std::size_t threads : {1u, 2u, 4u, 7u}) {
        cfg.threads = threads;
        const auto r = run_study(cfg);
        std::ostringstream csv;
        write_replications_csv(csv, r);
        auto summary = study_summary(r);
        const auto json = summary.dump();
        if (csv_ref.empty()) {
            csv_ref = csv.str();
            json_ref = json;
        } else {
            ASSERT_EQ(csv.str(), csv_ref) << "threads=" << threads;
            ASSERT_EQ(json, json_ref) << "threads=" << threads;
        }
    }
}
