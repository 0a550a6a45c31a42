#include "ncdisco/random_graph.hpp"

#include "ncdisco/error.hpp"

#include <algorithm>
#include <numeric>

namespace ncdisco {

Dag sample_er_dag(int d, std::size_t m, Engine& rng) {
    if (d < 0) throw InputError("node count must be non-negative");
    const std::size_t m_max = static_cast<std::size_t>(d) * static_cast<std::size_t>(d > 0 ? d - 1 : 0) / 2;
    if (m > m_max)
        throw InputError("edge count " + std::to_string(m) + " exceeds m_max = " +
                         std::to_string(m_max) + " for d = " + std::to_string(d));

    std::vector<Node> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> rank(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) rank[static_cast<std::size_t>(order[r])] = static_cast<int>(r);

    // Partial Fisher-Yates over pair indices picks a uniform m-subset.
    std::vector<std::size_t> pairs(m_max);
    std::iota(pairs.begin(), pairs.end(), std::size_t{0});
    for (std::size_t k = 0; k < m; ++k) {
        std::uniform_int_distribution<std::size_t> pick(k, m_max - 1);
        std::swap(pairs[k], pairs[pick(rng)]);
    }

    std::vector<NodePair> all;
    all.reserve(m_max);
    for (Node i = 0; i < d; ++i)
        for (Node j = i + 1; j < d; ++j) all.push_back({i, j});

    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto p = all[pairs[k]];
        if (rank[static_cast<std::size_t>(p.a)] < rank[static_cast<std::size_t>(p.b)])
            edges.push_back({p.a, p.b});
        else
            edges.push_back({p.b, p.a});
    }
    std::sort(edges.begin(), edges.end());
    return Dag(d, edges);
}

Dag sample_er_dag(int d, std::size_t m, const RngSeed& seed) {
    auto rng = make_engine(seed);
    return sample_er_dag(d, m, rng);
}

Cpdag sample_er_cpdag(int d, std::size_t m, const RngSeed& seed) {
    return dag_to_cpdag(sample_er_dag(d, m, seed));
}

}  // namespace ncdisco
