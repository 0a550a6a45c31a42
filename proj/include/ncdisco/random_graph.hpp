#pragma once

#include "ncdisco/graph.hpp"
#include "ncdisco/rng.hpp"

#include <cstddef>
#include <functional>

namespace ncdisco {

/// Erdős–Rényi-type DAG: a uniform m-subset of the d(d-1)/2 node pairs,
/// oriented along a uniformly random total order of the nodes.
Dag sample_er_dag(int d, std::size_t m, const RngSeed& seed);
Dag sample_er_dag(int d, std::size_t m, Engine& rng);

/// The CPDAG of sample_er_dag(d, m, seed).
Cpdag sample_er_cpdag(int d, std::size_t m, const RngSeed& seed);

/// Hook for alternative random graph families: (d, m, seed) -> DAG.
using DagSampler = std::function<Dag(int, std::size_t, const RngSeed&)>;

}  // namespace ncdisco
