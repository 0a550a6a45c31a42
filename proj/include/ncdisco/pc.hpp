#pragma once

#include "ncdisco/graph.hpp"
#include "ncdisco/sem.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace ncdisco {

/// Conditional independence test returning a p-value for i _||_ j | given.
class CiTest {
public:
    virtual ~CiTest() = default;
    virtual int size() const = 0;
    virtual double p_value(Node i, Node j, std::span<const Node> given) const = 0;
};

/// Two-sided p-value of the Fisher z statistic sqrt(n - |Z| - 3) * atanh(r).
double fisher_z_p_value(double partial_corr, std::size_t n, std::size_t cond_size);

/// Gaussian CI test on the sample correlation matrix of a DataMatrix.
class FisherZTest final : public CiTest {
public:
    explicit FisherZTest(const DataMatrix& data);

    int size() const override { return static_cast<int>(corr_.rows()); }
    double p_value(Node i, Node j, std::span<const Node> given) const override;

    /// Sample partial correlation; throws NumericalError on a singular block.
    double partial_correlation(Node i, Node j, std::span<const Node> given) const;

private:
    Eigen::MatrixXd corr_;
    std::size_t n_;
};

double fisher_z_test(const DataMatrix& data, Node i, Node j, std::span<const Node> given);

/// Perfect CI information from a known DAG: p = 1 if d-separated, else 0.
class DSeparationOracle final : public CiTest {
public:
    explicit DSeparationOracle(Dag g) : g_(std::move(g)) {}

    int size() const override { return g_.size(); }
    double p_value(Node i, Node j, std::span<const Node> given) const override {
        return d_separated(g_, i, j, given) ? 1.0 : 0.0;
    }

private:
    Dag g_;
};

struct PcConfig {
    double alpha = 0.05;
    std::optional<int> max_cond_size;  // unlimited when empty

    void validate() const;
};

struct PcResult {
    Cpdag graph;
    std::map<NodePair, std::vector<Node>> sepsets;
    /// Edges proposed as colliders from both ends; left undirected.
    std::size_t orientation_conflicts = 0;
    /// False when the output is not the CPDAG of any DAG.
    bool proper = true;
};

/// Order-independent PC: stable skeleton search, collider orientation from
/// separating sets, Meek closure.
PcResult pc(const CiTest& test, const PcConfig& cfg, std::vector<std::string> labels = {});
PcResult pc(const DataMatrix& data, const PcConfig& cfg, std::vector<std::string> labels = {});
PcResult pc_oracle(const Dag& truth, const PcConfig& cfg = {});

/// True if p equals dag_to_cpdag of one of its extensions.
bool is_proper_cpdag(const Cpdag& p);

}  // namespace ncdisco
