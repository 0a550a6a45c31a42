#include "ncdisco/error.hpp"
#include "ncdisco/sem.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace ncdisco;

namespace {

Dag diamond() {
    const Edge e[] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    return Dag(4, e);
}

// Covariance by propagating structural equations in topological order.
Eigen::MatrixXd covariance_by_recursion(const SemModel& m) {
    const auto d = m.weights.rows();
    // x = B e with B built row by row: x_j = sum_i w_ij x_i + e_j.
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d, d);
    for (Node j : m.graph.topological_order()) {
        b(j, j) = 1.0;
        for (Node i : m.graph.parents(j)) b.row(j) += m.weights(i, j) * b.row(i);
    }
    return b * m.variances.asDiagonal() * b.transpose();
}

}  // namespace

TEST(Sem, DrawRespectsRanges) {
    const auto g = diamond();
    const SemConfig cfg;
    for (std::uint64_t s = 0; s < 30; ++s) {
        const auto m = draw_sem(g, cfg, RngSeed{1, s});
        for (Node i = 0; i < 4; ++i) {
            EXPECT_GE(m.variances(i), 0.5);
            EXPECT_LE(m.variances(i), 1.5);
            for (Node j = 0; j < 4; ++j) {
                const double w = std::abs(m.weights(i, j));
                if (g.has_directed(i, j)) {
                    EXPECT_GE(w, 0.5);
                    EXPECT_LE(w, 2.0);
                } else {
                    EXPECT_EQ(w, 0.0);
                }
            }
        }
    }
}

TEST(Sem, CovarianceMatchesRecursion) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        const auto g = oracle::random_dag(7, 10, rng);
        const auto m = draw_sem(g, SemConfig{}, RngSeed{3, static_cast<std::uint64_t>(t)});
        EXPECT_LT((m.covariance() - covariance_by_recursion(m)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Sem, SampleCovarianceConverges) {
    const auto m = draw_sem(diamond(), SemConfig{}, RngSeed{4, 0});
    const auto x = simulate(m, 200000, RngSeed{4, 1});
    const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
    const Eigen::MatrixXd s = centered.transpose() * centered / double(x.rows() - 1);
    const Eigen::MatrixXd sigma = m.covariance();
    EXPECT_LT(((s - sigma).array() / sigma.diagonal().maxCoeff()).abs().maxCoeff(), 0.03);
}

TEST(Sem, SimulationIsDeterministic) {
    const auto m = draw_sem(diamond(), SemConfig{}, RngSeed{5, 0});
    EXPECT_EQ(simulate(m, 50, RngSeed{5, 1}), simulate(m, 50, RngSeed{5, 1}));
    EXPECT_NE(simulate(m, 50, RngSeed{5, 1}), simulate(m, 50, RngSeed{5, 2}));
}

TEST(Sem, ConfigValidation) {
    SemConfig c;
    c.n = 0;
    EXPECT_THROW(c.validate(), InputError);
    c = SemConfig{};
    c.weight_lo = 3.0;
    EXPECT_THROW(c.validate(), InputError);
    c = SemConfig{};
    c.variance_lo = 0.0;
    EXPECT_THROW(c.validate(), InputError);
}

TEST(Sem, CsvHasHeaderAndRows) {
    DataMatrix x(2, 2);
    x << 1.5, -2, 0.25, 3;
    std::ostringstream out;
    write_csv(out, x, {"a", "b"});
    EXPECT_EQ(out.str(), "a,b\n1.5,-2\n0.25,3\n");
    EXPECT_THROW(write_csv(out, x, {"a"}), InputError);
}
