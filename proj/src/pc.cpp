#include "ncdisco/pc.hpp"

#include "ncdisco/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <numeric>

namespace ncdisco {

double fisher_z_p_value(double partial_corr, std::size_t n, std::size_t cond_size) {
    if (n <= cond_size + 3)
        throw InputError("Fisher z test needs n > |Z| + 3 (n = " + std::to_string(n) +
                         ", |Z| = " + std::to_string(cond_size) + ")");
    if (!std::isfinite(partial_corr)) throw NumericalError("non-finite partial correlation");
    constexpr double clamp = 1.0 - 1e-15;
    const double r = std::clamp(partial_corr, -clamp, clamp);
    const double z = 0.5 * std::log((1.0 + r) / (1.0 - r));
    const double stat = std::sqrt(static_cast<double>(n - cond_size - 3)) * std::abs(z);
    return std::erfc(stat / std::sqrt(2.0));
}

FisherZTest::FisherZTest(const DataMatrix& data) : n_(static_cast<std::size_t>(data.rows())) {
    if (data.rows() < 2) throw InputError("need at least two observations");
    const Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
    const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(data.rows() - 1);
    const Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
    for (Eigen::Index k = 0; k < sd.size(); ++k)
        if (!(sd(k) > 0.0)) throw NumericalError("column " + std::to_string(k) + " has zero variance");
    corr_ = sd.cwiseInverse().asDiagonal() * cov * sd.cwiseInverse().asDiagonal();
}

double FisherZTest::partial_correlation(Node i, Node j, std::span<const Node> given) const {
    const auto k = static_cast<Eigen::Index>(given.size() + 2);
    std::vector<Node> idx{i, j};
    idx.insert(idx.end(), given.begin(), given.end());
    for (Node v : idx)
        if (v < 0 || v >= size()) throw InputError("CI test node out of range");
    if (given.empty()) return corr_(i, j);
    Eigen::MatrixXd sub(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b)
            sub(a, b) = corr_(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]);
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(sub);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.rcond() < 1e-12)
        throw NumericalError("singular correlation block in partial correlation test");
    const Eigen::MatrixXd prec = ldlt.solve(Eigen::MatrixXd::Identity(k, k));
    return -prec(0, 1) / std::sqrt(prec(0, 0) * prec(1, 1));
}

double FisherZTest::p_value(Node i, Node j, std::span<const Node> given) const {
    return fisher_z_p_value(partial_correlation(i, j, given), n_, given.size());
}

double fisher_z_test(const DataMatrix& data, Node i, Node j, std::span<const Node> given) {
    return FisherZTest(data).p_value(i, j, given);
}

void PcConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
    if (max_cond_size && *max_cond_size < 0)
        throw InputError("max conditioning set size must be non-negative");
}

namespace {

// Calls fn on every size-k subset of pool in lexicographic order; stops when fn returns true.
template <typename Fn>
bool for_each_subset(const std::vector<Node>& pool, std::size_t k, Fn&& fn) {
    if (k > pool.size()) return false;
    std::vector<std::size_t> pos(k);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    std::vector<Node> subset(k);
    while (true) {
        for (std::size_t t = 0; t < k; ++t) subset[t] = pool[pos[t]];
        if (fn(subset)) return true;
        std::size_t t = k;
        while (t > 0 && pos[t - 1] == pool.size() - k + (t - 1)) --t;
        if (t == 0) return false;
        ++pos[t - 1];
        for (std::size_t u = t; u < k; ++u) pos[u] = pos[u - 1] + 1;
    }
}

class BoolMatrix {
public:
    BoolMatrix(int d, bool fill)
        : d_(static_cast<std::size_t>(d)), cells_(d_ * d_, fill ? 1 : 0) {}

    bool operator()(Node i, Node j) const { return cells_[index(i, j)] != 0; }
    void set(Node i, Node j, bool on) { cells_[index(i, j)] = on ? 1 : 0; }

private:
    std::size_t index(Node i, Node j) const {
        return static_cast<std::size_t>(i) * d_ + static_cast<std::size_t>(j);
    }

    std::size_t d_;
    std::vector<std::uint8_t> cells_;
};

}  // namespace

PcResult pc(const CiTest& test, const PcConfig& cfg, std::vector<std::string> labels) {
    cfg.validate();
    const int d = test.size();
    if (labels.empty()) labels = default_labels(d);
    if (static_cast<int>(labels.size()) != d) throw InputError("label count does not match CI test");

    BoolMatrix adj(d, true);
    for (Node v = 0; v < d; ++v) adj.set(v, v, false);
    PcResult out;

    for (int level = 0;; ++level) {
        if (cfg.max_cond_size && level > *cfg.max_cond_size) break;
        // Neighbourhoods are frozen for the whole level.
        std::vector<std::vector<Node>> frozen(static_cast<std::size_t>(d));
        for (Node v = 0; v < d; ++v)
            for (Node w = 0; w < d; ++w)
                if (adj(v, w)) frozen[static_cast<std::size_t>(v)].push_back(w);

        bool tested = false;
        for (Node i = 0; i < d; ++i) {
            const auto& around = frozen[static_cast<std::size_t>(i)];
            for (Node j : around) {
                if (!adj(i, j)) continue;
                std::vector<Node> pool;
                std::copy_if(around.begin(), around.end(), std::back_inserter(pool),
                             [j](Node w) { return w != j; });
                if (pool.size() < static_cast<std::size_t>(level)) continue;
                tested = true;
                for_each_subset(pool, static_cast<std::size_t>(level), [&](const std::vector<Node>& s) {
                    if (test.p_value(i, j, s) < cfg.alpha) return false;
                    adj.set(i, j, false);
                    adj.set(j, i, false);
                    out.sepsets[NodePair::of(i, j)] = s;
                    return true;
                });
            }
        }
        if (!tested) break;
    }

    // head(x, y): some unshielded collider puts an arrow from x into y.
    BoolMatrix head(d, false);
    for (Node b = 0; b < d; ++b)
        for (Node a = 0; a < d; ++a) {
            if (!adj(a, b)) continue;
            for (Node c = a + 1; c < d; ++c) {
                if (!adj(c, b) || adj(a, c)) continue;
                const auto it = out.sepsets.find(NodePair::of(a, c));
                const bool in_sepset = it != out.sepsets.end() &&
                                       std::find(it->second.begin(), it->second.end(), b) != it->second.end();
                if (!in_sepset) {
                    head.set(a, b, true);
                    head.set(c, b, true);
                }
            }
        }

    Cpdag g(std::move(labels));
    std::vector<NodePair> conflicted;
    for (Node x = 0; x < d; ++x)
        for (Node y = x + 1; y < d; ++y) {
            if (!adj(x, y)) continue;
            if (head(x, y) && head(y, x)) {
                ++out.orientation_conflicts;
                conflicted.push_back({x, y});
                g.add_undirected(x, y);
            } else if (head(x, y)) {
                g.add_directed(x, y);
            } else if (head(y, x)) {
                g.add_directed(y, x);
            } else {
                g.add_undirected(x, y);
            }
        }
    // Conflicting pairs stay undirected rather than being oriented by propagation.
    apply_meek_rules(g, conflicted);
    out.proper = out.orientation_conflicts == 0 && is_proper_cpdag(g);
    out.graph = std::move(g);
    return out;
}

PcResult pc(const DataMatrix& data, const PcConfig& cfg, std::vector<std::string> labels) {
    const FisherZTest test(data);
    return pc(test, cfg, std::move(labels));
}

PcResult pc_oracle(const Dag& truth, const PcConfig& cfg) {
    const DSeparationOracle oracle(truth);
    return pc(oracle, cfg, truth.labels());
}

bool is_proper_cpdag(const Cpdag& p) {
    const auto ext = find_extension(p);
    return ext && dag_to_cpdag(*ext) == p;
}

}  // namespace ncdisco
