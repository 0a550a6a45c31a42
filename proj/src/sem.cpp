#include "ncdisco/sem.hpp"

#include "ncdisco/error.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

namespace ncdisco {

void SemConfig::validate() const {
    if (n < 1) throw InputError("sample size must be at least 1");
    if (!(weight_lo > 0.0 && weight_lo <= weight_hi))
        throw InputError("weight range must satisfy 0 < lo <= hi");
    if (!(variance_lo > 0.0 && variance_lo <= variance_hi))
        throw InputError("error variance range must satisfy 0 < lo <= hi");
}

Eigen::MatrixXd SemModel::covariance() const {
    const auto d = static_cast<Eigen::Index>(graph.size());
    const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(d, d) - weights.transpose();
    const Eigen::MatrixXd inv = a.inverse();
    return inv * variances.asDiagonal() * inv.transpose();
}

SemModel draw_sem(const Dag& g, const SemConfig& cfg, const RngSeed& seed) {
    cfg.validate();
    auto rng = make_engine(seed);
    const auto d = static_cast<Eigen::Index>(g.size());
    SemModel m{g, Eigen::MatrixXd::Zero(d, d), Eigen::VectorXd::Zero(d)};

    std::uniform_real_distribution<double> magnitude(cfg.weight_lo, cfg.weight_hi);
    std::bernoulli_distribution negative(0.5);
    for (const auto& e : g.directed_edges()) {
        const double w = magnitude(rng);
        m.weights(e.from, e.to) = negative(rng) ? -w : w;
    }
    std::uniform_real_distribution<double> variance(cfg.variance_lo, cfg.variance_hi);
    for (Eigen::Index k = 0; k < d; ++k) m.variances(k) = variance(rng);
    return m;
}

DataMatrix simulate(const SemModel& model, std::size_t n, const RngSeed& seed) {
    if (n < 1) throw InputError("sample size must be at least 1");
    auto rng = make_engine(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const auto rows = static_cast<Eigen::Index>(n);
    DataMatrix x(rows, static_cast<Eigen::Index>(model.graph.size()));
    for (const Node v : model.graph.topological_order()) {
        const double sd = std::sqrt(model.variances(v));
        for (Eigen::Index r = 0; r < rows; ++r) x(r, v) = sd * noise(rng);
        for (const Node p : model.graph.parents(v)) x.col(v) += model.weights(p, v) * x.col(p);
    }
    return x;
}

void write_csv(std::ostream& out, const DataMatrix& data, const std::vector<std::string>& labels) {
    if (static_cast<Eigen::Index>(labels.size()) != data.cols())
        throw InputError("label count does not match data columns");
    for (std::size_t k = 0; k < labels.size(); ++k) out << (k ? "," : "") << labels[k];
    out << '\n' << std::setprecision(17);
    for (Eigen::Index r = 0; r < data.rows(); ++r) {
        for (Eigen::Index c = 0; c < data.cols(); ++c) out << (c ? "," : "") << data(r, c);
        out << '\n';
    }
}

}  // namespace ncdisco
