#pragma once

#include "ncdisco/graph.hpp"
#include "ncdisco/rng.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ncdisco {

/// n rows by d columns; column k holds node k.
using DataMatrix = Eigen::MatrixXd;

/// Parameter ranges for a random linear Gaussian SEM.
struct SemConfig {
    std::size_t n = 400;
    double weight_lo = 0.5;  // |weight| ~ U[weight_lo, weight_hi], random sign
    double weight_hi = 2.0;
    double variance_lo = 0.5;  // error variance ~ U[variance_lo, variance_hi]
    double variance_hi = 1.5;

    void validate() const;
};

struct SemModel {
    Dag graph;
    /// weights(i, j) is the coefficient of i in the equation for j; zero off-edge.
    Eigen::MatrixXd weights;
    Eigen::VectorXd variances;

    /// Population covariance (I - W^T)^{-1} diag(variances) (I - W^T)^{-T}.
    Eigen::MatrixXd covariance() const;
};

SemModel draw_sem(const Dag& g, const SemConfig& cfg, const RngSeed& seed);

DataMatrix simulate(const SemModel& model, std::size_t n, const RngSeed& seed);

void write_csv(std::ostream& out, const DataMatrix& data, const std::vector<std::string>& labels);

}  // namespace ncdisco
