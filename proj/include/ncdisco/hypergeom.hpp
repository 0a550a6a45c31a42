#pragma once

#include "ncdisco/confusion.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ncdisco {

/// Conditioning margins of the adjacency confusion table.
struct HyperParams {
    std::int64_t m_max = 0;
    std::int64_t m_true = 0;
    std::int64_t m_est = 0;

    /// m_max = d(d-1)/2.
    static HyperParams for_nodes(int d, std::int64_t m_true, std::int64_t m_est);

    /// Throws InputError if a margin is negative or exceeds m_max.
    void validate() const;

    std::int64_t support_min() const noexcept;
    std::int64_t support_max() const noexcept;

    friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

/// Reduced fraction with positive denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t num, std::int64_t den);
    double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Largest m_max for which pmf_exact() is available.
inline constexpr std::int64_t exact_mode_limit = 60;

double pmf(std::int64_t k, const HyperParams& p);
/// Exact probability as a fraction, or nullopt when m_max > exact_mode_limit.
std::optional<Rational> pmf_exact(std::int64_t k, const HyperParams& p);
/// pmf over the full support, index 0 = support_min().
std::vector<double> pmf_table(const HyperParams& p);

double cdf(std::int64_t k, const HyperParams& p);
/// P(X >= k), summed from the upper tail.
double upper_tail(std::int64_t k, const HyperParams& p);

/// Smallest k with CDF(k) >= level, 0 < level < 1.
std::int64_t quantile(double level, const HyperParams& p);

double expected_tp(const HyperParams& p);

/// Null expectation of an adjacency metric. Throws InputError when the
/// metric's denominator vanishes for these margins.
Rational expected_metric_exact(MetricId metric, const HyperParams& p);
double expected_metric(MetricId metric, const HyperParams& p);

/// Monotone transform of quantile(level, p) into metric units.
Rational metric_quantile_exact(MetricId metric, double level, const HyperParams& p);
double metric_quantile(MetricId metric, double level, const HyperParams& p);

/// Maps a true-positive count to the metric value with the margins fixed.
Rational metric_at_tp(MetricId metric, std::int64_t tp, const HyperParams& p);

/// One-sided exact test of skeleton fit: P(X >= tp_obs) under random edge placement.
double skeleton_fit_test(std::int64_t tp_obs, const HyperParams& p);

}  // namespace ncdisco
