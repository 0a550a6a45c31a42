#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ncdisco {

struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t fn = 0;
    std::int64_t tn = 0;

    std::int64_t total() const noexcept { return tp + fp + fn + tn; }

    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// A metric result that may be undefined (zero denominator).
class MetricValue {
public:
    MetricValue() = default;
    MetricValue(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

    static MetricValue missing() { return MetricValue(); }

    bool is_missing() const noexcept { return !value_.has_value(); }
    explicit operator bool() const noexcept { return value_.has_value(); }
    double value() const { return value_.value(); }
    double value_or(double fallback) const noexcept { return value_.value_or(fallback); }

    friend bool operator==(const MetricValue&, const MetricValue&) = default;

private:
    std::optional<double> value_;
};

/// The five adjacency metrics with closed-form null expectations.
enum class MetricId { precision, recall, f1, npv, specificity };

inline constexpr MetricId all_adjacency_metrics[] = {MetricId::precision, MetricId::recall,
                                                     MetricId::f1, MetricId::npv,
                                                     MetricId::specificity};

std::string_view to_string(MetricId id);
/// Accepts the names printed by to_string(); throws InputError otherwise.
MetricId parse_metric_id(std::string_view name);

MetricValue metric_from_counts(MetricId metric, const ConfusionCounts& c);

}  // namespace ncdisco
