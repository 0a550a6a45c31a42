#include "ncdisco/confusion.hpp"

#include "ncdisco/error.hpp"

namespace ncdisco {

std::string_view to_string(MetricId id) {
    switch (id) {
        case MetricId::precision: return "precision";
        case MetricId::recall: return "recall";
        case MetricId::f1: return "f1";
        case MetricId::npv: return "npv";
        case MetricId::specificity: return "specificity";
    }
    return "unknown";
}

MetricId parse_metric_id(std::string_view name) {
    for (const auto id : all_adjacency_metrics)
        if (to_string(id) == name) return id;
    throw InputError("unknown adjacency metric '" + std::string(name) +
                     "' (expected precision, recall, f1, npv or specificity)");
}

namespace {

MetricValue ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) return MetricValue::missing();
    return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricValue metric_from_counts(MetricId metric, const ConfusionCounts& c) {
    if (c.tp < 0 || c.fp < 0 || c.fn < 0 || c.tn < 0)
        throw InputError("confusion counts must be non-negative");
    switch (metric) {
        case MetricId::precision: return ratio(c.tp, c.tp + c.fp);
        case MetricId::recall: return ratio(c.tp, c.tp + c.fn);
        case MetricId::f1: return ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn);
        case MetricId::npv: return ratio(c.tn, c.tn + c.fn);
        case MetricId::specificity: return ratio(c.tn, c.tn + c.fp);
    }
    return MetricValue::missing();
}

}  // namespace ncdisco
