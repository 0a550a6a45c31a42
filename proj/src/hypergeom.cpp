#include "ncdisco/hypergeom.hpp"

#include "ncdisco/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ncdisco {

namespace {

__extension__ using i128 = __int128;

// Relative slack when comparing a CDF against a quantile level, so that a
// CDF exactly equal to the level is not lost to decimal-to-binary rounding.
constexpr double level_fuzz = 64 * std::numeric_limits<double>::epsilon();

i128 exact_choose(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    i128 c = 1;
    for (std::int64_t i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return c;
}

// log(i!) for i = 0..n, compensated running sum of log(i).
std::vector<double> log_factorials(std::int64_t n) {
    std::vector<double> lf(static_cast<std::size_t>(n) + 1, 0.0);
    double sum = 0.0;
    double carry = 0.0;
    for (std::int64_t i = 2; i <= n; ++i) {
        const double y = std::log(static_cast<double>(i)) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        lf[static_cast<std::size_t>(i)] = sum;
    }
    return lf;
}

double log_choose(const std::vector<double>& lf, std::int64_t n, std::int64_t k) {
    return lf[static_cast<std::size_t>(n)] - lf[static_cast<std::size_t>(k)] -
           lf[static_cast<std::size_t>(n - k)];
}

std::string margins(const HyperParams& p) {
    return "(m_max=" + std::to_string(p.m_max) + ", m_true=" + std::to_string(p.m_true) +
           ", m_est=" + std::to_string(p.m_est) + ")";
}

void check_level(double level) {
    if (!(level > 0.0 && level < 1.0))
        throw InputError("quantile level must lie strictly between 0 and 1, got " +
                         std::to_string(level));
}

// Integer pmf numerators over the support plus the common denominator.
struct ExactTable {
    std::vector<i128> num;
    i128 den;
};

ExactTable exact_table(const HyperParams& p) {
    ExactTable t{{}, exact_choose(p.m_max, p.m_est)};
    for (std::int64_t k = p.support_min(); k <= p.support_max(); ++k)
        t.num.push_back(exact_choose(p.m_true, k) * exact_choose(p.m_max - p.m_true, p.m_est - k));
    return t;
}

}  // namespace

HyperParams HyperParams::for_nodes(int d, std::int64_t m_true, std::int64_t m_est) {
    if (d < 1) throw InputError("node count must be positive");
    HyperParams p{static_cast<std::int64_t>(d) * (d - 1) / 2, m_true, m_est};
    p.validate();
    return p;
}

void HyperParams::validate() const {
    if (m_max < 0 || m_true < 0 || m_est < 0)
        throw InputError("hypergeometric margins must be non-negative " + margins(*this));
    if (m_true > m_max) throw InputError("m_true exceeds m_max " + margins(*this));
    if (m_est > m_max) throw InputError("m_est exceeds m_max " + margins(*this));
}

std::int64_t HyperParams::support_min() const noexcept {
    return std::max<std::int64_t>(0, m_est + m_true - m_max);
}

std::int64_t HyperParams::support_max() const noexcept { return std::min(m_est, m_true); }

Rational Rational::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw InputError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return g > 1 ? Rational{num / g, den / g} : Rational{num, den};
}

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

namespace {

Rational make_rational_wide(i128 num, i128 den) {
    if (den == 0) throw InputError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 b = den;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    constexpr auto lim = static_cast<i128>(std::numeric_limits<std::int64_t>::max());
    if (num > lim || -num > lim || den > lim)
        throw NumericalError("rational result does not fit in 64 bits");
    return Rational{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

}  // namespace

std::optional<Rational> pmf_exact(std::int64_t k, const HyperParams& p) {
    p.validate();
    if (p.m_max > exact_mode_limit) return std::nullopt;
    if (k < p.support_min() || k > p.support_max()) return Rational{0, 1};
    return make_rational_wide(exact_choose(p.m_true, k) * exact_choose(p.m_max - p.m_true, p.m_est - k),
                              exact_choose(p.m_max, p.m_est));
}

double pmf(std::int64_t k, const HyperParams& p) {
    p.validate();
    if (k < p.support_min() || k > p.support_max()) return 0.0;
    if (p.m_max <= exact_mode_limit) {
        const auto num = exact_choose(p.m_true, k) * exact_choose(p.m_max - p.m_true, p.m_est - k);
        return static_cast<double>(static_cast<long double>(num) /
                                   static_cast<long double>(exact_choose(p.m_max, p.m_est)));
    }
    const auto lf = log_factorials(p.m_max);
    return std::exp(log_choose(lf, p.m_true, k) + log_choose(lf, p.m_max - p.m_true, p.m_est - k) -
                    log_choose(lf, p.m_max, p.m_est));
}

std::vector<double> pmf_table(const HyperParams& p) {
    p.validate();
    std::vector<double> out;
    if (p.m_max <= exact_mode_limit) {
        const auto t = exact_table(p);
        for (const auto n : t.num)
            out.push_back(static_cast<double>(static_cast<long double>(n) /
                                              static_cast<long double>(t.den)));
        return out;
    }
    const auto lf = log_factorials(p.m_max);
    const double log_den = log_choose(lf, p.m_max, p.m_est);
    for (std::int64_t k = p.support_min(); k <= p.support_max(); ++k)
        out.push_back(std::exp(log_choose(lf, p.m_true, k) +
                               log_choose(lf, p.m_max - p.m_true, p.m_est - k) - log_den));
    return out;
}

double cdf(std::int64_t k, const HyperParams& p) {
    p.validate();
    if (k < p.support_min()) return 0.0;
    if (k >= p.support_max()) return 1.0;
    if (p.m_max <= exact_mode_limit) {
        const auto t = exact_table(p);
        i128 acc = 0;
        for (std::int64_t x = p.support_min(); x <= k; ++x)
            acc += t.num[static_cast<std::size_t>(x - p.support_min())];
        return static_cast<double>(static_cast<long double>(acc) / static_cast<long double>(t.den));
    }
    const auto table = pmf_table(p);
    double acc = 0.0;
    for (std::int64_t x = p.support_min(); x <= k; ++x)
        acc += table[static_cast<std::size_t>(x - p.support_min())];
    return std::min(acc, 1.0);
}

double upper_tail(std::int64_t k, const HyperParams& p) {
    p.validate();
    if (k <= p.support_min()) return 1.0;
    if (k > p.support_max()) return 0.0;
    if (p.m_max <= exact_mode_limit) {
        const auto t = exact_table(p);
        i128 acc = 0;
        for (std::int64_t x = k; x <= p.support_max(); ++x)
            acc += t.num[static_cast<std::size_t>(x - p.support_min())];
        return static_cast<double>(static_cast<long double>(acc) / static_cast<long double>(t.den));
    }
    const auto table = pmf_table(p);
    double acc = 0.0;
    for (std::int64_t x = p.support_max(); x >= k; --x)
        acc += table[static_cast<std::size_t>(x - p.support_min())];
    return std::min(acc, 1.0);
}

std::int64_t quantile(double level, const HyperParams& p) {
    check_level(level);
    p.validate();
    const double target = level * (1.0 - level_fuzz);
    if (p.m_max <= exact_mode_limit) {
        const auto t = exact_table(p);
        i128 acc = 0;
        for (std::int64_t k = p.support_min(); k <= p.support_max(); ++k) {
            acc += t.num[static_cast<std::size_t>(k - p.support_min())];
            if (static_cast<long double>(acc) >= static_cast<long double>(target) * static_cast<long double>(t.den))
                return k;
        }
        return p.support_max();
    }
    const auto table = pmf_table(p);
    double acc = 0.0;
    for (std::int64_t k = p.support_min(); k <= p.support_max(); ++k) {
        acc += table[static_cast<std::size_t>(k - p.support_min())];
        if (acc >= target) return k;
    }
    return p.support_max();
}

double expected_tp(const HyperParams& p) {
    p.validate();
    if (p.m_max == 0) throw InputError("expected_tp undefined for m_max = 0");
    return static_cast<double>(p.m_est) * static_cast<double>(p.m_true) / static_cast<double>(p.m_max);
}

namespace {

// Denominator of the metric once TP is the only free cell.
std::int64_t metric_denominator(MetricId metric, const HyperParams& p) {
    switch (metric) {
        case MetricId::precision: return p.m_est;
        case MetricId::recall: return p.m_true;
        case MetricId::f1: return p.m_est + p.m_true;
        case MetricId::npv: return p.m_max - p.m_est;
        case MetricId::specificity: return p.m_max - p.m_true;
    }
    return 0;
}

void require_defined(MetricId metric, const HyperParams& p) {
    p.validate();
    if (metric_denominator(metric, p) > 0) return;
    std::string why;
    switch (metric) {
        case MetricId::precision: why = "m_est = 0 (empty estimate)"; break;
        case MetricId::recall: why = "m_true = 0 (empty truth)"; break;
        case MetricId::f1: why = "m_est + m_true = 0"; break;
        case MetricId::npv: why = "m_est = m_max (no estimated non-adjacencies)"; break;
        case MetricId::specificity: why = "m_true = m_max (no true non-adjacencies)"; break;
    }
    throw InputError(std::string(to_string(metric)) + " undefined: " + why + " " + margins(p));
}

}  // namespace

Rational metric_at_tp(MetricId metric, std::int64_t tp, const HyperParams& p) {
    require_defined(metric, p);
    const std::int64_t den = metric_denominator(metric, p);
    switch (metric) {
        case MetricId::precision:
        case MetricId::recall: return Rational::make(tp, den);
        case MetricId::f1: return Rational::make(2 * tp, den);
        case MetricId::npv:
        case MetricId::specificity: return Rational::make(p.m_max - p.m_est - p.m_true + tp, den);
    }
    return {};
}

Rational expected_metric_exact(MetricId metric, const HyperParams& p) {
    require_defined(metric, p);
    const i128 m_max = p.m_max;
    const i128 m_true = p.m_true;
    const i128 m_est = p.m_est;
    switch (metric) {
        case MetricId::precision: return make_rational_wide(m_true, m_max);
        case MetricId::recall: return make_rational_wide(m_est, m_max);
        case MetricId::f1:
            return make_rational_wide(2 * m_est * m_true, m_max * m_est + m_max * m_true);
        case MetricId::npv: return make_rational_wide(m_max - m_true, m_max);
        case MetricId::specificity: return make_rational_wide(m_max - m_est, m_max);
    }
    return {};
}

double expected_metric(MetricId metric, const HyperParams& p) {
    return expected_metric_exact(metric, p).to_double();
}

Rational metric_quantile_exact(MetricId metric, double level, const HyperParams& p) {
    require_defined(metric, p);
    return metric_at_tp(metric, quantile(level, p), p);
}

double metric_quantile(MetricId metric, double level, const HyperParams& p) {
    return metric_quantile_exact(metric, level, p).to_double();
}

double skeleton_fit_test(std::int64_t tp_obs, const HyperParams& p) {
    p.validate();
    if (p.m_est == 0)
        throw InputError("skeleton fit test undefined for an empty estimate (m_est = 0)");
    if (tp_obs < p.support_min() || tp_obs > p.support_max())
        throw InputError("tp_obs = " + std::to_string(tp_obs) + " inconsistent with margins " +
                         margins(p) + "; feasible range [" + std::to_string(p.support_min()) +
                         ", " + std::to_string(p.support_max()) + "]");
    return upper_tail(tp_obs, p);
}

}  // namespace ncdisco
