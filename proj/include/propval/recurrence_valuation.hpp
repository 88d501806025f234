#pragma once

/// \file recurrence_valuation.hpp
/// Present values of income streams generated by the first-order linear
/// recurrence y_0 = c, y_k = m*y_{k-1} + b, together with the named streams
/// that are special cases of it: straight-line and constant-ratio changing
/// annuities, the Ellwood J premise stream, and the Hoskold declining stream.

#include "propval/time_value.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace propval {

struct RecurrenceSpec {
    double m = 1.0; ///< multiplier
    double b = 0.0; ///< additive constant
    double c = 0.0; ///< seed y_0
};

/// Stream d, d - y_1*h, ..., d - y_{n-1}*h.
struct OffsetStreamSpec {
    double d = 0.0;
    double h = 0.0;
    RecurrenceSpec recurrence;
};

/// Which closed form value_recurrence_stream used.
enum class RecurrenceCase {
    general,           ///< m != 1, m != 1+i
    ratio_equals_rate, ///< m == 1+i != 1
    unit_ratio,        ///< m == 1, i != 0
    unit_ratio_zero_rate ///< m == 1, i == 0
};

inline constexpr double case_dispatch_tolerance = 1e-12;

namespace detail {

inline void require_finite(const RecurrenceSpec& s, const char* what)
{
    if (!std::isfinite(s.m) || !std::isfinite(s.b) || !std::isfinite(s.c)) {
        throw std::invalid_argument(std::string(what) + ": recurrence coefficients must be finite");
    }
}

} // namespace detail

inline RecurrenceCase classify_recurrence(const RecurrenceSpec& spec, double i)
{
    if (std::abs(spec.m - 1.0) < case_dispatch_tolerance) {
        return std::abs(i) < case_dispatch_tolerance ? RecurrenceCase::unit_ratio_zero_rate
                                                     : RecurrenceCase::unit_ratio;
    }
    if (std::abs(spec.m - (1.0 + i)) < case_dispatch_tolerance) {
        return RecurrenceCase::ratio_equals_rate;
    }
    return RecurrenceCase::general;
}

/// y_1..y_n by iterating the recurrence.
inline std::vector<double> recurrence_terms(const RecurrenceSpec& spec, int n)
{
    detail::require_finite(spec, "recurrence_terms");
    detail::require_periods(n, "recurrence_terms");
    std::vector<double> y;
    y.reserve(static_cast<std::size_t>(n));
    double prev = spec.c;
    for (int k = 1; k <= n; ++k) {
        prev = spec.m * prev + spec.b;
        y.push_back(prev);
    }
    return y;
}

/// y_k from the general solution m^k c + b(m^k - 1)/(m - 1), or c + kb when m = 1.
inline double recurrence_term(const RecurrenceSpec& spec, int k)
{
    detail::require_finite(spec, "recurrence_term");
    if (k < 0) {
        throw std::invalid_argument("recurrence_term: index must be non-negative");
    }
    if (std::abs(spec.m - 1.0) < case_dispatch_tolerance) {
        return spec.c + static_cast<double>(k) * spec.b;
    }
    const double mk = std::pow(spec.m, k);
    return mk * spec.c + spec.b * (mk - 1.0) / (spec.m - 1.0);
}

/// V_n = sum_{k=1..n} y_k/(1+i)^k by the closed form of the applicable case.
inline double value_recurrence_stream(const RecurrenceSpec& spec, double i, int n)
{
    detail::require_finite(spec, "value_recurrence_stream");
    detail::require_rate(i, "value_recurrence_stream");
    detail::require_periods(n, "value_recurrence_stream");

    const double nn = static_cast<double>(n);
    const double an = detail::annuity(i, n);
    const auto& [m, b, c] = spec;

    switch (classify_recurrence(spec, i)) {
    case RecurrenceCase::general: {
        // sum_{k=1..n} (m/(1+i))^k, written as a geometric series in 1 + x.
        const double x = (m - 1.0 - i) / (1.0 + i);
        const double ratio_sum = detail::geometric_sum(x, n);
        const double shift = b / (m - 1.0);
        return (shift + c) * ratio_sum - shift * an;
    }
    case RecurrenceCase::ratio_equals_rate:
        return nn * c + b * (nn - an) / i;
    case RecurrenceCase::unit_ratio:
        return (c + (nn + 1.0) * b) * an - b * (nn - an) / i;
    case RecurrenceCase::unit_ratio_zero_rate:
        return nn * c + b * nn * (nn + 1.0) / 2.0;
    }
    return 0.0; // unreachable
}

/// V* = [d + bh/m] a_n - h V_n/m + hc/(1+i).
inline double value_offset_stream(const OffsetStreamSpec& spec, double i, int n)
{
    const auto& rec = spec.recurrence;
    detail::require_finite(rec, "value_offset_stream");
    if (!std::isfinite(spec.d) || !std::isfinite(spec.h)) {
        throw std::invalid_argument("value_offset_stream: d and h must be finite");
    }
    if (rec.m == 0.0) {
        throw std::invalid_argument("value_offset_stream: multiplier m must be nonzero");
    }
    const double vn = value_recurrence_stream(rec, i, n);
    const double an = detail::annuity(i, n);
    return (spec.d + rec.b * spec.h / rec.m) * an - spec.h * vn / rec.m + spec.h * rec.c / (1.0 + i);
}

/// Value of d, d-h, ..., d-(n-1)h. A negative h gives a rising stream.
inline double straight_line_annuity_value(double d, double h, double i, int n)
{
    detail::require_rate(i, "straight_line_annuity_value");
    detail::require_periods(n, "straight_line_annuity_value");
    const double nn = static_cast<double>(n);
    if (std::abs(i) < case_dispatch_tolerance) {
        return nn * d - h * nn * (nn - 1.0) / 2.0;
    }
    const double an = detail::annuity(i, n);
    return (d - nn * h) * an + h * (nn - an) / i;
}

/// Value of 1, (1+g), ..., (1+g)^{n-1} discounted at i.
inline double constant_ratio_annuity_value(double g, double i, int n)
{
    detail::require_rate(g, "constant_ratio_annuity_value");
    detail::require_rate(i, "constant_ratio_annuity_value");
    detail::require_periods(n, "constant_ratio_annuity_value");
    if (std::abs(g - i) < case_dispatch_tolerance) {
        return static_cast<double>(n) / (1.0 + i);
    }
    // [1 - q^n]/(i - g) with q = (1+g)/(1+i); q^n - 1 taken through expm1.
    const double x = (g - i) / (1.0 + i);
    return detail::growth_minus_one(x, n) / (g - i);
}

/// sum_{k=1..n} a(k,i) = sum_{k=1..n} s(k,i)/(1+i)^k = (n - a_n)/i.
inline double accumulation_stream_value(double i, int n)
{
    detail::require_rate(i, "accumulation_stream_value");
    detail::require_periods(n, "accumulation_stream_value");
    if (i == 0.0) {
        throw std::domain_error("accumulation_stream_value: rate must be nonzero; use n(n+1)/2 at i = 0");
    }
    return (static_cast<double>(n) - detail::annuity(i, n)) / i;
}

/// Ellwood J = (1/s_n)(n/(1 - (1+i)^{-n}) - 1/i).
inline double ellwood_j_factor(double i, int n)
{
    detail::require_rate(i, "ellwood_j_factor");
    detail::require_periods(n, "ellwood_j_factor");
    if (i == 0.0) {
        throw std::domain_error("ellwood_j_factor: rate must be nonzero");
    }
    const double sn = detail::accumulation(i, n);
    const double one_minus_v_n = -std::expm1(-static_cast<double>(n) * std::log1p(i));
    return (static_cast<double>(n) / one_minus_v_n - 1.0 / i) / sn;
}

/// Value of the J premise stream I + s_k*h with h = delta*I/s_n, k = 1..n.
inline double j_premise_stream_value(double income, double delta, double i, int n)
{
    const double sn = accumulation(i, n);
    return income * (detail::annuity(i, n) + delta / sn * accumulation_stream_value(i, n));
}

/// Hoskold value I/(i + SFF(n, i_s)).
inline double hoskold_stream_value(double income, double i, double safe_rate, int n)
{
    detail::require_rate(i, "hoskold_stream_value");
    detail::require_periods(n, "hoskold_stream_value");
    if (!(safe_rate >= 0.0) || !std::isfinite(safe_rate)) {
        throw std::invalid_argument("hoskold_stream_value: safe rate must be finite and non-negative");
    }
    const double denom = i + 1.0 / detail::accumulation(safe_rate, n);
    if (denom == 0.0) {
        throw std::domain_error("hoskold_stream_value: i + SFF(n, i_s) is zero");
    }
    return income / denom;
}

/// The declining incomes I_k = I - (i - i_s) SFF(n,i_s) V* s(k-1, i_s) whose
/// value at rate i is hoskold_stream_value().
inline std::vector<double> hoskold_income_stream(double income, double i, double safe_rate, int n)
{
    const double value = hoskold_stream_value(income, i, safe_rate, n);
    const double loss = (i - safe_rate) * value / detail::accumulation(safe_rate, n);
    std::vector<double> incomes;
    incomes.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        incomes.push_back(income - loss * detail::accumulation(safe_rate, k - 1));
    }
    return incomes;
}

/// The Hoskold stream expressed as an offset stream with m = 1 + i_s, b = 1, c = 0.
inline OffsetStreamSpec hoskold_offset_spec(double income, double i, double safe_rate, int n)
{
    const double value = hoskold_stream_value(income, i, safe_rate, n);
    return OffsetStreamSpec{
        income, (i - safe_rate) * value / detail::accumulation(safe_rate, n), RecurrenceSpec{1.0 + safe_rate, 1.0, 0.0}};
}

} // namespace propval
