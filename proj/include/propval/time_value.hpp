#pragma once

/// \file time_value.hpp
/// The six functions of one, loan balance fractions, and the identities that
/// tie them together. Rates are per period; callers convert annual rates to
/// monthly ones themselves.

#include <cmath>
#include <stdexcept>
#include <string>

namespace propval {

namespace detail {

inline void require_rate(double r, const char* what)
{
    if (!std::isfinite(r)) {
        throw std::invalid_argument(std::string(what) + ": rate must be finite");
    }
    if (!(r > -1.0)) {
        throw std::invalid_argument(std::string(what) + ": rate must exceed -1");
    }
}

inline void require_periods(int n, const char* what)
{
    if (n < 1) {
        throw std::invalid_argument(std::string(what) + ": horizon must be at least one period");
    }
}

/// (1+r)^n - 1 without cancellation for small r.
inline double growth_minus_one(double r, int n)
{
    return std::expm1(static_cast<double>(n) * std::log1p(r));
}

/// a(n,r) for n >= 0; a(0,r) = 0.
inline double annuity(double r, int n)
{
    if (n == 0) {
        return 0.0;
    }
    if (r == 0.0) {
        return static_cast<double>(n);
    }
    return -std::expm1(-static_cast<double>(n) * std::log1p(r)) / r;
}

/// s(n,r) for n >= 0; s(0,r) = 0.
inline double accumulation(double r, int n)
{
    if (n == 0) {
        return 0.0;
    }
    if (r == 0.0) {
        return static_cast<double>(n);
    }
    return growth_minus_one(r, n) / r;
}

/// Sum_{k=1..n} (1+x)^k, the geometric series with ratio 1+x.
inline double geometric_sum(double x, int n)
{
    if (x == 0.0) {
        return static_cast<double>(n);
    }
    if (x > -1.0) {
        return (1.0 + x) * growth_minus_one(x, n) / x;
    }
    // 1 + x <= 0
    return (1.0 + x) * (std::pow(1.0 + x, n) - 1.0) / x;
}

} // namespace detail

/// (1+r)^n, the amount of one at compound interest.
inline double compound_amount(double r, int n)
{
    detail::require_rate(r, "compound_amount");
    detail::require_periods(n, "compound_amount");
    return std::pow(1.0 + r, n);
}

/// 1/(1+r)^n, the present value reversion of one.
inline double pv_reversion(double r, int n)
{
    detail::require_rate(r, "pv_reversion");
    detail::require_periods(n, "pv_reversion");
    return std::pow(1.0 + r, -n);
}

/// a(n,r): present value of one paid at the end of each of n periods.
inline double annuity_pv(double r, int n)
{
    detail::require_rate(r, "annuity_pv");
    detail::require_periods(n, "annuity_pv");
    return detail::annuity(r, n);
}

/// 1/a(n,r), the level payment that retires a loan of one.
inline double installment_to_amortize(double r, int n)
{
    detail::require_rate(r, "installment_to_amortize");
    detail::require_periods(n, "installment_to_amortize");
    return 1.0 / detail::annuity(r, n);
}

/// s(n,r): future value at n of one deposited at the end of each period.
inline double accumulation(double r, int n)
{
    detail::require_rate(r, "accumulation");
    detail::require_periods(n, "accumulation");
    return detail::accumulation(r, n);
}

/// SFF(n,r) = 1/s(n,r).
inline double sinking_fund_factor(double r, int n)
{
    detail::require_rate(r, "sinking_fund_factor");
    detail::require_periods(n, "sinking_fund_factor");
    return 1.0 / detail::accumulation(r, n);
}

/// bal(k) = a(n-k,i)/a(n,i): the part of a unit loan still owed after k of n
/// level payments. bal(0) = 1 and bal(n) = 0.
inline double balance_fraction(int k, int n, double i)
{
    detail::require_rate(i, "balance_fraction");
    detail::require_periods(n, "balance_fraction");
    if (k < 0 || k > n) {
        throw std::invalid_argument("balance_fraction: payment index must lie in [0, n]");
    }
    if (k == 0) {
        return 1.0;
    }
    return detail::annuity(i, n - k) / detail::annuity(i, n);
}

/// PP(k) = 1 - bal(k).
inline double portion_paid(int k, int n, double i)
{
    return 1.0 - balance_fraction(k, n, i);
}

} // namespace propval
