#pragma once

/// \file capitalization.hpp
/// Direct capitalization rates: I = RV, appreciation-adjusted rates, band of
/// investment, the Ellwood and Akerson mortgage-equity rates (level income and
/// J premise income), and the Ring/Hoskold/annuity capital recovery rates.

#include "propval/recurrence_valuation.hpp"
#include "propval/time_value.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace propval {

/// Mortgage financing of a property held for holding_years.
struct MortgageTerms {
    double loan_to_value = 0.0;  ///< M
    double annual_rate = 0.0;    ///< nominal annual rate, paid monthly at annual_rate/12
    int amortization_months = 12;
    int holding_years = 1;       ///< H
};

struct AppreciationSpec {
    double delta0 = 0.0;       ///< relative change in asset value over the holding period
    double delta_income = 0.0; ///< relative change in income (J premise)
};

/// Ellwood rate with the intermediate quantities used to build it.
struct EllwoodBreakdown {
    double rate = 0.0;             ///< R, Ellwood grouping
    double akerson_rate = 0.0;     ///< R, Akerson grouping
    double c_factor = 0.0;         ///< C = Y + P*SFF(H,Y) - R_m
    double mortgage_constant = 0.0;///< R_m
    double portion_paid = 0.0;     ///< P = 1 - bal(12H)
    double sinking_fund = 0.0;     ///< SFF(H,Y)
};

struct EllwoodJBreakdown {
    EllwoodBreakdown level;  ///< the constant-income rate (numerator)
    double j_factor = 0.0;   ///< J(Y, H)
    double rate = 0.0;       ///< R = level.rate / (1 + delta*J)
};

enum class Table3Method { ring, hoskold, annuity };

namespace detail {

inline void require_fraction(double m, const char* what)
{
    if (!(m >= 0.0 && m <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": loan-to-value must lie in [0, 1]");
    }
}

inline void require_terms(const MortgageTerms& t, const char* what)
{
    require_fraction(t.loan_to_value, what);
    require_rate(t.annual_rate / 12.0, what);
    require_periods(t.amortization_months, what);
    require_periods(t.holding_years, what);
    if (12 * t.holding_years > t.amortization_months) {
        throw std::invalid_argument(std::string(what) + ": holding period exceeds the amortization term");
    }
}

} // namespace detail

/// PV = I/i for a level perpetual income.
inline double perpetuity_value(double income, double i)
{
    if (!(i > 0.0) || !std::isfinite(i)) {
        throw std::domain_error("perpetuity_value: rate must be positive");
    }
    return income / i;
}

/// V = I/R.
inline double capitalize(double income, double cap_rate)
{
    if (cap_rate == 0.0) {
        throw std::domain_error("capitalize: cap rate is zero");
    }
    return income / cap_rate;
}

/// R = I/V.
inline double rate_from(double value, double income)
{
    if (value == 0.0) {
        throw std::domain_error("rate_from: value is zero");
    }
    return income / value;
}

/// R* = i - delta0 * SFF(n,i).
inline double adjusted_cap_rate(double i, int n, double delta0)
{
    if (!(delta0 >= -1.0)) {
        throw std::invalid_argument("adjusted_cap_rate: delta0 must be at least -1");
    }
    return i - delta0 * sinking_fund_factor(i, n);
}

/// R = M i + (1 - M) Y.
inline double band_of_investment(double loan_to_value, double i, double equity_yield)
{
    detail::require_fraction(loan_to_value, "band_of_investment");
    return loan_to_value * i + (1.0 - loan_to_value) * equity_yield;
}

/// R = M R_m + (1 - M) Y.
inline double band_with_mortgage_constant(double loan_to_value, double mortgage_const, double equity_yield)
{
    detail::require_fraction(loan_to_value, "band_with_mortgage_constant");
    return loan_to_value * mortgage_const + (1.0 - loan_to_value) * equity_yield;
}

/// Annual debt service per unit of loan: 12 times the monthly installment.
inline double mortgage_constant(double annual_rate, int amortization_months)
{
    return 12.0 * installment_to_amortize(annual_rate / 12.0, amortization_months);
}

inline EllwoodBreakdown ellwood_cap_rate(const MortgageTerms& mtg, double equity_yield, const AppreciationSpec& app)
{
    detail::require_terms(mtg, "ellwood_cap_rate");
    detail::require_rate(equity_yield, "ellwood_cap_rate");
    if (!(app.delta0 >= -1.0)) {
        throw std::invalid_argument("ellwood_cap_rate: delta0 must be at least -1");
    }

    const double m = mtg.loan_to_value;
    const double y = equity_yield;
    EllwoodBreakdown out;
    out.mortgage_constant = mortgage_constant(mtg.annual_rate, mtg.amortization_months);
    out.portion_paid = portion_paid(12 * mtg.holding_years, mtg.amortization_months, mtg.annual_rate / 12.0);
    out.sinking_fund = sinking_fund_factor(y, mtg.holding_years);
    out.c_factor = y + out.portion_paid * out.sinking_fund - out.mortgage_constant;
    out.rate = y - m * out.c_factor - app.delta0 * out.sinking_fund;
    out.akerson_rate = m * out.mortgage_constant + (1.0 - m) * y - m * out.portion_paid * out.sinking_fund -
                       app.delta0 * out.sinking_fund;
    return out;
}

/// Ellwood rate when income follows the J premise: R = (Y - MC - delta0 SFF)/(1 + delta J).
inline EllwoodJBreakdown ellwood_j_cap_rate(const MortgageTerms& mtg, double equity_yield, const AppreciationSpec& app)
{
    if (equity_yield == 0.0) {
        throw std::domain_error("ellwood_j_cap_rate: equity yield must be nonzero");
    }
    EllwoodJBreakdown out;
    out.level = ellwood_cap_rate(mtg, equity_yield, app);
    out.j_factor = ellwood_j_factor(equity_yield, mtg.holding_years);
    const double denom = 1.0 + app.delta_income * out.j_factor;
    if (denom == 0.0) {
        throw std::domain_error("ellwood_j_cap_rate: 1 + delta*J is zero");
    }
    out.rate = out.level.rate / denom;
    return out;
}

/// Capital recovery cap rates: ring i + 1/n, hoskold i + SFF(n,i_s), annuity 1/a(n,i).
inline double table3_cap_rate(Table3Method method, double i, std::optional<double> safe_rate, int n)
{
    switch (method) {
    case Table3Method::ring:
        return i + sinking_fund_factor(0.0, n);
    case Table3Method::hoskold:
        if (!safe_rate) {
            throw std::invalid_argument("table3_cap_rate: hoskold method requires a safe rate");
        }
        if (!(*safe_rate >= 0.0)) {
            throw std::invalid_argument("table3_cap_rate: safe rate must be non-negative");
        }
        return i + sinking_fund_factor(*safe_rate, n);
    case Table3Method::annuity:
        return installment_to_amortize(i, n);
    }
    return 0.0; // unreachable
}

inline std::optional<Table3Method> parse_table3_method(std::string_view name)
{
    if (name == "ring" || name == "straight-line") {
        return Table3Method::ring;
    }
    if (name == "hoskold") {
        return Table3Method::hoskold;
    }
    if (name == "annuity") {
        return Table3Method::annuity;
    }
    return std::nullopt;
}

} // namespace propval
