#pragma once

/// \file amortization.hpp
/// Amortization schedules: level payment, arbitrary principal reductions, and
/// capital recovery through a sinking fund at a rate r that may differ from
/// the discount rate. Every schedule satisfies
///
///     sum_k I_k/(1+i)^k = sum_k P_k
///
/// whatever the principal reductions P_k are; verify_main_theorem() measures it.

#include "propval/time_value.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace propval {

struct AmortizationRow {
    int period = 0;
    double payment = 0.0;
    double interest = 0.0;
    double principal_reduction = 0.0;
    double ending_balance = 0.0;
};

struct AmortizationSchedule {
    double principal = 0.0;
    double rate = 0.0;
    std::vector<AmortizationRow> rows;

    [[nodiscard]] std::size_t size() const noexcept { return rows.size(); }

    /// Periods whose principal reduction is negative, i.e. the balance grew.
    [[nodiscard]] std::vector<int> balance_increase_periods() const
    {
        std::vector<int> out;
        for (const auto& row : rows) {
            if (row.principal_reduction < 0.0) {
                out.push_back(row.period);
            }
        }
        return out;
    }
};

/// Level payments PMT = PV/a(n,i) with Bal(k) = (1+i)Bal(k-1) - PMT.
inline AmortizationSchedule level_schedule(double pv, double i, int n)
{
    detail::require_rate(i, "level_schedule");
    detail::require_periods(n, "level_schedule");
    if (!(pv > 0.0) || !std::isfinite(pv)) {
        throw std::invalid_argument("level_schedule: principal must be positive");
    }

    const double pmt = pv / detail::annuity(i, n);
    AmortizationSchedule out{pv, i, {}};
    out.rows.reserve(static_cast<std::size_t>(n));
    double balance = pv;
    for (int k = 1; k <= n; ++k) {
        AmortizationRow row;
        row.period = k;
        row.interest = i * balance;
        if (k < n) {
            row.payment = pmt;
            row.principal_reduction = pmt - row.interest;
            row.ending_balance = balance - row.principal_reduction;
        } else {
            // The last payment retires whatever is left.
            row.principal_reduction = balance;
            row.payment = row.interest + row.principal_reduction;
            row.ending_balance = 0.0;
        }
        balance = row.ending_balance;
        out.rows.push_back(row);
    }
    return out;
}

/// Schedule with given principal reductions P_1..P_n. V = sum P_k and
/// I_k = P_k + i(P_k + ... + P_n). Negative reductions are allowed.
inline AmortizationSchedule generalized_schedule(std::span<const double> principal_reductions, double i)
{
    detail::require_rate(i, "generalized_schedule");
    if (principal_reductions.empty()) {
        throw std::invalid_argument("generalized_schedule: principal reductions must not be empty");
    }
    for (double p : principal_reductions) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument("generalized_schedule: principal reductions must be finite");
        }
    }

    const std::size_t n = principal_reductions.size();
    // outstanding[k] = P_{k+1} + ... + P_n, the balance before period k+1.
    std::vector<double> outstanding(n + 1, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        outstanding[k] = outstanding[k + 1] + principal_reductions[k];
    }

    AmortizationSchedule out{outstanding[0], i, {}};
    out.rows.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        AmortizationRow row;
        row.period = static_cast<int>(k + 1);
        row.principal_reduction = principal_reductions[k];
        row.interest = i * outstanding[k];
        row.payment = row.interest + row.principal_reduction;
        row.ending_balance = outstanding[k + 1];
        out.rows.push_back(row);
    }
    return out;
}

/// |sum_k I_k/(1+i)^k - sum_k P_k| for the schedule's own rate.
inline double verify_main_theorem(const AmortizationSchedule& schedule)
{
    const double v = 1.0 / (1.0 + schedule.rate);
    double discount = 1.0;
    double pv_income = 0.0;
    double total_principal = 0.0;
    for (const auto& row : schedule.rows) {
        discount *= v;
        pv_income += row.payment * discount;
        total_principal += row.principal_reduction;
    }
    return std::abs(pv_income - total_principal);
}

/// Capital V recovered by sinking fund deposits SFF(n,r)V earning r; the
/// recovery in period k is SFF(n,r) V (1+r)^{k-1}. First income is
/// V(i + SFF(n,r)). With r = i this is the level schedule.
inline AmortizationSchedule sinking_fund_schedule(double value, double i, double r, int n)
{
    detail::require_rate(i, "sinking_fund_schedule");
    detail::require_periods(n, "sinking_fund_schedule");
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument("sinking_fund_schedule: value must be positive");
    }
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("sinking_fund_schedule: sinking fund rate must be non-negative");
    }

    const double deposit = value / detail::accumulation(r, n);
    AmortizationSchedule out{value, i, {}};
    out.rows.reserve(static_cast<std::size_t>(n));
    double balance = value;
    double recovery = deposit;
    for (int k = 1; k <= n; ++k) {
        AmortizationRow row;
        row.period = k;
        row.interest = i * balance;
        row.principal_reduction = k < n ? recovery : balance;
        row.payment = row.interest + row.principal_reduction;
        row.ending_balance = k < n ? balance - row.principal_reduction : 0.0;
        balance = row.ending_balance;
        recovery *= 1.0 + r;
        out.rows.push_back(row);
    }
    return out;
}

} // namespace propval
