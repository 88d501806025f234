#pragma once

/// \file project_analysis.hpp
/// NPV and IRR analysis of cashflow projects. IRRs are located by a sign
/// change scan over a rate interval followed by bisection, so every
/// transversal root in the interval is reported. Roots where NPV touches zero
/// without changing sign are only found if a scan point lands on them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace propval {

/// Cashflows C_0..C_n, C_t paid at the end of period t.
class Project {
public:
    Project(std::string name, std::vector<double> cashflows)
        : name_(std::move(name)), cashflows_(std::move(cashflows))
    {
        if (cashflows_.size() < 2) {
            throw std::invalid_argument("Project: at least two cashflows are required");
        }
        bool any_nonzero = false;
        for (double c : cashflows_) {
            if (!std::isfinite(c)) {
                throw std::invalid_argument("Project: cashflows must be finite");
            }
            any_nonzero = any_nonzero || c != 0.0;
        }
        if (!any_nonzero) {
            throw std::invalid_argument("Project: at least one cashflow must be nonzero");
        }
    }

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] const std::vector<double>& cashflows() const noexcept { return cashflows_; }
    [[nodiscard]] std::size_t horizon() const noexcept { return cashflows_.size() - 1; }

    [[nodiscard]] double gross_magnitude() const noexcept
    {
        double s = 0.0;
        for (double c : cashflows_) {
            s += std::abs(c);
        }
        return s;
    }

    friend bool operator==(const Project&, const Project&) = default;

private:
    std::string name_;
    std::vector<double> cashflows_;
};

struct RateInterval {
    double lo = -0.999;
    double hi = 10.0;
};

enum class IrrClass { unique, multiple, none };
enum class SlopeClass { decreasing, not_guaranteed };
enum class Profitability { profitable, unprofitable, inapplicable };

struct IrrResult {
    std::vector<double> roots; ///< strictly increasing
    IrrClass classification = IrrClass::none;
    RateInterval search_bounds;
};

struct ComparisonReport {
    std::optional<Project> difference_project; ///< later-paying project first; absent when degenerate
    std::optional<double> cutoff_rate;
    std::string preferred_below;
    std::string preferred_above;
    bool orientation_valid = false;
    bool degenerate = false;
};

inline constexpr double irr_scan_step = 1e-3;
inline constexpr double irr_rate_tolerance = 1e-9;

/// NPV(r) = sum_t C_t/(1+r)^t.
inline double npv(const Project& project, double r)
{
    if (!(r > -1.0)) {
        throw std::invalid_argument("npv: rate must exceed -1");
    }
    // Horner in v = 1/(1+r).
    const double v = 1.0 / (1.0 + r);
    const auto& c = project.cashflows();
    double acc = 0.0;
    for (std::size_t t = c.size(); t-- > 0;) {
        acc = acc * v + c[t];
    }
    return acc;
}

namespace detail {

inline double bisect_root(const Project& p, double lo, double f_lo, double hi)
{
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double f_mid = npv(p, mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return std::abs(npv(p, lo)) <= std::abs(npv(p, hi)) ? lo : hi;
}

} // namespace detail

/// Every IRR in bounds that the NPV curve crosses, in increasing order.
inline IrrResult irr_all(const Project& project, RateInterval bounds = {})
{
    if (!(bounds.lo > -1.0) || !(bounds.hi > bounds.lo) || !std::isfinite(bounds.hi)) {
        throw std::invalid_argument("irr_all: bounds must satisfy -1 < lo < hi");
    }
    IrrResult out;
    out.search_bounds = bounds;

    const auto steps = static_cast<long>(std::ceil((bounds.hi - bounds.lo) / irr_scan_step));
    std::optional<std::pair<double, double>> last; // last scan point with finite nonzero NPV
    bool zero_since_last = false;

    for (long j = 0; j <= steps; ++j) {
        const double r = j == steps ? bounds.hi : bounds.lo + static_cast<double>(j) * irr_scan_step;
        const double f = npv(project, r);
        if (!std::isfinite(f)) {
            continue;
        }
        if (f == 0.0) {
            if (!zero_since_last) {
                out.roots.push_back(r);
            }
            zero_since_last = true;
            continue;
        }
        if (last && !zero_since_last && ((last->second < 0.0) != (f < 0.0))) {
            out.roots.push_back(detail::bisect_root(project, last->first, last->second, r));
        }
        last = {r, f};
        zero_since_last = false;
    }

    out.classification = out.roots.empty()       ? IrrClass::none
                         : out.roots.size() == 1 ? IrrClass::unique
                                                 : IrrClass::multiple;
    return out;
}

/// All cashflows sign-flipped; same IRRs, opposite NPVs.
inline Project negate(const Project& project)
{
    std::vector<double> flipped;
    flipped.reserve(project.cashflows().size());
    for (double c : project.cashflows()) {
        flipped.push_back(c == 0.0 ? 0.0 : -c);
    }
    std::string name = project.name();
    name = name.starts_with('-') ? name.substr(1) : "-" + name;
    return Project(std::move(name), std::move(flipped));
}

/// decreasing iff the nonzero cashflows are negatives followed by positives.
inline SlopeClass npv_slope_class(const Project& project)
{
    int sign_changes = 0;
    int first_sign = 0;
    int prev_sign = 0;
    for (double c : project.cashflows()) {
        if (c == 0.0) {
            continue;
        }
        const int s = c < 0.0 ? -1 : 1;
        if (prev_sign == 0) {
            first_sign = s;
        } else if (s != prev_sign) {
            ++sign_changes;
        }
        prev_sign = s;
    }
    return first_sign < 0 && sign_changes == 1 ? SlopeClass::decreasing : SlopeClass::not_guaranteed;
}

/// The r < IRR rule, applied only where NPV is known to fall with the rate and
/// the IRR is unique. A rate within the root tolerance of the IRR has NPV = 0,
/// which is not profitable.
inline Profitability profitability_test(const Project& project, double r, RateInterval bounds = {})
{
    if (npv_slope_class(project) != SlopeClass::decreasing) {
        return Profitability::inapplicable;
    }
    const auto irr = irr_all(project, bounds);
    if (irr.classification != IrrClass::unique) {
        return Profitability::inapplicable;
    }
    return r < irr.roots.front() - irr_rate_tolerance ? Profitability::profitable : Profitability::unprofitable;
}

/// C_t(a) - C_t(b), the shorter project zero-padded.
inline std::vector<double> cashflow_difference(const Project& a, const Project& b)
{
    const auto& ca = a.cashflows();
    const auto& cb = b.cashflows();
    std::vector<double> diff(std::max(ca.size(), cb.size()), 0.0);
    for (std::size_t t = 0; t < diff.size(); ++t) {
        const double x = t < ca.size() ? ca[t] : 0.0;
        const double y = t < cb.size() ? cb[t] : 0.0;
        diff[t] = x - y;
    }
    return diff;
}

/// Compares two mutually exclusive projects through the IRR of the
/// difference project oriented so that its NPV falls with the rate.
inline ComparisonReport compare_pairwise(const Project& p1, const Project& p2, RateInterval bounds = {})
{
    ComparisonReport report;
    const auto d12 = cashflow_difference(p1, p2);
    if (std::all_of(d12.begin(), d12.end(), [](double x) { return x == 0.0; })) {
        report.degenerate = true;
        return report;
    }
    const auto d21 = cashflow_difference(p2, p1);

    Project forward(p1.name() + "-" + p2.name(), d12);
    Project backward(p2.name() + "-" + p1.name(), d21);

    const Project* later = nullptr;
    const Project* earlier = nullptr;
    const Project* chosen = nullptr;
    if (npv_slope_class(forward) == SlopeClass::decreasing) {
        chosen = &forward;
        later = &p1;
        earlier = &p2;
    } else if (npv_slope_class(backward) == SlopeClass::decreasing) {
        chosen = &backward;
        later = &p2;
        earlier = &p1;
    }

    if (chosen == nullptr) {
        report.difference_project = forward;
        return report;
    }
    report.difference_project = *chosen;
    report.orientation_valid = true;
    const auto irr = irr_all(*chosen, bounds);
    if (irr.classification != IrrClass::unique) {
        // No crossing in bounds: one project dominates over the whole interval.
        const auto* winner = npv(*chosen, bounds.lo) > 0.0 ? later : earlier;
        report.preferred_below = winner->name();
        report.preferred_above = winner->name();
        return report;
    }
    report.cutoff_rate = irr.roots.front();
    report.preferred_below = later->name();
    report.preferred_above = earlier->name();
    return report;
}

inline const char* to_string(IrrClass c)
{
    switch (c) {
    case IrrClass::unique: return "unique";
    case IrrClass::multiple: return "multiple";
    case IrrClass::none: return "none";
    }
    return "";
}

inline const char* to_string(SlopeClass c)
{
    return c == SlopeClass::decreasing ? "decreasing" : "not_guaranteed";
}

inline const char* to_string(Profitability p)
{
    switch (p) {
    case Profitability::profitable: return "profitable";
    case Profitability::unprofitable: return "unprofitable";
    case Profitability::inapplicable: return "inapplicable";
    }
    return "";
}

} // namespace propval
