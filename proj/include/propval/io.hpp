#pragma once

/// \file io.hpp
/// Serialization: schedules to CSV and JSON, project files from JSON, and
/// plain-text tables for IRR/NPV reports. Number rendering goes through fmt,
/// which ignores the global locale.

#include "propval/amortization.hpp"
#include "propval/project_analysis.hpp"

#include <fmt/format.h>

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace propval::io {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

/// Malformed or unreadable input file.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rounds half away from zero at the given number of decimals.
inline double round_half_away(double x, int decimals)
{
    const double scale = std::pow(10.0, decimals);
    const double r = std::round(x * scale) / scale;
    return r == 0.0 ? 0.0 : r; // no "-0.00"
}

inline std::string format_fixed(double x, int decimals)
{
    return fmt::format("{:.{}f}", round_half_away(x, decimals), decimals);
}

/// 0.2338 -> "23.38%".
inline std::string format_percent(double rate, int decimals = 2)
{
    return format_fixed(100.0 * rate, decimals) + "%";
}

// ---------------------------------------------------------------------------
// Schedules

inline std::string schedule_to_csv(const AmortizationSchedule& schedule)
{
    std::string out = "period,payment,interest,principal_reduction,ending_balance\n";
    for (const auto& row : schedule.rows) {
        out += fmt::format("{},{},{},{},{}\n", row.period, format_fixed(row.payment, 2),
                           format_fixed(row.interest, 2), format_fixed(row.principal_reduction, 2),
                           format_fixed(row.ending_balance, 2));
    }
    return out;
}

inline json schedule_to_json(const AmortizationSchedule& schedule)
{
    json rows = json::array();
    for (const auto& row : schedule.rows) {
        rows.push_back({{"period", row.period},
                        {"payment", row.payment},
                        {"interest", row.interest},
                        {"principal_reduction", row.principal_reduction},
                        {"ending_balance", row.ending_balance}});
    }
    return {{"schema", schema_version},
            {"principal", schedule.principal},
            {"rate", schedule.rate},
            {"rows", std::move(rows)},
            {"balance_increase_periods", schedule.balance_increase_periods()}};
}

// ---------------------------------------------------------------------------
// Plain-text tables

/// Column-aligned table; the first column is left-aligned, the rest right-aligned.
inline std::string render_table(const std::vector<std::string>& header,
                                const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width(header.size(), 0);
    auto widen = [&](const std::vector<std::string>& cells) {
        for (std::size_t j = 0; j < cells.size() && j < width.size(); ++j) {
            width[j] = std::max(width[j], cells[j].size());
        }
    };
    widen(header);
    for (const auto& r : rows) {
        widen(r);
    }

    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t j = 0; j < width.size(); ++j) {
            const std::string cell = j < cells.size() ? cells[j] : "";
            const std::string pad(width[j] - cell.size(), ' ');
            if (j > 0) {
                s += "  ";
            }
            s += j == 0 ? cell + pad : pad + cell;
        }
        while (!s.empty() && s.back() == ' ') {
            s.pop_back();
        }
        return s + "\n";
    };

    std::string out = line(header);
    std::size_t total = 0;
    for (auto w : width) {
        total += w;
    }
    out += std::string(total + 2 * (width.size() - 1), '-') + "\n";
    for (const auto& r : rows) {
        out += line(r);
    }
    return out;
}

inline std::string schedule_to_table(const AmortizationSchedule& schedule, int decimals = 2)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : schedule.rows) {
        rows.push_back({std::to_string(row.period), format_fixed(row.payment, decimals),
                        format_fixed(row.interest, decimals), format_fixed(row.principal_reduction, decimals),
                        format_fixed(row.ending_balance, decimals)});
    }
    return render_table({"Period", "Payment", "Interest", "Prin. Reduction", "End Bal."}, rows);
}

// ---------------------------------------------------------------------------
// Projects

inline Project project_from_json(const json& j)
{
    if (!j.is_object()) {
        throw InputError("project: expected a JSON object");
    }
    if (!j.contains("name") || !j["name"].is_string()) {
        throw InputError("project: missing string field \"name\"");
    }
    if (!j.contains("cashflows") || !j["cashflows"].is_array()) {
        throw InputError("project: missing array field \"cashflows\"");
    }
    std::vector<double> flows;
    for (const auto& c : j["cashflows"]) {
        if (!c.is_number()) {
            throw InputError("project: cashflows must be numbers");
        }
        flows.push_back(c.get<double>());
    }
    try {
        return Project(j["name"].get<std::string>(), std::move(flows));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

inline json project_to_json(const Project& p)
{
    return {{"name", p.name()}, {"cashflows", p.cashflows()}};
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

inline Project load_project(const std::string& path)
{
    try {
        return project_from_json(read_json_file(path));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

/// Principal reduction vector: either a bare array or {"principal_reductions": [...]}.
inline std::vector<double> load_principal_reductions(const std::string& path)
{
    json j = read_json_file(path);
    if (j.is_object() && j.contains("principal_reductions")) {
        j = j["principal_reductions"];
    }
    if (!j.is_array() || j.empty()) {
        throw InputError(path + ": expected a non-empty array of principal reductions");
    }
    std::vector<double> out;
    for (const auto& x : j) {
        if (!x.is_number()) {
            throw InputError(path + ": principal reductions must be numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

inline json irr_to_json(const IrrResult& irr)
{
    return {{"roots", irr.roots},
            {"classification", to_string(irr.classification)},
            {"search_bounds", {irr.search_bounds.lo, irr.search_bounds.hi}}};
}

inline json comparison_to_json(const ComparisonReport& report)
{
    json j = {{"schema", schema_version},
              {"degenerate", report.degenerate},
              {"orientation_valid", report.orientation_valid},
              {"preferred_below", report.preferred_below},
              {"preferred_above", report.preferred_above}};
    j["difference_project"] = report.difference_project ? project_to_json(*report.difference_project) : json(nullptr);
    j["cutoff_rate"] = report.cutoff_rate ? json(*report.cutoff_rate) : json(nullptr);
    return j;
}

/// Project | C_0..C_n | IRR | NPV @ r... in the layout of a textbook IRR table.
inline std::string projects_table(const std::vector<Project>& projects, const std::vector<double>& npv_rates,
                                  RateInterval bounds = {}, int money_decimals = 2, int percent_decimals = 2)
{
    std::size_t horizon = 0;
    for (const auto& p : projects) {
        horizon = std::max(horizon, p.horizon());
    }
    std::vector<std::string> header{"Project"};
    for (std::size_t t = 0; t <= horizon; ++t) {
        header.push_back("C" + std::to_string(t));
    }
    header.push_back("IRR");
    for (double r : npv_rates) {
        header.push_back("NPV @ " + format_percent(r, percent_decimals));
    }

    std::vector<std::vector<std::string>> rows;
    for (const auto& p : projects) {
        std::vector<std::string> row{p.name()};
        for (std::size_t t = 0; t <= horizon; ++t) {
            row.push_back(t < p.cashflows().size() ? format_fixed(p.cashflows()[t], money_decimals) : "");
        }
        const auto irr = irr_all(p, bounds);
        std::string irr_cell;
        for (std::size_t k = 0; k < irr.roots.size(); ++k) {
            irr_cell += (k ? ", " : "") + format_percent(irr.roots[k], percent_decimals);
        }
        row.push_back(irr_cell.empty() ? "none" : irr_cell);
        for (double r : npv_rates) {
            row.push_back(format_fixed(npv(p, r), money_decimals));
        }
        rows.push_back(std::move(row));
    }
    return render_table(header, rows);
}

} // namespace propval::io
