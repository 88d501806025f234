#include "cli.hpp"

#include "propval/io.hpp"
#include "propval/propval.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace propval::cli {
namespace {

using io::json;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { csv, json, table };
enum class Kind { money, rate, factor };

struct Settings {
    std::optional<Format> format;
    std::optional<int> precision;

    [[nodiscard]] int decimals(Kind k) const
    {
        if (precision) {
            return *precision;
        }
        return k == Kind::money ? 2 : 4;
    }
};

/// Named numeric flags attached to a subcommand; presence is checked on use.
class Params {
public:
    void add(CLI::App& app, const std::string& flag, const std::string& help, const std::string& alias = "")
    {
        auto& slot = values_[flag];
        options_[flag] = app.add_option("--" + flag + (alias.empty() ? "" : ",--" + alias), slot, help);
    }

    void add_int(CLI::App& app, const std::string& flag, const std::string& help)
    {
        auto& slot = ints_[flag];
        options_[flag] = app.add_option("--" + flag, slot, help);
    }

    [[nodiscard]] bool has(const std::string& flag) const
    {
        auto it = options_.find(flag);
        return it != options_.end() && it->second->count() > 0;
    }

    [[nodiscard]] double num(const std::string& flag) const
    {
        require(flag);
        return values_.at(flag);
    }

    [[nodiscard]] int integer(const std::string& flag) const
    {
        require(flag);
        return ints_.at(flag);
    }

private:
    void require(const std::string& flag) const
    {
        if (!has(flag)) {
            throw UsageError("missing required option --" + flag);
        }
    }

    std::map<std::string, double> values_;
    std::map<std::string, int> ints_;
    std::map<std::string, CLI::Option*> options_;
};

/// Ordered (label, value, kind) results of a scalar command.
struct Report {
    std::string command;
    json inputs = json::object();
    std::vector<std::tuple<std::string, double, Kind>> values;

    void add(std::string label, double value, Kind kind) { values.emplace_back(std::move(label), value, kind); }
};

void emit(const Report& report, const Settings& settings, std::ostream& out)
{
    switch (settings.format.value_or(Format::table)) {
    case Format::json: {
        json results = json::object();
        for (const auto& [label, value, kind] : report.values) {
            results[label] = value;
        }
        json j = {{"schema", io::schema_version},
                  {"command", report.command},
                  {"inputs", report.inputs},
                  {"results", std::move(results)}};
        out << j.dump(2) << "\n";
        break;
    }
    case Format::csv:
        out << "quantity,value\n";
        for (const auto& [label, value, kind] : report.values) {
            out << label << "," << io::format_fixed(value, settings.decimals(kind)) << "\n";
        }
        break;
    case Format::table:
        if (report.values.size() == 1) {
            const auto& [label, value, kind] = report.values.front();
            out << io::format_fixed(value, settings.decimals(kind)) << "\n";
            break;
        }
        std::size_t width = 0;
        for (const auto& v : report.values) {
            width = std::max(width, std::get<0>(v).size());
        }
        for (const auto& [label, value, kind] : report.values) {
            out << label << std::string(width - label.size() + 2, ' ')
                << io::format_fixed(value, settings.decimals(kind)) << "\n";
        }
        break;
    }
}

// ---------------------------------------------------------------------------

Report run_tvm(const std::string& fn, const Params& p)
{
    const double rate = p.num("rate");
    const int n = p.integer("n");
    Report r;
    r.command = "tvm " + fn;
    r.inputs = {{"rate", rate}, {"n", n}};

    double value = 0.0;
    if (fn == "compound") {
        value = compound_amount(rate, n);
    } else if (fn == "reversion") {
        value = pv_reversion(rate, n);
    } else if (fn == "annuity") {
        value = annuity_pv(rate, n);
    } else if (fn == "amortize") {
        value = installment_to_amortize(rate, n);
    } else if (fn == "accumulate") {
        value = accumulation(rate, n);
    } else if (fn == "sff") {
        value = sinking_fund_factor(rate, n);
    } else if (fn == "bal" || fn == "pp") {
        const int k = p.integer("k");
        r.inputs["k"] = k;
        value = fn == "bal" ? balance_fraction(k, n, rate) : portion_paid(k, n, rate);
    } else {
        throw UsageError("unknown tvm function " + fn);
    }
    r.add(fn, value, Kind::factor);
    return r;
}

Report run_caprate(const std::string& method, const Params& p)
{
    Report r;
    r.command = "caprate " + method;
    if (method == "band") {
        r.inputs = {{"m", p.num("m")}, {"i", p.num("i")}, {"y", p.num("y")}};
        r.add("R", band_of_investment(p.num("m"), p.num("i"), p.num("y")), Kind::rate);
    } else if (method == "band-rm") {
        r.inputs = {{"m", p.num("m")}, {"rm", p.num("rm")}, {"y", p.num("y")}};
        r.add("R", band_with_mortgage_constant(p.num("m"), p.num("rm"), p.num("y")), Kind::rate);
    } else if (method == "adjusted") {
        r.inputs = {{"i", p.num("i")}, {"n", p.integer("n")}, {"delta0", p.num("delta0")}};
        r.add("R", adjusted_cap_rate(p.num("i"), p.integer("n"), p.num("delta0")), Kind::rate);
    } else if (method == "mortgage-constant") {
        r.inputs = {{"rate", p.num("rate")}, {"months", p.integer("months")}};
        r.add("Rm", mortgage_constant(p.num("rate"), p.integer("months")), Kind::rate);
    } else if (method == "ellwood") {
        const MortgageTerms mtg{p.num("m"), p.num("i"), p.integer("months"), p.integer("h")};
        AppreciationSpec app{p.has("delta0") ? p.num("delta0") : 0.0, p.has("delta") ? p.num("delta") : 0.0};
        const double y = p.num("y");
        r.inputs = {{"m", mtg.loan_to_value},  {"i", mtg.annual_rate}, {"months", mtg.amortization_months},
                    {"h", mtg.holding_years}, {"y", y},                {"delta0", app.delta0}};
        if (p.has("delta")) {
            r.inputs["delta"] = app.delta_income;
            const auto res = ellwood_j_cap_rate(mtg, y, app);
            r.add("R", res.rate, Kind::rate);
            r.add("R_level", res.level.rate, Kind::rate);
            r.add("J", res.j_factor, Kind::factor);
            r.add("C", res.level.c_factor, Kind::factor);
            r.add("Rm", res.level.mortgage_constant, Kind::rate);
            r.add("P", res.level.portion_paid, Kind::factor);
            r.add("SFF", res.level.sinking_fund, Kind::factor);
        } else {
            const auto res = ellwood_cap_rate(mtg, y, app);
            r.add("R", res.rate, Kind::rate);
            r.add("C", res.c_factor, Kind::factor);
            r.add("Rm", res.mortgage_constant, Kind::rate);
            r.add("P", res.portion_paid, Kind::factor);
            r.add("SFF", res.sinking_fund, Kind::factor);
        }
    } else if (auto m = parse_table3_method(method)) {
        std::optional<double> safe;
        if (p.has("is")) {
            safe = p.num("is");
        } else if (*m == Table3Method::hoskold) {
            throw UsageError("hoskold requires --is");
        }
        r.inputs = {{"i", p.num("i")}, {"n", p.integer("n")}};
        if (safe) {
            r.inputs["is"] = *safe;
        }
        r.add("R", table3_cap_rate(*m, p.num("i"), safe, p.integer("n")), Kind::rate);
    } else {
        throw UsageError("unknown caprate method " + method);
    }
    return r;
}

Report run_value(const std::string& form, const Params& p)
{
    Report r;
    r.command = "value " + form;
    auto recurrence = [&] { return RecurrenceSpec{p.num("m"), p.num("b"), p.num("c")}; };

    if (form == "recurrence") {
        const auto spec = recurrence();
        r.inputs = {{"m", spec.m}, {"b", spec.b}, {"c", spec.c}, {"i", p.num("i")}, {"n", p.integer("n")}};
        r.add("V", value_recurrence_stream(spec, p.num("i"), p.integer("n")), Kind::money);
    } else if (form == "offset") {
        const OffsetStreamSpec spec{p.num("d"), p.num("h"), recurrence()};
        r.inputs = {{"d", spec.d}, {"h", spec.h}, {"m", spec.recurrence.m}, {"b", spec.recurrence.b},
                    {"c", spec.recurrence.c}, {"i", p.num("i")}, {"n", p.integer("n")}};
        r.add("V*", value_offset_stream(spec, p.num("i"), p.integer("n")), Kind::money);
    } else if (form == "straight-line") {
        r.inputs = {{"d", p.num("d")}, {"h", p.num("h")}, {"i", p.num("i")}, {"n", p.integer("n")}};
        r.add("V", straight_line_annuity_value(p.num("d"), p.num("h"), p.num("i"), p.integer("n")), Kind::money);
    } else if (form == "growth") {
        r.inputs = {{"g", p.num("g")}, {"i", p.num("i")}, {"n", p.integer("n")}};
        r.add("V", constant_ratio_annuity_value(p.num("g"), p.num("i"), p.integer("n")), Kind::factor);
    } else if (form == "accumulation") {
        r.inputs = {{"i", p.num("i")}, {"n", p.integer("n")}};
        r.add("V", accumulation_stream_value(p.num("i"), p.integer("n")), Kind::factor);
    } else if (form == "hoskold") {
        r.inputs = {{"income", p.num("income")}, {"i", p.num("i")}, {"is", p.num("is")}, {"n", p.integer("n")}};
        r.add("V", hoskold_stream_value(p.num("income"), p.num("i"), p.num("is"), p.integer("n")), Kind::money);
    } else if (form == "j-premise") {
        r.inputs = {{"income", p.num("income")}, {"delta", p.num("delta")}, {"i", p.num("i")}, {"n", p.integer("n")}};
        r.add("V", j_premise_stream_value(p.num("income"), p.num("delta"), p.num("i"), p.integer("n")), Kind::money);
        r.add("J", ellwood_j_factor(p.num("i"), p.integer("n")), Kind::factor);
    } else if (form == "perpetuity") {
        r.inputs = {{"income", p.num("income")}, {"i", p.num("i")}};
        r.add("V", perpetuity_value(p.num("income"), p.num("i")), Kind::money);
    } else if (form == "capitalize") {
        r.inputs = {{"income", p.num("income")}, {"rate", p.num("rate")}};
        r.add("V", capitalize(p.num("income"), p.num("rate")), Kind::money);
    } else {
        throw UsageError("unknown value form " + form);
    }
    return r;
}

// ---------------------------------------------------------------------------

void run_amort(const std::string& kind, const Params& p, const std::string& file, const Settings& settings,
               std::ostream& out)
{
    AmortizationSchedule schedule;
    if (kind == "level") {
        schedule = level_schedule(p.num("pv"), p.num("i"), p.integer("n"));
    } else if (kind == "sinking") {
        schedule = sinking_fund_schedule(p.num("pv"), p.num("i"), p.num("r"), p.integer("n"));
    } else if (kind == "general") {
        if (file.empty()) {
            throw UsageError("amort general requires --file");
        }
        const auto reductions = io::load_principal_reductions(file);
        schedule = generalized_schedule(reductions, p.num("i"));
    } else {
        throw UsageError("unknown schedule kind " + kind);
    }
    const double residual = verify_main_theorem(schedule);

    switch (settings.format.value_or(Format::csv)) {
    case Format::csv:
        out << io::schedule_to_csv(schedule);
        out << fmt::format("# main_theorem_residual={:.3e}\n", residual);
        break;
    case Format::json: {
        auto j = io::schedule_to_json(schedule);
        j["kind"] = kind;
        j["main_theorem_residual"] = residual;
        out << j.dump(2) << "\n";
        break;
    }
    case Format::table:
        out << io::schedule_to_table(schedule, settings.decimals(Kind::money));
        out << fmt::format("Main theorem residual: {:.3e}\n", residual);
        break;
    }
}

void run_irr(const std::vector<std::string>& files, bool compare, const std::vector<double>& npv_rates,
             const std::vector<double>& bounds_arg, const Settings& settings, std::ostream& out)
{
    RateInterval bounds;
    if (!bounds_arg.empty()) {
        if (bounds_arg.size() != 2) {
            throw UsageError("--bounds expects lo,hi");
        }
        bounds = {bounds_arg[0], bounds_arg[1]};
    }
    if (files.empty()) {
        throw UsageError("irr requires at least one project file");
    }
    if (compare && files.size() != 2) {
        throw UsageError("--compare requires exactly two project files");
    }
    for (double r : npv_rates) {
        if (!(r > -1.0)) {
            throw UsageError("--npv-at rates must exceed -1");
        }
    }

    std::vector<Project> projects;
    for (const auto& f : files) {
        projects.push_back(io::load_project(f));
    }
    std::optional<ComparisonReport> comparison;
    if (compare) {
        comparison = compare_pairwise(projects[0], projects[1], bounds);
    }

    std::vector<Project> shown = projects;
    if (comparison && comparison->difference_project) {
        shown.push_back(*comparison->difference_project);
    }

    const int money = settings.decimals(Kind::money);
    const int pct = settings.precision.value_or(2);

    switch (settings.format.value_or(Format::table)) {
    case Format::table: {
        out << io::projects_table(shown, npv_rates, bounds, money, pct);
        out << "\n";
        for (const auto& p : shown) {
            out << p.name() << ": IRR " << to_string(irr_all(p, bounds).classification) << ", NPV slope "
                << to_string(npv_slope_class(p)) << "\n";
        }
        if (comparison) {
            if (comparison->degenerate) {
                out << "Comparison: projects are identical (degenerate difference)\n";
            } else if (!comparison->orientation_valid) {
                out << "Comparison: neither difference ordering has a declining NPV; no cutoff reported\n";
            } else if (comparison->cutoff_rate) {
                out << "Cutoff rate: " << io::format_percent(*comparison->cutoff_rate, pct) << " ("
                    << comparison->preferred_below << " preferred below, " << comparison->preferred_above
                    << " preferred above)\n";
            } else {
                out << "No cutoff in bounds: " << comparison->preferred_below << " preferred throughout\n";
            }
        }
        break;
    }
    case Format::json: {
        json list = json::array();
        for (const auto& p : shown) {
            json npvs = json::array();
            for (double r : npv_rates) {
                npvs.push_back({{"rate", r}, {"npv", npv(p, r)}});
            }
            auto j = io::project_to_json(p);
            j["irr"] = io::irr_to_json(irr_all(p, bounds));
            j["npv_slope"] = to_string(npv_slope_class(p));
            j["npv"] = std::move(npvs);
            list.push_back(std::move(j));
        }
        json j = {{"schema", io::schema_version}, {"projects", std::move(list)}};
        if (comparison) {
            j["comparison"] = io::comparison_to_json(*comparison);
        }
        out << j.dump(2) << "\n";
        break;
    }
    case Format::csv: {
        std::size_t horizon = 0;
        for (const auto& p : shown) {
            horizon = std::max(horizon, p.horizon());
        }
        out << "project";
        for (std::size_t t = 0; t <= horizon; ++t) {
            out << ",C" << t;
        }
        out << ",irr,classification";
        for (double r : npv_rates) {
            out << ",npv@" << io::format_fixed(r, 4);
        }
        out << "\n";
        for (const auto& p : shown) {
            out << p.name();
            for (std::size_t t = 0; t <= horizon; ++t) {
                out << "," << (t < p.cashflows().size() ? io::format_fixed(p.cashflows()[t], money) : "");
            }
            const auto irr = irr_all(p, bounds);
            out << ",";
            for (std::size_t k = 0; k < irr.roots.size(); ++k) {
                out << (k ? ";" : "") << io::format_fixed(irr.roots[k], settings.precision.value_or(6));
            }
            out << "," << to_string(irr.classification);
            for (double r : npv_rates) {
                out << "," << io::format_fixed(npv(p, r), money);
            }
            out << "\n";
        }
        if (comparison && comparison->cutoff_rate) {
            out << "# cutoff_rate=" << io::format_fixed(*comparison->cutoff_rate, settings.precision.value_or(6))
                << ",preferred_below=" << comparison->preferred_below
                << ",preferred_above=" << comparison->preferred_above << "\n";
        }
        break;
    }
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Income property valuation: time value factors, schedules, cap rates, stream values, NPV/IRR",
                 "propval"};
    app.require_subcommand(1);

    std::string format_name;
    int precision = -1;
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"csv", "json", "table"}));
    app.add_option("--precision", precision, "Decimal places for display")->check(CLI::Range(0, 12));

    // tvm
    auto* tvm = app.add_subcommand("tvm", "Six functions of one and loan balance fractions");
    tvm->set_help_flag("--help", "Print this help message and exit");
    std::string tvm_fn;
    tvm->add_option("function", tvm_fn, "compound|reversion|annuity|amortize|accumulate|sff|bal|pp")
        ->required()
        ->check(CLI::IsMember({"compound", "reversion", "annuity", "amortize", "accumulate", "sff", "bal", "pp"}));
    Params tvm_p;
    tvm_p.add(*tvm, "rate", "Rate per period (fraction)");
    tvm_p.add_int(*tvm, "n", "Number of periods");
    tvm_p.add_int(*tvm, "k", "Payment index for bal/pp");

    // amort
    auto* amort = app.add_subcommand("amort", "Amortization schedules");
    amort->set_help_flag("--help", "Print this help message and exit");
    std::string amort_kind;
    std::string amort_file;
    amort->add_option("kind", amort_kind, "level|general|sinking")
        ->required()
        ->check(CLI::IsMember({"level", "general", "sinking"}));
    Params amort_p;
    amort_p.add(*amort, "pv", "Principal or capital value", "v");
    amort_p.add(*amort, "i", "Interest/discount rate per period");
    amort_p.add(*amort, "r", "Sinking fund rate per period");
    amort_p.add_int(*amort, "n", "Number of periods");
    amort->add_option("--file", amort_file, "JSON principal reduction vector");

    // caprate
    auto* cap = app.add_subcommand("caprate", "Direct capitalization rates");
    cap->set_help_flag("--help", "Print this help message and exit");
    std::string cap_method;
    cap->add_option("method", cap_method,
                    "band|band-rm|adjusted|mortgage-constant|ellwood|ring|hoskold|annuity")
        ->required()
        ->check(CLI::IsMember(
            {"band", "band-rm", "adjusted", "mortgage-constant", "ellwood", "ring", "hoskold", "annuity"}));
    Params cap_p;
    for (const auto& [flag, help] : std::vector<std::pair<std::string, std::string>>{
             {"m", "Loan-to-value ratio"},
             {"i", "Interest or discount rate"},
             {"y", "Equity yield rate"},
             {"rm", "Mortgage constant"},
             {"delta0", "Relative change in asset value"},
             {"delta", "Relative change in income (J premise)"},
             {"rate", "Annual mortgage rate"},
             {"is", "Safe sinking fund rate"}}) {
        cap_p.add(*cap, flag, help);
    }
    cap_p.add_int(*cap, "n", "Number of periods");
    cap_p.add_int(*cap, "months", "Amortization term in months");
    cap_p.add_int(*cap, "h", "Holding period in years");

    // value
    auto* val = app.add_subcommand("value", "Present value of changing income streams");
    val->set_help_flag("--help", "Print this help message and exit");
    std::string val_form;
    val->add_option("form", val_form,
                    "recurrence|offset|straight-line|growth|accumulation|hoskold|j-premise|perpetuity|capitalize")
        ->required()
        ->check(CLI::IsMember({"recurrence", "offset", "straight-line", "growth", "accumulation", "hoskold",
                               "j-premise", "perpetuity", "capitalize"}));
    Params val_p;
    for (const auto& [flag, help] : std::vector<std::pair<std::string, std::string>>{
             {"m", "Recurrence multiplier"},
             {"b", "Recurrence constant"},
             {"c", "Recurrence seed y0"},
             {"d", "First-period income"},
             {"h", "Per-period decrement"},
             {"g", "Growth rate"},
             {"i", "Discount rate"},
             {"income", "Income I"},
             {"is", "Safe sinking fund rate"},
             {"delta", "Relative change in income"},
             {"rate", "Capitalization rate"}}) {
        val_p.add(*val, flag, help);
    }
    val_p.add_int(*val, "n", "Number of periods");

    // irr
    auto* irr = app.add_subcommand("irr", "NPV and IRR analysis of project files");
    irr->set_help_flag("--help", "Print this help message and exit");
    std::vector<std::string> irr_files;
    bool irr_compare = false;
    std::vector<double> npv_rates;
    std::vector<double> bounds;
    irr->add_option("files", irr_files, "Project JSON files")->required();
    irr->add_flag("--compare", irr_compare, "Compare two projects via their difference project");
    irr->add_option("--npv-at", npv_rates, "Comma-separated discount rates")->delimiter(',');
    irr->add_option("--bounds", bounds, "IRR search interval lo,hi")->delimiter(',')->expected(2);

    std::vector<std::string> argv_store{"propval"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "propval: " << e.what() << "\n";
        return exit_usage;
    }

    Settings settings;
    if (!format_name.empty()) {
        settings.format = format_name == "csv" ? Format::csv : format_name == "json" ? Format::json : Format::table;
    }
    if (precision >= 0) {
        settings.precision = precision;
    }

    try {
        if (tvm->parsed()) {
            emit(run_tvm(tvm_fn, tvm_p), settings, out);
        } else if (amort->parsed()) {
            run_amort(amort_kind, amort_p, amort_file, settings, out);
        } else if (cap->parsed()) {
            emit(run_caprate(cap_method, cap_p), settings, out);
        } else if (val->parsed()) {
            emit(run_value(val_form, val_p), settings, out);
        } else if (irr->parsed()) {
            run_irr(irr_files, irr_compare, npv_rates, bounds, settings, out);
        }
    } catch (const io::InputError& e) {
        err << "propval: " << e.what() << "\n";
        return exit_input;
    } catch (const UsageError& e) {
        err << "propval: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "propval: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::domain_error& e) {
        err << "propval: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_ok;
}

} // namespace propval::cli
