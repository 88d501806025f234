#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "propval/capitalization.hpp"

#include <cmath>

using namespace propval;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Draw {
    MortgageTerms mtg;
    double y;
    AppreciationSpec app;
};

Draw random_draw(oracle::Rng& rng)
{
    Draw d;
    d.mtg.loan_to_value = oracle::uniform(rng, 0.0, 0.9);
    d.mtg.annual_rate = oracle::uniform(rng, 0.02, 0.15);
    d.mtg.holding_years = oracle::uniform_int(rng, 1, 15);
    d.mtg.amortization_months = 12 * oracle::uniform_int(rng, d.mtg.holding_years, 30);
    d.y = oracle::uniform(rng, 0.04, 0.25);
    d.app.delta0 = oracle::uniform(rng, -0.5, 1.0);
    d.app.delta_income = oracle::uniform(rng, -0.3, 0.6);
    return d;
}

} // namespace

TEST_CASE("direct capitalization")
{
    CHECK_THAT(capitalize(120, 0.12), WithinRel(1000.0, 1e-15));
    CHECK_THAT(rate_from(1000, 120), WithinRel(0.12, 1e-15));
    CHECK_THAT(perpetuity_value(50, 0.05), WithinRel(1000.0, 1e-15));
    CHECK_THROWS_AS(capitalize(100, 0.0), std::domain_error);
    CHECK_THROWS_AS(rate_from(0.0, 100), std::domain_error);
    CHECK_THROWS_AS(perpetuity_value(100, 0.0), std::domain_error);
    CHECK_THROWS_AS(perpetuity_value(100, -0.1), std::domain_error);

    // a perpetuity is the limit of long annuities
    CHECK_THAT(perpetuity_value(1, 0.08), WithinRel(oracle::annuity(0.08, 2000), 1e-12));
}

TEST_CASE("appreciation-adjusted rate")
{
    CHECK(adjusted_cap_rate(0.10, 5, 0.0) == 0.10);
    CHECK_THAT(adjusted_cap_rate(0.10, 5, 0.2), WithinRel(0.10 - 0.2 / oracle::accumulation(0.10, 5), 1e-13));
    CHECK_THAT(adjusted_cap_rate(0.10, 5, -1.0), WithinRel(0.10 + 1 / oracle::accumulation(0.10, 5), 1e-13));
    CHECK_THROWS_AS(adjusted_cap_rate(0.10, 5, -1.5), std::invalid_argument);

    // I a_n + (1+delta0) V (1+i)^-n = V when R = I/V
    for (double delta0 : {-0.4, 0.0, 0.3}) {
        for (int n : {1, 7, 20}) {
            const double r = adjusted_cap_rate(0.09, n, delta0);
            const double v = 1000.0;
            const double rhs = r * v * oracle::annuity(0.09, n) + (1 + delta0) * v / oracle::power(1.09, n);
            CHECK_THAT(rhs, WithinRel(v, 1e-12));
        }
    }
}

TEST_CASE("band of investment")
{
    CHECK_THAT(band_of_investment(0.75, 0.08, 0.12), WithinRel(0.09, 1e-14));
    CHECK(band_of_investment(0.0, 0.08, 0.12) == 0.12);
    CHECK(band_of_investment(1.0, 0.08, 0.12) == 0.08);
    CHECK_THAT(band_with_mortgage_constant(0.75, 0.1007, 0.12), WithinRel(0.75 * 0.1007 + 0.25 * 0.12, 1e-14));
    CHECK_THROWS_AS(band_of_investment(1.2, 0.08, 0.12), std::invalid_argument);
    CHECK_THROWS_AS(band_of_investment(-0.1, 0.08, 0.12), std::invalid_argument);
}

TEST_CASE("mortgage constant")
{
    CHECK_THAT(mortgage_constant(0.12, 12), WithinRel(1.0661854641400994, 1e-13));
    CHECK_THAT(mortgage_constant(0.09, 300), WithinRel(0.1007035636361819, 1e-13));
    CHECK_THAT(mortgage_constant(0.0, 120), WithinRel(0.1, 1e-15));
    for (int months : {12, 60, 240, 360}) {
        const auto loan = oracle::simulate_loan(0.075, months, 0);
        CHECK_THAT(mortgage_constant(0.075, months), WithinRel(12 * loan.monthly_payment, 1e-12));
    }
}

TEST_CASE("Ellwood rate components")
{
    const MortgageTerms mtg{0.75, 0.09, 300, 10};
    const auto e = ellwood_cap_rate(mtg, 0.15, {0.1, 0.0});
    const auto loan = oracle::simulate_loan(0.09, 300, 120);
    CHECK_THAT(e.mortgage_constant, WithinRel(12 * loan.monthly_payment, 1e-12));
    CHECK_THAT(e.portion_paid, WithinRel(1 - loan.balance_after, 1e-10));
    CHECK_THAT(e.sinking_fund, WithinRel(1 / oracle::accumulation(0.15, 10), 1e-12));
    CHECK_THAT(e.c_factor, WithinRel(0.15 + e.portion_paid * e.sinking_fund - e.mortgage_constant, 1e-12));
    CHECK_THAT(e.rate, WithinRel(0.15 - 0.75 * e.c_factor - 0.1 * e.sinking_fund, 1e-12));
    CHECK_THAT(e.rate, WithinAbs(e.akerson_rate, 1e-12));
}

TEST_CASE("Ellwood input validation")
{
    CHECK_THROWS_AS(ellwood_cap_rate({0.75, 0.09, 300, 30}, 0.15, {}), std::invalid_argument);
    CHECK_THROWS_AS(ellwood_cap_rate({1.5, 0.09, 300, 10}, 0.15, {}), std::invalid_argument);
    CHECK_THROWS_AS(ellwood_cap_rate({0.75, 0.09, 0, 1}, 0.15, {}), std::invalid_argument);
    CHECK_THROWS_AS(ellwood_cap_rate({0.75, 0.09, 300, 10}, -1.5, {}), std::invalid_argument);
    CHECK_THROWS_AS(ellwood_cap_rate({0.75, 0.09, 300, 10}, 0.15, {-2.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ellwood_j_cap_rate({0.75, 0.09, 300, 10}, 0.0, {}), std::domain_error);
}

TEST_CASE("Ellwood and Akerson agree and solve the value equation")
{
    oracle::Rng rng(38);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto d = random_draw(rng);
        INFO("trial " << trial << " M=" << d.mtg.loan_to_value << " rate=" << d.mtg.annual_rate
                      << " months=" << d.mtg.amortization_months << " H=" << d.mtg.holding_years << " Y=" << d.y
                      << " d0=" << d.app.delta0);
        const auto e = ellwood_cap_rate(d.mtg, d.y, d.app);
        CHECK(std::abs(e.rate - e.akerson_rate) < 1e-12);

        const double noi = 100000.0;
        const double v = noi / e.rate;
        const double rhs = oracle::mortgage_equity_value(v, noi, d.mtg.loan_to_value, d.mtg.annual_rate,
                                                         d.mtg.amortization_months, d.mtg.holding_years, d.y,
                                                         d.app.delta0, 0.0);
        CHECK(std::abs(rhs - v) < 1e-8 * std::abs(v));
    }
}

TEST_CASE("J-premise Ellwood rate solves the value equation with growing income")
{
    oracle::Rng rng(39);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto d = random_draw(rng);
        INFO("trial " << trial);
        const auto ej = ellwood_j_cap_rate(d.mtg, d.y, d.app);
        CHECK_THAT(ej.j_factor, WithinRel(ellwood_j_factor(d.y, d.mtg.holding_years), 1e-15));
        CHECK_THAT(ej.rate, WithinRel(ej.level.rate / (1 + d.app.delta_income * ej.j_factor), 1e-15));

        const double noi = 100000.0;
        const double v = noi / ej.rate;
        const double rhs = oracle::mortgage_equity_value(v, noi, d.mtg.loan_to_value, d.mtg.annual_rate,
                                                         d.mtg.amortization_months, d.mtg.holding_years, d.y,
                                                         d.app.delta0, d.app.delta_income);
        CHECK(std::abs(rhs - v) < 1e-8 * std::abs(v));
    }
}

TEST_CASE("Ellwood rate falls as expected appreciation rises")
{
    const MortgageTerms mtg{0.7, 0.08, 360, 10};
    double prev = ellwood_cap_rate(mtg, 0.14, {-0.5, 0.0}).rate;
    for (int j = -4; j <= 10; ++j) {
        const double r = ellwood_cap_rate(mtg, 0.14, {0.1 * j, 0.0}).rate;
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("no mortgage reduces Ellwood to the adjusted rate")
{
    for (double delta0 : {-0.3, 0.0, 0.4}) {
        for (int h : {1, 5, 10}) {
            const auto e = ellwood_cap_rate({0.0, 0.09, 360, h}, 0.12, {delta0, 0.0});
            CHECK_THAT(e.rate, WithinRel(adjusted_cap_rate(0.12, h, delta0), 1e-13));
        }
    }
    // loan fully repaid at the end of the holding period
    const auto full = ellwood_cap_rate({1.0, 0.12, 120, 10}, std::pow(1.01, 12) - 1, {0.0, 0.0});
    CHECK(full.portion_paid == 1.0);
}

TEST_CASE("capital recovery rates")
{
    CHECK_THAT(table3_cap_rate(Table3Method::ring, 0.10, std::nullopt, 10), WithinRel(0.20, 1e-15));
    CHECK_THAT(table3_cap_rate(Table3Method::hoskold, 0.10, 0.05, 10),
               WithinRel(0.10 + 1 / oracle::accumulation(0.05, 10), 1e-13));
    CHECK_THAT(table3_cap_rate(Table3Method::annuity, 0.10, std::nullopt, 10),
               WithinRel(1 / oracle::annuity(0.10, 10), 1e-13));
    CHECK_THAT(table3_cap_rate(Table3Method::hoskold, 0.10, 0.0, 10),
               WithinRel(table3_cap_rate(Table3Method::ring, 0.10, std::nullopt, 10), 1e-15));
    CHECK_THAT(table3_cap_rate(Table3Method::hoskold, 0.10, 0.10, 10),
               WithinRel(table3_cap_rate(Table3Method::annuity, 0.10, std::nullopt, 10), 1e-13));

    // ring >= hoskold >= annuity when 0 <= i_s <= i
    for (int n = 1; n <= 30; ++n) {
        const double ring = table3_cap_rate(Table3Method::ring, 0.1, std::nullopt, n);
        const double hosk = table3_cap_rate(Table3Method::hoskold, 0.1, 0.04, n);
        const double ann = table3_cap_rate(Table3Method::annuity, 0.1, std::nullopt, n);
        CHECK(ring >= hosk - 1e-15);
        CHECK(hosk >= ann - 1e-15);
    }

    CHECK_THROWS_AS(table3_cap_rate(Table3Method::hoskold, 0.10, std::nullopt, 10), std::invalid_argument);
    CHECK_THROWS_AS(table3_cap_rate(Table3Method::hoskold, 0.10, -0.01, 10), std::invalid_argument);

    CHECK(parse_table3_method("ring") == Table3Method::ring);
    CHECK(parse_table3_method("straight-line") == Table3Method::ring);
    CHECK(parse_table3_method("hoskold") == Table3Method::hoskold);
    CHECK(parse_table3_method("annuity") == Table3Method::annuity);
    CHECK_FALSE(parse_table3_method("inwood-ish").has_value());
}
