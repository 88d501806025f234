#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "propval/amortization.hpp"

#include <cmath>
#include <numeric>

using namespace propval;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

void check_row_invariants(const AmortizationSchedule& s)
{
    double balance = s.principal;
    for (const auto& row : s.rows) {
        INFO("period " << row.period);
        CHECK_THAT(row.interest, WithinAbs(s.rate * balance, 1e-9 * std::max(1.0, std::abs(balance))));
        CHECK_THAT(row.payment, WithinAbs(row.interest + row.principal_reduction, 1e-9 * std::max(1.0, row.payment)));
        CHECK_THAT(row.ending_balance,
                   WithinAbs(balance - row.principal_reduction, 1e-9 * std::max(1.0, std::abs(balance))));
        balance = row.ending_balance;
    }
    CHECK(s.rows.back().ending_balance == 0.0);
}

} // namespace

TEST_CASE("level payment schedule")
{
    const auto s = level_schedule(1000, 0.10, 5);
    REQUIRE(s.size() == 5);
    for (const auto& row : s.rows) {
        CHECK_THAT(row.payment, WithinRel(263.7974807947454, 1e-12));
    }
    CHECK_THAT(s.rows[0].interest, WithinRel(100.0, 1e-15));
    CHECK_THAT(s.rows[0].principal_reduction, WithinRel(163.7974807947454, 1e-12));
    check_row_invariants(s);
    CHECK(verify_main_theorem(s) < 1e-9);

    // matches period-by-period simulation of the balance
    const double pmt = 1000 / oracle::annuity(0.10, 5);
    double bal = 1000;
    for (const auto& row : s.rows) {
        bal = bal * 1.1 - pmt;
        CHECK_THAT(row.ending_balance, WithinAbs(bal, 1e-9));
    }

    const auto zero = level_schedule(1200, 0.0, 12);
    for (const auto& row : zero.rows) {
        CHECK(row.payment == 100.0);
        CHECK(row.interest == 0.0);
    }

    CHECK_THROWS_AS(level_schedule(0, 0.1, 5), std::invalid_argument);
    CHECK_THROWS_AS(level_schedule(1000, 0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(level_schedule(1000, -1.0, 5), std::invalid_argument);
}

TEST_CASE("generalized schedule from principal reductions")
{
    const std::vector<double> p{100, 300, 600};
    const auto s = generalized_schedule(p, 0.10);
    REQUIRE(s.size() == 3);
    CHECK(s.principal == 1000.0);
    CHECK_THAT(s.rows[0].payment, WithinRel(200.0, 1e-14));
    CHECK_THAT(s.rows[1].payment, WithinRel(390.0, 1e-14));
    CHECK_THAT(s.rows[2].payment, WithinRel(660.0, 1e-14));
    CHECK_THAT(oracle::discount_stream({200, 390, 660}, 0.10), WithinRel(1000.0, 1e-13));
    check_row_invariants(s);

    const auto grow = generalized_schedule(std::vector<double>{-50, 200, 300}, 0.08);
    CHECK(grow.balance_increase_periods() == std::vector<int>{1});
    CHECK(grow.rows[0].ending_balance > grow.principal);
    CHECK(s.balance_increase_periods().empty());

    CHECK_THROWS_AS(generalized_schedule(std::vector<double>{}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(generalized_schedule(std::vector<double>{1, NAN}, 0.1), std::invalid_argument);
}

TEST_CASE("main theorem over random principal reductions")
{
    oracle::Rng rng(5);
    int checked = 0;
    while (checked < 1000) {
        const int n = oracle::uniform_int(rng, 1, 30);
        std::vector<double> p;
        for (int k = 0; k < n; ++k) {
            p.push_back(oracle::uniform(rng, -500, 500));
        }
        const double total = std::accumulate(p.begin(), p.end(), 0.0);
        if (!(total > 0.0)) {
            continue;
        }
        double i = oracle::uniform(rng, 0.0, 0.3);
        if (i == 0.0) {
            i = 0.3;
        }
        const auto s = generalized_schedule(p, i);
        std::vector<double> incomes;
        for (const auto& row : s.rows) {
            incomes.push_back(row.payment);
        }
        INFO("n=" << n << " i=" << i << " total=" << total);
        CHECK(std::abs(oracle::discount_stream(incomes, i) - total) < 1e-6 * total);
        CHECK(verify_main_theorem(s) < 1e-6 * total);
        ++checked;
    }
}

TEST_CASE("sinking fund schedule")
{
    const auto s = sinking_fund_schedule(1000, 0.10, 0.05, 10);
    const double deposit = 1000 / oracle::accumulation(0.05, 10);
    CHECK_THAT(s.rows[0].payment, WithinRel(1000 * (0.10 + deposit / 1000), 1e-12));
    for (std::size_t k = 0; k < s.rows.size(); ++k) {
        CHECK_THAT(s.rows[k].principal_reduction, WithinRel(deposit * oracle::power(1.05, static_cast<int>(k)), 1e-10));
    }
    check_row_invariants(s);
    CHECK(verify_main_theorem(s) < 1e-9);

    SECTION("r = i reproduces the level schedule row by row")
    {
        for (double i : {0.01, 0.07, 0.2}) {
            for (int n : {1, 5, 30}) {
                const auto sf = sinking_fund_schedule(5000, i, i, n);
                const auto lv = level_schedule(5000, i, n);
                REQUIRE(sf.size() == lv.size());
                for (std::size_t k = 0; k < sf.size(); ++k) {
                    CHECK_THAT(sf.rows[k].payment, WithinRel(lv.rows[k].payment, 1e-10));
                    CHECK_THAT(sf.rows[k].interest, WithinRel(lv.rows[k].interest, 1e-10));
                    CHECK_THAT(sf.rows[k].ending_balance, WithinAbs(lv.rows[k].ending_balance, 1e-7));
                }
            }
        }
    }

    SECTION("r = 0 gives ring incomes declining by iV/n")
    {
        const auto ring = sinking_fund_schedule(1000, 0.10, 0.0, 10);
        for (std::size_t k = 1; k < ring.size(); ++k) {
            CHECK_THAT(ring.rows[k - 1].payment - ring.rows[k].payment, WithinRel(10.0, 1e-10));
        }
    }

    CHECK_THROWS_AS(sinking_fund_schedule(1000, 0.1, -0.01, 10), std::invalid_argument);
    CHECK_THROWS_AS(sinking_fund_schedule(-5, 0.1, 0.05, 10), std::invalid_argument);
}
