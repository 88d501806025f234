// Walks through a mortgage-equity valuation and an IRR comparison using the
// header-only core.

#include "propval/propval.hpp"

#include <cstdio>

int main()
{
    using namespace propval;

    const double noi = 100000.0;
    const MortgageTerms mtg{0.7, 0.09, 300, 10};
    const AppreciationSpec app{0.10, 0.0};
    const auto ellwood = ellwood_cap_rate(mtg, 0.14, app);
    std::printf("Ellwood R = %.6f (C = %.6f, Rm = %.6f, P = %.6f)\n", ellwood.rate, ellwood.c_factor,
                ellwood.mortgage_constant, ellwood.portion_paid);
    std::printf("Value of NOI %.0f: %.2f\n", noi, capitalize(noi, ellwood.rate));

    const double ring = table3_cap_rate(Table3Method::ring, 0.10, std::nullopt, 10);
    const double hoskold = table3_cap_rate(Table3Method::hoskold, 0.10, 0.05, 10);
    std::printf("Ring R = %.4f, Hoskold R = %.4f\n", ring, hoskold);

    const Project a("A", {-1000, 200, 200, 1200});
    const Project b("B", {-1000, 500, 500, 500});
    const auto report = compare_pairwise(a, b);
    if (report.cutoff_rate) {
        std::printf("%s preferred below %.2f%%, %s above\n", report.preferred_below.c_str(),
                    100.0 * *report.cutoff_rate, report.preferred_above.c_str());
    }
    return 0;
}
