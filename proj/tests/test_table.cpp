#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "appendix_table.hpp"
#include "cilb/errors.hpp"
#include "cilb/table.hpp"
#include "oracles.hpp"

using namespace cilb;

TEST_SUITE("tablegen") {

TEST_CASE("n_max = 1") {
    const auto rows = generate_table(1, 0.99, BetaParams::uniform());
    std::ostringstream csv;
    write_table_csv(csv, rows);
    CHECK(csv.str() ==
          "n,x,mle,laplace,theta_lb\n"
          "1,0,0.00000,0.33333,0.00501\n"
          "1,1,1.00000,0.66667,0.10000\n");
}

TEST_CASE("n_max = 6 reproduces the published table") {
    const auto rows = generate_table(6, 0.99, BetaParams::uniform());
    REQUIRE(rows.size() == 27);
    const auto& last = rows.back();
    CHECK(last.n == 6);
    CHECK(last.x == 6);
    CHECK(format_fixed(*last.mle) == "1.00000");
    CHECK(format_fixed(last.laplace) == "0.87500");
    CHECK(format_fixed(last.lower_bound) == "0.51795");

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& ref = reference::kAppendixTable[i];
        INFO("n=" << ref.n << " x=" << ref.x);
        CHECK(rows[i].n == std::uint64_t(ref.n));
        CHECK(rows[i].x == std::uint64_t(ref.x));
        CHECK(std::fabs(*rows[i].mle - ref.mle) <= 1e-5);
        CHECK(std::fabs(rows[i].laplace - ref.laplace) <= 1e-5);
        CHECK(std::fabs(rows[i].lower_bound - ref.lower_bound) <= 1e-5);
    }
}

TEST_CASE("alpha = 0.5 gives posterior medians") {
    const auto rows = generate_table(2, 0.5, BetaParams::uniform());
    REQUIRE(rows.size() == 5);
    for (const auto& row : rows) {
        const int a = int(row.x) + 1;
        const int b = int(row.n - row.x) + 1;
        const double median =
            oracle::bisect([&](double t) { return oracle::binomial_sum_cdf(a, b, t); }, 0.5);
        CHECK(std::fabs(row.lower_bound - median) <= 1e-12);
    }
    CHECK(std::fabs(rows[3].lower_bound - 0.5) <= 1e-12);  // (2,1)
}

TEST_CASE("row count and ordering") {
    for (std::uint64_t n_max : {1u, 2u, 7u, 20u}) {
        const auto rows = generate_table(n_max, 0.9, BetaParams(0.5, 2.0));
        CHECK(rows.size() == n_max * (n_max + 3) / 2);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const bool ascending = rows[i - 1].n < rows[i].n ||
                                   (rows[i - 1].n == rows[i].n && rows[i - 1].x < rows[i].x);
            CHECK(ascending);
        }
        for (const auto& row : rows) {
            CHECK(row.lower_bound > 0.0);
            CHECK(row.lower_bound < 1.0);
            CHECK(row.laplace > 0.0);
        }
    }
    CHECK_THROWS_AS(generate_table(0, 0.99, BetaParams::uniform()), DomainError);
    CHECK_THROWS_AS(generate_table(3, 1.0, BetaParams::uniform()), DomainError);
}

TEST_CASE("format_fixed rounds half up") {
    CHECK(format_fixed(0.125, 2) == "0.13");
    CHECK(format_fixed(2.5, 0) == "3");
    CHECK(format_fixed(1.0) == "1.00000");
    CHECK(format_fixed(0.0) == "0.00000");
    CHECK(format_fixed(1.0 / 3.0) == "0.33333");
    CHECK(format_fixed(2.0 / 3.0) == "0.66667");
    CHECK(format_fixed(0.000004) == "0.00000");
    CHECK(format_fixed(-0.25, 1) == "-0.3");
    CHECK(format_fixed(NAN) == "NA");
}

}
