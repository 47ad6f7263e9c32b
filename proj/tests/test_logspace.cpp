#include "doctest.h"

#include <cmath>
#include <random>

#include "girthforge/bounds.hpp"
#include "girthforge/logspace.hpp"

using namespace girthforge;
namespace ls = girthforge::logspace;

namespace {

// plain-double reference for moderate sizes
double direct_two_sided_tail(long long m, double p, double gamma) {
    const double mean = m * p;
    double total = 0.0;
    for (long long j = 0; j <= m; ++j) {
        if (std::fabs(j - mean) < gamma * mean) continue;
        total += std::exp(ls::log_binom_pmf(m, p, j));
    }
    return total;
}

} // namespace

TEST_CASE("log_add / log_sub / log1mexp") {
    CHECK(ls::log_add(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)));
    CHECK(ls::log_add(ls::neg_inf, std::log(3.0)) == doctest::Approx(std::log(3.0)));
    CHECK(ls::log_sub(std::log(5.0), std::log(3.0)) == doctest::Approx(std::log(2.0)));
    CHECK(ls::log_sub(std::log(3.0), std::log(3.0)) == ls::neg_inf);
    CHECK(ls::log1mexp(std::log(0.25)) == doctest::Approx(std::log(0.75)));
    CHECK_THROWS_AS(ls::log_sub(std::log(2.0), std::log(3.0)), std::domain_error);
}

TEST_CASE("log_binom agrees with Pascal recurrence") {
    for (int n = 0; n <= 30; ++n) {
        double running = 0.0; // C(n,0)
        for (int k = 0; k <= n; ++k) {
            CHECK(ls::log_binom(n, k) == doctest::Approx(std::log(std::round(
                std::exp(ls::log_binom(n, k))))).epsilon(1e-9));
            if (k > 0) running += std::log((n - k + 1.0) / k);
            CHECK(ls::log_binom(n, k) == doctest::Approx(running).epsilon(1e-9));
        }
    }
    CHECK(ls::log_binom(5, 7) == ls::neg_inf);
    CHECK(ls::log_binom(5, -1) == ls::neg_inf);
}

TEST_CASE("binomial pmf sums to one") {
    for (long long m : {1, 5, 40}) {
        for (double p : {0.05, 0.3, 0.9}) {
            double acc = ls::neg_inf;
            for (long long j = 0; j <= m; ++j)
                acc = ls::log_add(acc, ls::log_binom_pmf(m, p, j));
            CHECK(acc == doctest::Approx(0.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("two-sided tail matches direct summation") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 60; ++trial) {
        long long m = 1 + static_cast<long long>(gen() % 400);
        double p = 0.02 + 0.9 * (static_cast<double>(gen() % 1000) / 1000.0);
        double gamma = 0.05 + 1.4 * (static_cast<double>(gen() % 1000) / 1000.0);
        double mine = std::exp(ls::log_binom_two_sided_tail(m, p, gamma));
        double truth = direct_two_sided_tail(m, p, gamma);
        CHECK(mine == doctest::Approx(truth).epsilon(1e-9));
    }
}

TEST_CASE("cdf matches direct summation") {
    for (long long m : {1, 7, 123}) {
        for (double p : {0.1, 0.5, 0.93}) {
            double acc = 0.0;
            for (long long j = 0; j <= m; ++j) {
                acc += std::exp(ls::log_binom_pmf(m, p, j));
                double mine = std::exp(ls::log_binom_cdf(m, p, j));
                CHECK(mine == doctest::Approx(std::min(acc, 1.0)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("extreme tails stay finite in log space") {
    // far tail that would underflow in linear space
    double lg = ls::log_binom_two_sided_tail(10000, 0.5, 1.4);
    CHECK(lg < -1000.0);
    CHECK(std::isfinite(lg));
}

TEST_CASE("chernoff_check basics") {
    auto row = chernoff_check(1000, 0.5, 0.2);
    CHECK(row.bound() == doctest::Approx(2.0 * std::exp(-20.0 / 3.0)));
    CHECK(row.holds);
    CHECK(row.exact_tail() <= row.bound());

    // tiny gamma: bound exceeds 1, trivially holds
    auto tiny = chernoff_check(50, 0.3, 1e-6);
    CHECK(tiny.bound() > 1.0);
    CHECK(tiny.holds);

    CHECK_THROWS_AS(chernoff_check(0, 0.5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(chernoff_check(10, 0.5, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(chernoff_check(10, 0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(chernoff_check(10, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("concentration bound row formula") {
    // m=1000, p=0.5, gamma=1 -> 2 e^{-500/3}
    CHECK(log_concentration_bound(1000, 0.5, 1.0) ==
          doctest::Approx(std::log(2.0) - 500.0 / 3.0));
}

TEST_CASE("expectation formulas") {
    // C(10,2) * 0.1^3 = 45 * 0.001 = 0.045
    CHECK(std::exp(log_cycle_count_expectation(10, 2, 0.1)) ==
          doctest::Approx(0.045).epsilon(1e-12));

    // short-cycle sum for a tiny case, against direct arithmetic
    // a=2, n=2, ell=4, p=0.5: C(4,2)*1!*p^2 + C(4,3)*2!*p^3 = 6*.25 + 8*.125
    double direct = 6.0 * 0.25 + 8.0 * 0.125;
    CHECK(std::exp(log_short_cycle_expectation_sum(2, 2, 4, 0.5)) ==
          doctest::Approx(direct).epsilon(1e-12));

    // double-cycle sum term check: ell=3 keeps only l1=2, l2 in {1,2}
    double t21 = 2.0 * 6.0 * 1.0 * 4.0 * 1.0 * 1.0 * std::pow(0.5, 3);
    double t22 = 2.0 * 6.0 * 1.0 * 4.0 * 4.0 * 1.0 * std::pow(0.5, 4);
    CHECK(std::exp(log_double_cycle_expectation_sum(2, 2, 3, 0.5)) ==
          doctest::Approx(t21 + t22).epsilon(1e-12));
}

TEST_CASE("sparse pair expectation formula") {
    // n=4, k=2, b=1 -> |A|=3, slots=3
    double p = 0.25;
    double direct = 4.0 /*C(4,3)*/ * 4.0 /*C(4,1)*/ *
                    (3.0 * p * std::pow(1 - p, 2.0)); // s=1 of C(3,1) p (1-p)^2
    CHECK(std::exp(log_sparse_pair_expectation(4, 2, p, 1, 1)) ==
          doctest::Approx(direct).epsilon(1e-12));
    CHECK(log_sparse_pair_expectation(4, 2, p, 0, 0) == ls::neg_inf); // empty B
    CHECK(log_sparse_pair_expectation(4, 2, p, 1, 99) == ls::neg_inf);
}

TEST_CASE("eval_bounds rows reproduce from inputs") {
    auto params = ModelParams::checked(30, 3, 2, 0.06, 9);
    BoundExtras extras;
    extras.b = 2;
    extras.s = 1;
    extras.tau = 2;
    extras.u_size = 10;
    extras.m = 1000;
    extras.prob = 0.5;
    extras.gamma = 1.0;
    BoundTable table = eval_bounds(params, 2, extras);
    REQUIRE(!table.rows.empty());

    auto find_row = [&](const std::string& name) -> const BoundRow& {
        for (const auto& row : table.rows)
            if (row.name == name) return row;
        REQUIRE(false);
        return table.rows[0];
    };

    const double p = params.p();
    CHECK(find_row("short_cycle_expectation_sum").log_value ==
          doctest::Approx(log_short_cycle_expectation_sum(2, 30, 3, p)));
    CHECK(find_row("double_cycle_expectation_sum").log_value ==
          doctest::Approx(log_double_cycle_expectation_sum(2, 30, 3, p)));
    CHECK(find_row("sparse_pair_expectation").log_value ==
          doctest::Approx(log_sparse_pair_expectation(30, 2, p, 2, 1)));
    CHECK(find_row("cycle_count_expectation").log_value ==
          doctest::Approx(log_cycle_count_expectation(10, 2, p)));
    CHECK(find_row("concentration_bound").log_value ==
          doctest::Approx(std::log(2.0) - 500.0 / 3.0));
    CHECK(find_row("bad_sequence_expectation").log_value ==
          doctest::Approx(log_bad_sequence_expectation(params, 2, 8)));
    // every value field is exp(log_value)
    for (const auto& row : table.rows)
        CHECK(row.value == doctest::Approx(std::exp(row.log_value)));

    // degenerate b=0 row is flagged
    BoundExtras degenerate;
    degenerate.b = 0;
    BoundTable t2 = eval_bounds(params, 2, degenerate);
    bool flagged = false;
    for (const auto& row : t2.rows)
        if (row.name == "sparse_pair_expectation" && !row.note.empty() &&
            row.note.find("degenerate") != std::string::npos)
            flagged = true;
    CHECK(flagged);
}
