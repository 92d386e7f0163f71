#include "doctest.h"

#include "horadam/combinatorics.hpp"
#include "oracles.hpp"

using namespace horadam;

TEST_CASE("binom values") {
    CHECK(binom(5, 3) == 10);
    CHECK(binom(-2, 3) == -4);  // (-2)(-3)(-4)/6
    for (Index m = -10; m <= 10; ++m) CHECK(binom(m, 0) == 1);
    CHECK(binom(2, 5) == 0);
    CHECK(binom(0, 1) == 0);
    CHECK(binom(-1, 4) == 1);
    CHECK(binom(-1, 5) == -1);
    CHECK(binom(200, 100).get_str() == "90548514656103281165404177077484163874504589675413336841320");
    CHECK_THROWS_AS(binom(3, -1), PreconditionViolation);
}

TEST_CASE("binom equals the falling-factorial oracle") {
    for (Index top = -25; top <= 25; ++top) {
        for (Index k = 0; k <= 20; ++k) CHECK(binom(top, k) == oracle::falling_binom(top, k));
    }
}

TEST_CASE("property: Pascal's rule on all integer tops") {
    for (Index m = -40; m <= 40; ++m) {
        for (Index k = 0; k <= 40; ++k) CHECK(binom(m, k + 1) + binom(m, k) == binom(m + 1, k + 1));
    }
}

TEST_CASE("column sums") {
    CHECK(binom_column_sum(2, 3, 1) == 10);
    CHECK(binom_column_sum(0, 5, 1) == 5);
    CHECK(binom_column_sum(3, 2, 4) == 0);
    CHECK(binom_column_sum(3, 3, 4) == 0);
    CHECK(binom_column_sum(4, -7, 0) == 0);
}

TEST_CASE("column sums equal term-by-term summation") {
    for (Index c : {-6, -1, 0, 1, 4}) {
        for (Index m = c - 20; m <= c + 20; ++m) {
            for (Index k = 0; k <= 8; ++k) {
                Integer direct = 0;
                for (Index j = c; j <= m; ++j) direct += oracle::falling_binom(j - c + k, k);
                CHECK(binom_column_sum(k, m, c) == direct);
            }
        }
    }
}

TEST_CASE("nested ones") {
    CHECK(nested_ones(2, 3, 1) == 6);
    CHECK(nested_ones(1, 7, 7) == 1);
    CHECK(nested_ones(2, 2, 0) == 6);
    CHECK(nested_ones(3, 0, 1) == 0);  // b = c - 1: empty outer sum
    CHECK_THROWS_AS(nested_ones(0, 3, 1), PreconditionViolation);
}

TEST_CASE("nested ones equal literal nested summation") {
    auto one = [](Index) { return Rational(1); };
    for (Index c : {-3, 0, 1, 5}) {
        for (Index s = 1; s <= 6; ++s) {
            std::vector<Index> limits(static_cast<std::size_t>(s), c);
            for (Index b = c - 1; b <= c + 12; ++b) {
                CHECK(Rational(nested_ones(s, b, c)) == oracle::literal_nested(b, limits, one));
            }
        }
    }
}
