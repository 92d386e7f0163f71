#include "doctest.h"

#include <random>

#include "horadam/nestedcore.hpp"
#include "oracles.hpp"

using namespace horadam;

namespace {

std::function<Rational(Index)> power_term(Rational x, bool alternating = false) {
    return [x, alternating](Index a) {
        Rational v = pow(x, a);
        return alternating && is_odd(a) ? -v : v;
    };
}

Rational literal_uniform(Index n, Index upper, Index c, const std::function<Rational(Index)>& t) {
    return oracle::literal_nested(upper, std::vector<Index>(static_cast<std::size_t>(n), c), t);
}

}  // namespace

TEST_CASE("geometric sum") {
    CHECK(geom_sum(Rational(2), 3) == Rational(14));
    CHECK(geom_sum(Rational(2), 0).is_zero());
    CHECK(geom_sum(Rational(7), -4).is_zero());
    CHECK(geom_sum(Rational(1, 2), 2) == Rational(3, 4));
    CHECK_THROWS_AS(geom_sum(Rational(1), 3), PoleError);
    CHECK_THROWS_AS(geom_sum(Rational(0), 3), PoleError);
}

TEST_CASE("master identity examples") {
    CHECK(master_E(Rational(2), 1, 3, 1) == Rational(7));
    CHECK(Rational(1, 2) * literal_uniform(1, 3, 1, power_term(2)) == Rational(7));
    CHECK(master_E(Rational(3), 2, 2, 1) == Rational(20, 3));
    CHECK(Rational(4, 9) * literal_uniform(2, 2, 1, power_term(3)) == Rational(20, 3));
    // single-term sum: x^c - x^{c-1} == ((x-1)/x) x^c
    Rational x(5, 7);
    for (Index c = -3; c <= 3; ++c) {
        CHECK(master_E(x, 1, c, c) == (x - Rational(1)) / x * pow(x, c));
    }
    CHECK_THROWS_AS(master_E(Rational(1), 2, 3, 1), PoleError);
    CHECK_THROWS_AS(master_E(Rational(0), 2, 3, 1), PoleError);
    CHECK_THROWS_AS(master_E(Rational(2), 0, 3, 1), PreconditionViolation);
}

TEST_CASE("property: master identity over the full grid") {
    int points = 0;
    for (Rational x : {Rational(2), Rational(3), Rational(1, 2), Rational(-2), Rational(5, 3)}) {
        const Rational ratio = (x - Rational(1)) / x;
        for (Index n = 1; n <= 5; ++n) {
            for (Index c : {-2, 0, 1, 3}) {
                for (Index a = c; a <= c + 10; ++a) {
                    auto lhs = oracle_nested_dp(a, uniform_limits(n, c), power_term(x), Rational(0));
                    CHECK(master_E(x, n, a, c) == pow(ratio, n) * lhs.value);
                    ++points;
                }
            }
        }
    }
    CHECK(points == 1100);
}

TEST_CASE("f and g closed forms") {
    CHECK(f_closed(GeometricArgs<Rational>{2, 1, 1, 3, 1}) == Rational(14));
    CHECK(f_closed(GeometricArgs<Rational>{1, 2, 1, 1, 1}) == Rational(1, 2));
    CHECK(f_closed(GeometricArgs<Rational>{3, 2, 2, 2, 0}) == literal_uniform(2, 2, 0, power_term(Rational(3, 2))));

    CHECK(g_closed(GeometricArgs<Rational>{2, 1, 1, 2, 1}) == Rational(2));
    CHECK(g_closed(GeometricArgs<Rational>{1, 3, 2, 3, 1}) ==
          literal_uniform(2, 3, 1, power_term(Rational(1, 3), true)));
    for (Index c = -3; c <= 3; ++c) {
        Rational x(4), y(3);
        CHECK(g_closed(GeometricArgs<Rational>{x, y, 1, c, c}) == Rational(sign_power(c)) * pow(x / y, c));
    }

    CHECK_THROWS_AS(f_closed(GeometricArgs<Rational>{2, 2, 1, 3, 1}), PoleError);
    CHECK_THROWS_AS(g_closed(GeometricArgs<Rational>{2, -2, 1, 3, 1}), PoleError);
    CHECK_THROWS_AS(f_closed(GeometricArgs<Rational>{0, 2, 1, 3, 1}), PoleError);
}

TEST_CASE("property: f, g and parity split agree with the oracle") {
    const std::vector<std::pair<Rational, Rational>> pairs = {
        {2, 1}, {1, 2}, {3, 2}, {-1, 3}, {Rational(5, 2), Rational(-1, 3)}, {7, -4}};
    for (const auto& [x, y] : pairs) {
        for (Index n = 1; n <= 5; ++n) {
            for (Index c : {-2, 0, 1, 3}) {
                for (Index a = c - 1; a <= c + 7; ++a) {
                    GeometricArgs<Rational> args{x, y, n, a, c};
                    auto f_lhs = oracle_nested_dp(a, uniform_limits(n, c), power_term(x / y), Rational(0));
                    auto g_lhs = oracle_nested_dp(a, uniform_limits(n, c), power_term(x / y, true), Rational(0));
                    CHECK(f_closed(args) == f_lhs.value);
                    CHECK(f_closed_parity_split(args) == f_closed(args));
                    if (!(x + y).is_zero()) CHECK(g_closed(args) == g_lhs.value);
                }
            }
        }
    }
    GeometricArgs<Rational> args{3, 2, 3, 4, 1};
    CHECK(f_closed_parity_split(args) == f_closed(args));
}

TEST_CASE("closed forms over Q(sqrt D) match the oracle") {
    // f(tau^2, 3) with the golden-ratio tau: summand (tau^2/3)^{a_0}.
    const QuadExt tau(Rational(1, 2), Rational(1, 2), 5);
    const QuadExt x = pow(tau, 2);
    const QuadExt y = QuadExt::from_rational(3, 5);
    const QuadExt zero = QuadExt::from_rational(0, 5);
    for (Index n = 1; n <= 4; ++n) {
        for (Index a = 0; a <= 6; ++a) {
            GeometricArgs<QuadExt> args{x, y, n, a, 1};
            auto lhs = oracle_nested_dp(a, uniform_limits(n, 1), [&](Index k) { return pow(x / y, k); }, zero);
            CHECK(f_closed(args) == lhs.value);
            CHECK(f_closed_parity_split(args) == lhs.value);
            auto glhs = oracle_nested_dp(
                a, uniform_limits(n, 1), [&](Index k) { return is_odd(k) ? -pow(x / y, k) : pow(x / y, k); }, zero);
            CHECK(g_closed(args) == glhs.value);
        }
    }
}

TEST_CASE("oracle on spec-built summands") {
    SummandSpec fib{HoradamParams::fibonacci(), 1, 0, 1, false};
    CHECK(oracle_nested(NestedSumSpec::uniform(2, 3, 1, fib)) == Rational(7));
    CHECK(oracle_nested(NestedSumSpec::uniform(3, 0, 1, fib)).is_zero());
    CHECK(oracle_nested(NestedSumSpec::uniform(1, -5, 1, fib)).is_zero());

    SummandSpec ones{};
    for (Index s = 1; s <= 5; ++s) {
        for (Index c : {-2, 0, 3}) {
            for (Index b = c - 1; b <= c + 9; ++b) {
                CHECK(oracle_nested(NestedSumSpec::uniform(s, b, c, ones)) == Rational(nested_ones(s, b, c)));
            }
        }
    }
    CHECK_THROWS_AS(NestedSumSpec(3, {}, ones), PreconditionViolation);
    CHECK_THROWS_AS(NestedSumSpec::uniform(1, 3, 1, SummandSpec{std::nullopt, 1, 0, 0, false}),
                    PreconditionViolation);
}

TEST_CASE("oracle summand counts") {
    SummandSpec ones{};
    auto dp = oracle_nested_counted(NestedSumSpec::uniform(3, 6, 1, ones));
    CHECK(dp.summand_evals == 3 * 6);
    auto naive = oracle_nested_naive(NestedSumSpec::uniform(3, 6, 1, ones));
    CHECK(naive.value == Rational(56));
    CHECK(naive.summand_evals == 56);
    auto empty = oracle_nested_naive(NestedSumSpec::uniform(2, -1, 1, ones));
    CHECK(empty.value.is_zero());
    CHECK(empty.summand_evals == 0);
    CHECK_THROWS_AS(oracle_nested_naive(NestedSumSpec::uniform(6, 40, 1, ones), 1000), CapExceeded);
}

TEST_CASE("property: DP oracle equals naive enumeration and the literal sum") {
    std::mt19937_64 rng(99);
    const std::vector<HoradamParams> families = {HoradamParams::fibonacci(), HoradamParams(1, 2, 1, 1),
                                                 HoradamParams(2, 5, 1, 3), HoradamParams(1, 3, 3, 2)};
    for (int trial = 0; trial < 1200; ++trial) {
        Index n = 1 + static_cast<Index>(rng() % 4);
        std::vector<Index> limits(static_cast<std::size_t>(n));
        for (auto& c : limits) c = static_cast<Index>(rng() % 7) - 3;
        Index upper = static_cast<Index>(rng() % 12) - 4;
        SummandSpec summand{families[rng() % families.size()], static_cast<Index>(rng() % 5) - 2,
                            static_cast<Index>(rng() % 7) - 3, oracle::random_rational(rng, 3, 3),
                            (rng() & 1U) != 0};
        if (summand.weight_base.is_zero()) summand.weight_base = 1;
        NestedSumSpec spec(upper, limits, summand);
        auto dp = oracle_nested_counted(spec);
        auto naive = oracle_nested_naive(spec);
        CHECK(dp.value == naive.value);
        CHECK(naive.summand_evals == nested_tuple_count(upper, limits).get_ui());
        if (trial % 10 == 0) CHECK(dp.value == oracle::literal_nested(upper, limits, summand));
    }
}

TEST_CASE("varied lower limits") {
    auto check = [](const Rational& x, Index upper, std::vector<Index> limits) {
        auto lhs = oracle_nested_dp(upper, limits, power_term(x), Rational(0));
        Rational scale = pow((x - Rational(1)) / x, static_cast<Index>(limits.size()));
        CHECK(varied_limit_reduction(x, upper, limits) == scale * lhs.value);
        CHECK(lhs.value == oracle::literal_nested(upper, limits, power_term(x)));
    };
    check(Rational(2), 3, {1, 2});
    check(Rational(3, 2), 4, {0, 1, 2});
    check(Rational(-3), 5, {2, 1, 0, -1});
    check(Rational(1, 3), 6, {3, 2, 4, 5});

    // uniform limits reproduce the master identity
    for (Index n = 1; n <= 4; ++n) {
        for (Index a = 0; a <= 6; ++a) {
            CHECK(varied_limit_reduction(Rational(5, 3), a, uniform_limits(n, 1)) ==
                  master_E(Rational(5, 3), n, a, 1));
        }
    }
    std::vector<Index> bad = {4, 1};
    CHECK_THROWS_AS(varied_limit_reduction(Rational(2), 5, bad), PreconditionViolation);
    std::vector<Index> ok = {1, 2};
    CHECK_THROWS_AS(varied_limit_reduction(Rational(1), 5, ok), PoleError);
}

TEST_CASE("property: varied-limit reduction on random well-formed limits") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        Index n = 1 + static_cast<Index>(rng() % 4);
        std::vector<Index> limits(static_cast<std::size_t>(n));
        limits.back() = static_cast<Index>(rng() % 5) - 2;
        for (Index i = n - 2; i >= 0; --i) {
            limits[static_cast<std::size_t>(i)] = limits[static_cast<std::size_t>(i + 1)] + 1 -
                                                  static_cast<Index>(rng() % 4);
        }
        Index upper = limits.back() - 1 + static_cast<Index>(rng() % 8);
        Rational x = oracle::random_rational(rng, 5, 4);
        if (x.is_zero() || x.is_one()) continue;
        auto lhs = oracle_nested_dp(upper, limits, power_term(x), Rational(0));
        CHECK(varied_limit_reduction(x, upper, limits) == pow((x - Rational(1)) / x, n) * lhs.value);
    }
}
