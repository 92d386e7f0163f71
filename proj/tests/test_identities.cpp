#include "doctest.h"

#include <random>

#include "horadam/identities.hpp"
#include "oracles.hpp"

using namespace horadam;

namespace {

using I = IdentityId;

InstanceRequest req(IdentityId id, HoradamParams params, Index n, Index a_n, Index c, Index r = 0, Index s = 0,
                    Index d = 0) {
    return InstanceRequest{id, std::move(params), n, a_n, c, r, s, d};
}

Rational rhs_of(const InstanceRequest& r) { return rhs(IdentityInstance::create(r)); }

// W for the instance's own parameters, and U, V for the same (p, q), all by
// plain iteration.
struct Plain {
    HoradamParams P;
    Rational W(Index j) const { return oracle::recurrence_term(P.a(), P.b(), P.p(), P.q(), j); }
    Rational U(Index j) const { return oracle::recurrence_term(0, 1, P.p(), P.q(), j); }
    Rational V(Index j) const { return oracle::recurrence_term(2, P.p(), P.p(), P.q(), j); }
};

Rational alt(Index k) { return is_odd(k) ? Rational(-1) : Rational(1); }

// Left-hand summands written out from each display, independently of lhs_spec.
std::function<Rational(Index)> display_summand(const InstanceRequest& q) {
    const Plain S{q.params};
    const Index r = q.r, s = q.s, d = q.d;
    switch (q.id) {
        case I::H:
            return [S](Index a) { return S.W(a); };
        case I::F1a:
        case I::F1b:
            return [S, s](Index a) { return S.W(3 * a + s); };
        case I::F2a:
        case I::F2b:
            return [S, s](Index a) { return alt(a) * S.W(3 * a + s); };
        case I::F3:
        case I::F3_w:
        case I::F3_G:
            return [S, r, s](Index a) { return S.W(r * a + s) / pow(S.V(r), a); };
        case I::F4:
        case I::F4_G:
            return [S, r, s](Index a) { return alt(a) * S.W(2 * r * a + s) / pow(S.P.q(), r * a); };
        case I::F5:
        case I::F5_G:
            return [S, r, s, d](Index a) { return pow(S.U(d) / S.U(r + d), a) * S.W(r * a + s); };
        case I::F7:
        case I::F7_w:
        case I::F7_G:
        case I::F7_r1d0_w:
        case I::F7_r1d0_G:
            return [S, r, s, d](Index a) {
                return pow(S.P.q(), a) * pow(S.U(r - d) / S.U(r - d + 1), a) * pow(S.W(s + d - 1) / S.W(s + d), a);
            };
        default:  // the F6 family
            return [S, r, s, d](Index a) { return pow(S.V(d) / S.V(r + d), a) * S.W(r * a + s); };
    }
}

Rational literal_lhs(const InstanceRequest& q) {
    InstanceRequest n = normalize(q);
    return oracle::literal_nested(n.a_n, std::vector<Index>(static_cast<std::size_t>(n.n), n.c), display_summand(n));
}

const HoradamParams kFib = HoradamParams::fibonacci();
const HoradamParams kLuc = HoradamParams::lucas();

}  // namespace

TEST_CASE("catalog names round-trip") {
    CHECK(all_identities().size() == 25);
    for (IdentityId id : all_identities()) CHECK(parse_identity(to_string(id)) == id);
    CHECK_FALSE(parse_identity("F9").has_value());
}

TEST_CASE("left-hand summands") {
    // F3, Fibonacci, r = 1: weight 1/V_1 = 1, summand F_{a_0}
    auto f3 = lhs_spec(IdentityInstance::create(req(I::F3, kFib, 1, 5, 1, 1, 0)));
    for (Index a = -4; a <= 8; ++a) CHECK(f3.summand()(a) == oracle::recurrence_term(0, 1, 1, -1, a));

    // F7 with r = 1, d = 0: q^{a_0} (w_{s-1}/w_s)^{a_0}
    HoradamParams w(2, 3, 1, 2);
    auto f7 = lhs_spec(IdentityInstance::create(req(I::F7, w, 1, 3, 1, 1, 2, 0)));
    for (Index a = -3; a <= 6; ++a) CHECK(f7.summand()(a) == pow(Rational(-6), a));  // q w_1/w_2 = 2 * 3/(-1)

    // F4, Fibonacci, r = 1: the signs cancel and the summand is F_{2a_0+s}
    auto f4 = lhs_spec(IdentityInstance::create(req(I::F4, kFib, 1, 5, 1, 1, 3)));
    for (Index a = -4; a <= 8; ++a) CHECK(f4.summand()(a) == oracle::recurrence_term(0, 1, 1, -1, 2 * a + 3));
}

TEST_CASE("worked examples") {
    CHECK(rhs_of(req(I::F1a, kFib, 1, 2, 1)) == Rational(10));
    CHECK(rhs_of(req(I::F1b, kLuc, 1, 1, 1)) == Rational(4));
    CHECK(rhs_of(req(I::F2a, kFib, 1, 2, 1)) == Rational(6));
    CHECK(rhs_of(req(I::F2b, kLuc, 1, 1, 1)) == Rational(-4));
    CHECK(rhs_of(req(I::F3, kFib, 2, 3, 1, 1, 0)) == Rational(7));
    CHECK(rhs_of(req(I::H, kFib, 2, 3, 1)) == Rational(7));
    CHECK(rhs_of(req(I::F4, kFib, 1, 2, 1, 1, 0)) == Rational(4));
    CHECK(rhs_of(req(I::F6b, kFib, 1, 2, 1, 1, 0, 0)) == Rational(6));
    CHECK(rhs_of(req(I::F7, kFib, 1, 2, 1, 1, 2, 0)).is_zero());
    CHECK(rhs_of(req(I::F7_r1d0_G, kFib, 1, 2, 1, 1, 2, 0)).is_zero());

    // F6b, n = 1: 32/5 - 2/5 in Q(sqrt 5)
    QuadExt ext = rhs_F6_extension(IdentityInstance::create(req(I::F6b, kFib, 1, 2, 1, 1, 0, 0)));
    CHECK(ext.surd_part().is_zero());
    CHECK(ext.rational_part() == Rational(6));

    for (const auto& q : {req(I::F1a, kFib, 1, 2, 1), req(I::F2a, kFib, 1, 2, 1), req(I::F3, kFib, 2, 3, 1, 1, 0),
                          req(I::F3, HoradamParams(2, 5, 1, 3), 2, 4, 0, 2, 1),
                          req(I::F4, HoradamParams(1, 4, 1, 2), 2, 3, 1, 1, 0),
                          req(I::F6a, kFib, 2, 2, 1, 1, 0, 0),
                          req(I::F7, HoradamParams(2, 3, 1, 2), 2, 3, 0, 3, 1, 1)}) {
        CAPTURE(to_string(q.id));
        CHECK(rhs_of(q) == literal_lhs(q));
    }
}

TEST_CASE("one-term and empty sums") {
    // n = 1, a_1 = c: the single term W_{rc+s}/V_r^c
    HoradamParams w(2, 5, 1, 3);
    for (Index c = -2; c <= 2; ++c) {
        auto q = req(I::F3, w, 1, c, c, 2, 1);
        CHECK(rhs_of(q) == Plain{w}.W(2 * c + 1) / pow(Plain{w}.V(2), c));
    }
    // a_n = c - 1: every right-hand side vanishes
    for (IdentityId id : all_identities()) {
        HoradamParams params = family_satisfies(id, HoradamParams(2, 5, 1, 3)) ? HoradamParams(2, 5, 1, 3)
                                                                               : default_params(id);
        if (id == I::H || id == I::F6_F_even || id == I::F6_F_odd) params = kFib;
        const Index n = traits(id).depth_parity == Parity::Even ? 2 : 1;
        for (Index c = -1; c <= 2; ++c) {
            auto q = req(id, params, n, c - 1, c, 2, 2, 1);
            if (traits(id).fixed_c) q.a_n = *traits(id).fixed_c - 1;
            CAPTURE(to_string(id));
            CAPTURE(c);
            CHECK(rhs_of(q).is_zero());
        }
    }
}

TEST_CASE("property: every identity matches the literal nested sum") {
    const std::vector<HoradamParams> pool = {kFib, kLuc, HoradamParams(3, 1, 1, -1), HoradamParams(1, 3, 3, 2),
                                             HoradamParams(1, 2, 1, 1), HoradamParams(2, 5, 1, 3)};
    std::mt19937_64 rng(11);
    for (IdentityId id : all_identities()) {
        int checked = 0;
        for (int attempt = 0; attempt < 4000 && checked < 25; ++attempt) {
            InstanceRequest q = req(id, pool[rng() % pool.size()], 1 + static_cast<Index>(rng() % 3), 0,
                                    static_cast<Index>(rng() % 5) - 2, static_cast<Index>(rng() % 7) - 3,
                                    static_cast<Index>(rng() % 7) - 3, static_cast<Index>(rng() % 5) - 2);
            q.a_n = q.c - 1 + static_cast<Index>(rng() % 5);
            std::optional<IdentityInstance> inst;
            try {
                inst = IdentityInstance::create(q);
            } catch (const InvalidInstance&) {
                continue;
            }
            CAPTURE(to_string(id));
            CAPTURE(q.params.key());
            CHECK(rhs(*inst) == literal_lhs(inst->request()));
            ++checked;
        }
        CHECK(checked == 25);
    }
}

TEST_CASE("property: F5 with d = r reduces to F3") {
    int points = 0;
    for (const auto& fam : {kFib, HoradamParams(1, 3, 3, 2), HoradamParams(1, 2, 1, 1), HoradamParams(2, 5, 1, 3)}) {
        for (Index r : {-2, -1, 1, 2, 3}) {
            for (Index n = 1; n <= 3; ++n) {
                for (Index c : {-1, 1}) {
                    for (Index a = c - 1; a <= c + 3; ++a) {
                        for (Index s : {0, 2}) {
                            auto f5 = req(I::F5, fam, n, a, c, r, s, r);
                            auto f3 = req(I::F3, fam, n, a, c, r, s);
                            std::optional<IdentityInstance> i5, i3;
                            try {
                                i5 = IdentityInstance::create(f5);
                                i3 = IdentityInstance::create(f3);
                            } catch (const InvalidInstance&) {
                                continue;
                            }
                            CHECK(rhs_F5(*i5) == rhs_F3(*i3));
                            ++points;
                        }
                    }
                }
            }
        }
    }
    CHECK(points >= 200);
}

TEST_CASE("property: specializations agree with their parent theorems") {
    for (IdentityId id : all_identities()) {
        const auto& t = traits(id);
        if (!t.parent) continue;
        int points = 0;
        for (const auto& fam : compatible_families(id)) {
            for (Index n = 1; n <= 4; ++n) {
                for (Index c : {-1, 0, 1}) {
                    for (Index a = c - 1; a <= c + 3; ++a) {
                        for (Index r = -2; r <= 2; ++r) {
                            for (Index s = -1; s <= 1; ++s) {
                                for (Index d = -1; d <= 1; ++d) {
                                    InstanceRequest q = normalize(req(id, fam.params, n, a, c, r, s, d));
                                    std::optional<IdentityInstance> child, parent;
                                    try {
                                        child = IdentityInstance::create(q);
                                        InstanceRequest pq = q;
                                        pq.id = *t.parent;
                                        parent = IdentityInstance::create(pq);
                                    } catch (const InvalidInstance&) {
                                        continue;
                                    }
                                    if (parent->request().r != q.r || parent->request().d != q.d) continue;
                                    CAPTURE(to_string(id));
                                    CHECK(rhs_specialization(id, *child) == rhs(*parent));
                                    ++points;
                                }
                            }
                        }
                    }
                }
            }
        }
        CAPTURE(to_string(id));
        CHECK(points >= 100);
    }
}

TEST_CASE("Ivie values through the gibonacci form of F3") {
    for (Index m = 1; m <= 10; ++m) {
        auto q = req(I::F3_G, kFib, 2, m, 1, 1, 0);
        Rational ivie = oracle::recurrence_term(0, 1, 1, -1, m + 4) - Rational(3) - Rational(m);
        CHECK(rhs_of(q) == ivie);
        CHECK(rhs_of(req(I::H, kFib, 2, m, 1)) == ivie);
    }
    for (Index m = 1; m <= 10; ++m) {
        Rational ivie = oracle::recurrence_term(0, 1, 1, -1, m + 6) - Rational(8) - Rational(3 * m) -
                        Rational(m * (m + 1) / 2);
        CHECK(rhs_of(req(I::F3_G, kFib, 3, m, 1, 1, 0)) == ivie);
    }
    for (Index m = 1; m <= 10; ++m) {
        CHECK(rhs_of(req(I::F3_G, kFib, 1, m, 1, 1, 0)) == oracle::recurrence_term(0, 1, 1, -1, m + 2) - Rational(1));
    }
}

TEST_CASE("property: F6 stays rational") {
    int points = 0;
    for (const auto& fam : builtin_families()) {
        for (Index n = 1; n <= 4; ++n) {
            for (Index r : {-2, -1, 1, 2}) {
                for (Index d = -2; d <= 2; ++d) {
                    for (Index a = 0; a <= 3; ++a) {
                        auto q = req(is_odd(n) ? I::F6b : I::F6a, fam.params, n, a, 1, r, 1, d);
                        std::optional<IdentityInstance> inst;
                        try {
                            inst = IdentityInstance::create(q);
                        } catch (const InvalidInstance&) {
                            continue;
                        }
                        CHECK(rhs_F6_extension(*inst).surd_part().is_zero());
                        ++points;
                    }
                }
            }
        }
    }
    CHECK(points > 500);
}

TEST_CASE("invalid instances name the violation") {
    auto violation = [](const InstanceRequest& q) -> std::string {
        try {
            IdentityInstance::create(q);
        } catch (const InvalidInstance& e) {
            return e.violation();
        }
        return "";
    };
    CHECK(violation(req(I::F3, HoradamParams(0, 1, 2, 2), 1, 2, 1, 2)).find("V_r = 0") != std::string::npos);
    CHECK(violation(req(I::F6a, kFib, 3, 2, 1, 1)).find("even") != std::string::npos);
    CHECK(violation(req(I::F6b, kFib, 2, 2, 1, 1)).find("odd") != std::string::npos);
    CHECK(violation(req(I::F5, kFib, 1, 2, 1, 0, 0, 1)) == "r = 0");
    CHECK(violation(req(I::F5, kFib, 1, 2, 1, 2, 0, -2)) == "r + d = 0");
    CHECK(violation(req(I::F7, kFib, 1, 2, 1, 1, 0, 2)) == "r + 1 = d");
    CHECK(violation(req(I::F3_G, HoradamParams(2, 5, 1, 3), 1, 2, 1, 1)).find("gibonacci") != std::string::npos);
    CHECK(violation(req(I::F3_w, HoradamParams(1, 3, 3, 2), 1, 2, 1, 1)).find("p = 1") != std::string::npos);
    CHECK(violation(req(I::H, kLuc, 1, 2, 1)).find("Fibonacci") != std::string::npos);
    CHECK(violation(req(I::F3, kFib, 0, 2, 1, 1)).find("positive") != std::string::npos);
    CHECK(violation(req(I::F3, kFib, 1, 2'000'000, 1, 1)).find("exceeds") != std::string::npos);
    CHECK(violation(req(I::F3, kFib, 2, 3, 1, 1)).empty());

    EvaluationReport rep = verify(req(I::F3, HoradamParams(0, 1, 2, 2), 1, 2, 1, 2));
    CHECK(rep.outcome == Outcome::Skipped);
    CHECK_FALSE(rep.lhs.has_value());
    CHECK(rep.message.find("V_r") != std::string::npos);

    // a specialization refuses instances outside its own domain
    auto f3 = IdentityInstance::create(req(I::F3, HoradamParams(2, 5, 1, 3), 1, 2, 1, 1));
    CHECK_THROWS_AS(rhs_specialization(I::F3_G, f3), InvalidInstance);
    CHECK_THROWS_AS(rhs_specialization(I::F3, f3), InvalidInstance);
}

TEST_CASE("verify reports") {
    EvaluationReport h = verify(req(I::F3, kFib, 2, 3, 1, 1, 0));
    CHECK(h.equal);
    CHECK(h.outcome == Outcome::Verified);
    CHECK(*h.lhs == Rational(7));
    CHECK(*h.rhs == Rational(7));
    CHECK(h.oracle_terms == 2 * 3);
    CHECK(h.closed_terms == 2 * 2 + 1);

    EvaluationReport f1 = verify(req(I::F1a, kFib, 1, 2, 1));
    CHECK(f1.equal);
    CHECK(*f1.lhs == Rational(10));

    // below the verified domain: classified separately
    EvaluationReport below = verify(req(I::F3, kFib, 2, -3, 1, 1, 0));
    CHECK((below.outcome == Outcome::OutsideDomainEqual || below.outcome == Outcome::OutsideDomainMismatch));
    CHECK(below.lhs->is_zero());
}

TEST_CASE("closed-form cost of F3 is n+1 terms plus n binomials") {
    for (Index n = 1; n <= 8; ++n) {
        ClosedFormCost cost;
        (void)rhs_F3(IdentityInstance::create(req(I::F3, HoradamParams(2, 5, 1, 3), n, 10, 1, 2, 1)), &cost);
        CHECK(cost.sequence_terms == static_cast<std::uint64_t>(n + 1));
        CHECK(cost.binomials == static_cast<std::uint64_t>(n));
        CHECK(cost.summand_evals() <= static_cast<std::uint64_t>(2 * n + 2));
    }
}

TEST_CASE("sweeps") {
    SweepGrid grid;
    grid.families = {{"fibonacci", kFib}, {"negative-d", HoradamParams(1, 2, 1, 1)},
                     {"generic", HoradamParams(2, 5, 1, 3)}};
    grid.n = {1, 4};
    grid.c = {-2, 1};
    grid.a_offset = {0, 8};
    grid.r = {-2, 3};
    grid.s = {-3, 2};
    auto reports = sweep(I::F3, grid, 2);
    auto summary = summarize(reports);
    CHECK(summary.mismatches == 0);
    CHECK(summary.outside_mismatch == 0);
    CHECK(summary.verified > 5000);
    CHECK(summary.total == reports.size());

    SUBCASE("empty grid") {
        SweepGrid empty = grid;
        empty.n = {3, 2};
        CHECK(sweep(I::F3, empty).empty());
        empty = grid;
        empty.families.clear();
        CHECK(sweep(I::F3, empty).empty());
    }
    SUBCASE("only invalid points") {
        SweepGrid bad;
        bad.families = {{"vr-zero", HoradamParams(0, 1, 2, 2)}};
        bad.r = {2, 2};
        auto out = summarize(sweep(I::F3, bad));
        CHECK(out.total > 0);
        CHECK(out.skipped == out.total);
        CHECK(out.ok());
    }
    SUBCASE("deterministic order and sampling") {
        SweepGrid g = grid;
        g.n = {1, 2};
        auto serial = sweep(I::F1a, g, 1);
        auto parallel = sweep(I::F1a, g, 4);
        REQUIRE(serial.size() == parallel.size());
        for (std::size_t i = 0; i < serial.size(); ++i) {
            CHECK(serial[i].instance.a_n == parallel[i].instance.a_n);
            CHECK(serial[i].instance.s == parallel[i].instance.s);
            CHECK(serial[i].lhs == parallel[i].lhs);
        }
        g.samples = 40;
        g.seed = 7;
        auto first = expand_grid(I::F5, g);
        auto second = expand_grid(I::F5, g);
        REQUIRE(first.size() == 40);
        for (std::size_t i = 0; i < first.size(); ++i) {
            CHECK(first[i].a_n == second[i].a_n);
            CHECK(first[i].d == second[i].d);
        }
    }
    SUBCASE("unused axes collapse") {
        SweepGrid g = grid;
        g.n = {1, 1};
        auto points = expand_grid(I::F1a, g);
        for (const auto& p : points) {
            CHECK(p.r == 0);
            CHECK(p.d == 0);
        }
        for (const auto& p : expand_grid(I::H, g)) CHECK(p.c == 1);
    }
}
