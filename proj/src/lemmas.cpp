#include "horadam/lemmas.hpp"

#include "horadam/combinatorics.hpp"

namespace horadam {

namespace {

void record(LemmaSuiteResult& out, bool ok, const std::string& where) {
    ++out.checks;
    if (!ok) {
        ++out.failures;
        if (out.notes.size() < 5) out.notes.push_back("nonzero residual at " + where);
    }
}

// Column sums against term-by-term summation; c = 1 is the unshifted form.
LemmaSuiteResult column_sums() {
    LemmaSuiteResult out{"binomial column sum"};
    for (Index c = -6; c <= 6; ++c) {
        for (Index m = c - 1; m <= c + 20; ++m) {
            for (Index k = 0; k <= 14; ++k) {
                Integer direct = 0;
                for (Index j = c; j <= m; ++j) direct += binom(j - c + k, k);
                record(out, binom_column_sum(k, m, c) == direct,
                       "k=" + std::to_string(k) + " m=" + std::to_string(m) + " c=" + std::to_string(c));
            }
        }
    }
    return out;
}

// Nested ones against the DP oracle, and against the column sum one level up.
LemmaSuiteResult nested_ones_counts() {
    LemmaSuiteResult out{"nested ones"};
    const SummandSpec one{};
    for (Index c = -6; c <= 6; ++c) {
        for (Index b = c - 1; b <= c + 20; ++b) {
            for (Index s = 1; s <= 7; ++s) {
                const std::string where =
                    "s=" + std::to_string(s) + " b=" + std::to_string(b) + " c=" + std::to_string(c);
                record(out, oracle_nested(NestedSumSpec::uniform(s, b, c, one)) == Rational(nested_ones(s, b, c)),
                       where);
                record(out, nested_ones(s, b, c) == binom_column_sum(s - 1, b, c), where);
            }
        }
    }
    return out;
}

LemmaSuiteResult pascal() {
    LemmaSuiteResult out{"pascal rule"};
    for (Index m = -30; m <= 30; ++m) {
        for (Index k = 0; k <= 30; ++k) {
            record(out, binom(m, k + 1) + binom(m, k) == binom(m + 1, k + 1),
                   "m=" + std::to_string(m) + " k=" + std::to_string(k));
        }
    }
    return out;
}

}  // namespace

std::vector<LemmaSuiteResult> run_lemma_suites(const LemmaGrid& grid) {
    std::vector<LemmaSuiteResult> results = {column_sums(), nested_ones_counts(), pascal()};

    LemmaSuiteResult l3{"lucas relations L1-L4"};
    LemmaSuiteResult l4{"restricted relation"};
    for (const auto& family : grid.families) {
        const HoradamParams& P = family.params;
        if (P.discriminant().is_zero()) {
            l3.notes.push_back("skipped " + family.name + ": discriminant is zero");
            l4.notes.push_back("skipped " + family.name + ": discriminant is zero");
            continue;
        }
        for (Index r = grid.r.first; r <= grid.r.last; ++r) {
            for (Index d = grid.d.first; d <= grid.d.last; ++d) {
                for (auto which : {Lemma3Identity::L1, Lemma3Identity::L2, Lemma3Identity::L3, Lemma3Identity::L4}) {
                    record(l3, lemma3_residual(P.p(), P.q(), r, d, which).is_zero(),
                           family.name + " r=" + std::to_string(r) + " d=" + std::to_string(d));
                }
            }
        }
        if (!P.is_restricted()) continue;
        for (Index j = grid.j.first; j <= grid.j.last; ++j) {
            record(l4, lemma4_residual(P, j).is_zero(), family.name + " j=" + std::to_string(j));
        }
    }
    results.push_back(std::move(l3));
    results.push_back(std::move(l4));
    return results;
}

}  // namespace horadam
