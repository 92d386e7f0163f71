#pragma once

// Test-only reference computations. Nothing here calls into the library's
// evaluation paths beyond the Rational scalar type itself.

#include <functional>
#include <random>
#include <vector>

#include "horadam/exactnum.hpp"

namespace oracle {

using horadam::Index;
using horadam::Integer;
using horadam::Rational;

// top (top-1) ... (top-k+1) / k!
inline Integer falling_binom(Index top, Index k) {
    Integer num = 1;
    Integer den = 1;
    for (Index i = 0; i < k; ++i) {
        num *= Integer(std::to_string(top - i));
        den *= Integer(std::to_string(i + 1));
    }
    return num / den;
}

// Plain iteration of W_j = p W_{j-1} - q W_{j-2} (and its backward form),
// no caching.
inline Rational recurrence_term(const Rational& a, const Rational& b, const Rational& p, const Rational& q,
                                Index j) {
    if (j == 0) return a;
    if (j == 1) return b;
    if (j > 1) {
        Rational prev2 = a, prev = b;
        for (Index k = 2; k <= j; ++k) {
            Rational next = p * prev - q * prev2;
            prev2 = prev;
            prev = next;
        }
        return prev;
    }
    // W_{k-2} = (p W_{k-1} - W_k) / q
    Rational hi = b, lo = a;  // W_1, W_0
    for (Index k = 0; k > j; --k) {
        Rational next = (p * lo - hi) / q;
        hi = lo;
        lo = next;
    }
    return lo;
}

// Literal nested summation with explicit per-level lower limits
// (limits[i] is the lower limit of a_i). Empty ranges contribute zero.
inline Rational literal_nested(Index upper, const std::vector<Index>& limits,
                               const std::function<Rational(Index)>& term, std::size_t level) {
    Rational total = 0;
    for (Index a = limits[level]; a <= upper; ++a) {
        total += level == 0 ? term(a) : literal_nested(a, limits, term, level - 1);
    }
    return total;
}

inline Rational literal_nested(Index upper, const std::vector<Index>& limits,
                               const std::function<Rational(Index)>& term) {
    return literal_nested(upper, limits, term, limits.size() - 1);
}

inline Rational random_rational(std::mt19937_64& rng, int span = 9, int max_den = 5) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, max_den);
    return Rational(Integer(num(rng)), Integer(den(rng)));
}

}  // namespace oracle
