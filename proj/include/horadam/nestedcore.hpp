#pragma once

// Nested sums
//
//     sum_{a_{n-1}=c_{n-1}}^{a_n} sum_{a_{n-2}=c_{n-2}}^{a_{n-1}} ... sum_{a_0=c_0}^{a_1} t(a_0)
//
// evaluated two ways: by exact prefix-sum dynamic programming (the oracle and
// its naive enumeration witness), and, for geometric summands x^{a_0}, by the
// closed forms built on the master identity
//
//     ((x-1)/x)^n * S = x^{a_n} - x^{c-1} sum_{j=0}^{n-1} ((x-1)/x)^j binom(a_n+j-c, j).
//
// The closed forms are generic over the exact field (Rational or QuadExt) so
// the Binet-side derivations can be replayed numerically.

#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "horadam/combinatorics.hpp"
#include "horadam/exactnum.hpp"
#include "horadam/sequences.hpp"

namespace horadam {

template <class T>
concept ExactField = requires(const T& a, const T& b, const Rational& r, Index e) {
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { a * b } -> std::convertible_to<T>;
    { a / b } -> std::convertible_to<T>;
    { a * r } -> std::convertible_to<T>;
    { -a } -> std::convertible_to<T>;
    { pow(a, e) } -> std::convertible_to<T>;
    { one_like(a) } -> std::convertible_to<T>;
    { a.is_zero() } -> std::convertible_to<bool>;
};

template <ExactField T>
struct GeometricArgs {
    T x;
    T y;
    Index n = 1;
    Index a_n = 0;
    Index c = 1;
};

namespace detail {

template <ExactField T>
bool is_one(const T& x) {
    return (x - one_like(x)).is_zero();
}

inline void require_depth(Index n) {
    if (n < 1) throw PreconditionViolation("nesting depth must be positive, got " + std::to_string(n));
}

template <ExactField T>
void require_geometric(const GeometricArgs<T>& args) {
    require_depth(args.n);
    if (args.x.is_zero()) throw PoleError("geometric form requires x != 0");
    if (args.y.is_zero()) throw PoleError("geometric form requires y != 0");
}

}  // namespace detail

// sum_{k=1}^{m} x^k = (x^{m+1} - x)/(x - 1); 0 when m < 1.
template <ExactField T>
T geom_sum(const T& x, Index m) {
    if (x.is_zero()) throw PoleError("geom_sum requires x != 0");
    if (detail::is_one(x)) throw PoleError("geom_sum has a pole at x = 1; count terms instead");
    if (m < 1) return x - x;
    return (pow(x, checked_add(m, 1)) - x) / (x - one_like(x));
}

// x^{a_n} - x^{c-1} sum_{j=0}^{n-1} ((x-1)/x)^j binom(a_n+j-c, j), which equals
// ((x-1)/x)^n times the uniform-limit nested sum of x^{a_0}.
template <ExactField T>
T master_E(const T& x, Index n, Index a_n, Index c) {
    detail::require_depth(n);
    if (x.is_zero() || detail::is_one(x)) throw PoleError("master identity requires x not in {0, 1}");
    const T ratio = (x - one_like(x)) / x;
    T sum = x - x;
    T ratio_pow = one_like(x);
    for (Index j = 0; j < n; ++j) {
        sum += ratio_pow * Rational(binom(checked_sub(checked_add(a_n, j), c), j));
        ratio_pow *= ratio;
    }
    return pow(x, a_n) - pow(x, checked_sub(c, 1)) * sum;
}

// Uniform-limit nested sum of (x/y)^{a_0}:
//   (x/(x-y))^n (x/y)^{a_n} - sum_{j=0}^{n-1} (x/(x-y))^{n-j} (x/y)^{c-1} binom(a_n+j-c, j)
template <ExactField T>
T f_closed(const GeometricArgs<T>& args) {
    detail::require_geometric(args);
    const T diff = args.x - args.y;
    if (diff.is_zero()) throw PoleError("f form has a pole at x = y");
    const T t = args.x / diff;
    const T ratio = args.x / args.y;
    const T base = pow(ratio, checked_sub(args.c, 1));
    T sum = t - t;
    for (Index j = 0; j < args.n; ++j) {
        sum += pow(t, args.n - j) * base *
               Rational(binom(checked_sub(checked_add(args.a_n, j), args.c), j));
    }
    return pow(t, args.n) * pow(ratio, args.a_n) - sum;
}

// Uniform-limit nested sum of (-1)^{a_0} (x/y)^{a_0}:
//   (-1)^{a_n} (x/(x+y))^n (x/y)^{a_n}
//     + (-1)^c sum_{j=0}^{n-1} (x/(x+y))^{n-j} (x/y)^{c-1} binom(a_n+j-c, j)
template <ExactField T>
T g_closed(const GeometricArgs<T>& args) {
    detail::require_geometric(args);
    const T total = args.x + args.y;
    if (total.is_zero()) throw PoleError("g form has a pole at x = -y");
    const T t = args.x / total;
    const T ratio = args.x / args.y;
    const T base = pow(ratio, checked_sub(args.c, 1));
    T sum = t - t;
    for (Index j = 0; j < args.n; ++j) {
        sum += pow(t, args.n - j) * base *
               Rational(binom(checked_sub(checked_add(args.a_n, j), args.c), j));
    }
    T lead = pow(t, args.n) * pow(ratio, args.a_n);
    if (is_odd(args.a_n)) lead = -lead;
    if (is_odd(args.c)) sum = -sum;
    return lead + sum;
}

// f_closed with the correction sum split into even j (= 2i) and odd j (= 2i-1)
// parts, i over 0..floor((n-1)/2) and 1..ceil((n-1)/2) respectively.
template <ExactField T>
T f_closed_parity_split(const GeometricArgs<T>& args) {
    detail::require_geometric(args);
    const T diff = args.x - args.y;
    if (diff.is_zero()) throw PoleError("f form has a pole at x = y");
    const T t = args.x / diff;
    const T ratio = args.x / args.y;
    const T base = pow(ratio, checked_sub(args.c, 1));
    const Index n = args.n;
    T even = t - t;
    for (Index i = 0; i <= (n - 1) / 2; ++i) {
        even += pow(t, n - 2 * i) * base *
                Rational(binom(checked_sub(checked_add(args.a_n, 2 * i), args.c), 2 * i));
    }
    T odd = t - t;
    for (Index i = 1; i <= n / 2; ++i) {  // n/2 == ceil((n-1)/2)
        odd += pow(t, n - 2 * i + 1) * base *
               Rational(binom(checked_sub(checked_add(args.a_n, 2 * i - 1), args.c), 2 * i - 1));
    }
    return pow(t, n) * pow(ratio, args.a_n) - even - odd;
}

template <class T>
struct OracleResult {
    T value;
    // DP: innermost term evaluations plus one accumulation per window point at
    // each outer level. Naive: innermost term evaluations (one per index tuple).
    std::uint64_t summand_evals = 0;
};

// Lower limit c_i of the sum over a_i, i = 0..depth-1.
using LowerLimits = std::vector<Index>;

inline LowerLimits uniform_limits(Index depth, Index c) {
    detail::require_depth(depth);
    return LowerLimits(static_cast<std::size_t>(depth), c);
}

// Prefix-sum evaluation: S_0(m) = sum_{a_0=c_0}^{m} t(a_0),
// S_k(m) = sum_{j=c_k}^{m} S_{k-1}(j); result S_{n-1}(upper).
// Sums whose upper limit is below the lower limit are empty (zero).
template <class T, class Term>
OracleResult<T> oracle_nested_dp(Index upper, std::span<const Index> limits, Term&& term, const T& zero) {
    if (limits.empty()) throw PreconditionViolation("nested sum needs at least one level");
    OracleResult<T> out{zero, 0};
    Index lo = limits[0];
    for (Index c : limits) lo = std::min(lo, c);
    if (upper < limits.back() || upper < lo) return out;

    const auto width = static_cast<std::size_t>(checked_add(checked_sub(upper, lo), 1));
    std::vector<T> partial(width, zero);
    T acc = zero;
    for (std::size_t i = 0; i < width; ++i) {
        Index m = lo + static_cast<Index>(i);
        if (m >= limits[0]) {
            acc += term(m);
            ++out.summand_evals;
        }
        partial[i] = acc;
    }
    for (std::size_t level = 1; level < limits.size(); ++level) {
        acc = zero;
        for (std::size_t i = 0; i < width; ++i) {
            Index m = lo + static_cast<Index>(i);
            if (m >= limits[level]) {
                acc += partial[i];
                ++out.summand_evals;
            }
            partial[i] = acc;
        }
    }
    out.value = partial.back();
    return out;
}

namespace detail {

template <class T, class Term>
void enumerate_nested(std::size_t level, Index upper, std::span<const Index> limits, Term& term, T& acc,
                      std::uint64_t& evals) {
    for (Index a = limits[level]; a <= upper; ++a) {
        if (level == 0) {
            acc += term(a);
            ++evals;
        } else {
            enumerate_nested(level - 1, a, limits, term, acc, evals);
        }
    }
}

}  // namespace detail

// Number of index tuples the literal enumeration visits.
Integer nested_tuple_count(Index upper, std::span<const Index> limits);

inline constexpr std::uint64_t kDefaultNaiveCap = 2'000'000;

// Literal recursive enumeration over every index tuple. Throws CapExceeded
// when the tuple count exceeds `cap`.
template <class T, class Term>
OracleResult<T> oracle_nested_enumerate(Index upper, std::span<const Index> limits, Term&& term, const T& zero,
                                        std::uint64_t cap = kDefaultNaiveCap) {
    if (limits.empty()) throw PreconditionViolation("nested sum needs at least one level");
    Integer tuples = nested_tuple_count(upper, limits);
    if (tuples > Integer(std::to_string(cap))) {
        throw CapExceeded("naive enumeration would visit " + tuples.get_str() + " tuples (cap " +
                          std::to_string(cap) + ")");
    }
    OracleResult<T> out{zero, 0};
    detail::enumerate_nested(limits.size() - 1, upper, limits, term, out.value, out.summand_evals);
    return out;
}

// Right-hand side of the varied-lower-limit reduction
//
//   ((x-1)/x)^n S = x^{a_n} - x^{c_{n-1}-1}
//       - sum_{j=1}^{n-1} ((x-1)/x)^j x^{c_{n-j-1}-1} N_j
//
// where N_j is the j-fold nested sum of 1 over the outer limits c_{n-1}..c_{n-j},
// evaluated by the DP oracle. The reduction is exact when every inner sum is
// well formed: c_i <= c_{i+1} + 1 and a_n >= c_{n-1} - 1. Outside that domain a
// PreconditionViolation is raised.
template <ExactField T>
T varied_limit_reduction(const T& x, Index upper, std::span<const Index> limits) {
    if (limits.empty()) throw PreconditionViolation("nested sum needs at least one level");
    if (x.is_zero() || detail::is_one(x)) throw PoleError("reduction requires x not in {0, 1}");
    const std::size_t n = limits.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (limits[i] > limits[i + 1] + 1) {
            throw PreconditionViolation("reduction needs c_i <= c_{i+1} + 1 at level " + std::to_string(i));
        }
    }
    if (upper < limits[n - 1] - 1) {
        throw PreconditionViolation("reduction needs a_n >= c_{n-1} - 1");
    }
    const T ratio = (x - one_like(x)) / x;
    T result = pow(x, upper) - pow(x, checked_sub(limits[n - 1], 1));
    T ratio_pow = ratio;
    for (std::size_t j = 1; j < n; ++j) {
        std::span<const Index> outer = limits.subspan(n - j, j);
        auto ones = oracle_nested_dp(upper, outer, [](Index) { return Rational(1); }, Rational(0));
        result -= ratio_pow * pow(x, checked_sub(limits[n - j - 1], 1)) * ones.value;
        ratio_pow *= ratio;
    }
    return result;
}

// Innermost summand of an identity's left-hand side:
//   (+-1)^{a_0} * weight^{a_0} * W_{scale*a_0 + offset}
// with the sequence factor omitted (taken as 1) when `sequence` is empty.
struct SummandSpec {
    std::optional<HoradamParams> sequence;
    Index index_scale = 1;
    Index index_offset = 0;
    Rational weight_base = 1;
    bool alternating = false;

    Rational operator()(Index a0) const;
    std::string describe() const;
};

class NestedSumSpec {
public:
    NestedSumSpec(Index upper, LowerLimits limits, SummandSpec summand);

    static NestedSumSpec uniform(Index depth, Index upper, Index c, SummandSpec summand) {
        return {upper, uniform_limits(depth, c), std::move(summand)};
    }

    Index depth() const { return static_cast<Index>(limits_.size()); }
    Index upper() const { return upper_; }
    const LowerLimits& limits() const { return limits_; }
    const SummandSpec& summand() const { return summand_; }

private:
    Index upper_;
    LowerLimits limits_;
    SummandSpec summand_;
};

Rational oracle_nested(const NestedSumSpec& spec);
OracleResult<Rational> oracle_nested_counted(const NestedSumSpec& spec);
OracleResult<Rational> oracle_nested_naive(const NestedSumSpec& spec, std::uint64_t cap = kDefaultNaiveCap);

}  // namespace horadam
