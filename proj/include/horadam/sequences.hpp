#pragma once

// Horadam sequences W(a,b;p,q) and their named special cases, evaluated
// exactly at any integer subscript, plus the Binet-form view over Q(sqrt D).

#include <memory>
#include <string>

#include "horadam/exactnum.hpp"

namespace horadam {

// W_0 = a, W_1 = b, W_j = p W_{j-1} - q W_{j-2}. Requires p != 0 and q != 0.
class HoradamParams {
public:
    HoradamParams(Rational a, Rational b, Rational p, Rational q);

    static HoradamParams fibonacci() { return {0, 1, 1, -1}; }
    static HoradamParams lucas() { return {2, 1, 1, -1}; }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& p() const { return p_; }
    const Rational& q() const { return q_; }

    // p^2 - 4q
    Rational discriminant() const { return p_ * p_ - Rational(4) * q_; }

    bool is_restricted() const { return p_.is_one(); }
    bool is_gibonacci() const { return p_.is_one() && q_ == Rational(-1); }

    // Canonical text "a,b,p,q" with every entry as num/den; used as a cache key.
    std::string key() const;

    friend bool operator==(const HoradamParams&, const HoradamParams&) = default;

private:
    Rational a_;
    Rational b_;
    Rational p_;
    Rational q_;
};

class SequenceKind {
public:
    enum class Tag { W, U, V, w, G, F, L };

    static SequenceKind horadam(HoradamParams params);
    static SequenceKind lucas_u(const Rational& p, const Rational& q);
    static SequenceKind lucas_v(const Rational& p, const Rational& q);
    static SequenceKind restricted(const Rational& a, const Rational& b, const Rational& q);
    static SequenceKind gibonacci(const Rational& a, const Rational& b);
    static SequenceKind fibonacci();
    static SequenceKind lucas();

    Tag tag() const { return tag_; }
    // Every kind is a W instance.
    const HoradamParams& normalized() const { return params_; }
    std::string name() const;

private:
    SequenceKind(Tag tag, HoradamParams params) : tag_(tag), params_(std::move(params)) {}

    Tag tag_;
    HoradamParams params_;
};

namespace detail {
class TermMemo;
}

// Handle on the memoized terms of one W instance. Handles built from equal
// normalized parameters share storage, so F and U(1,-1) fill the same table.
// Lookups are internally synchronized; copies are cheap.
class Sequence {
public:
    explicit Sequence(const HoradamParams& params);
    explicit Sequence(const SequenceKind& kind) : Sequence(kind.normalized()) {}

    const HoradamParams& params() const { return params_; }

    // Forward recurrence for j >= 2, W_{-n} = (p W_{-n+1} - W_{-n+2}) / q below 0.
    Rational operator()(Index j) const;

private:
    HoradamParams params_;
    std::shared_ptr<detail::TermMemo> memo_;
};

Rational term(const SequenceKind& kind, Index j);

// Number of distinct parameter sets with a live memo table.
std::size_t memo_table_count();

// tau, sigma = (p +- sqrt D)/2 and the coefficients of W_j = A tau^j + B sigma^j.
class BinetView {
public:
    // Throws DegenerateDiscriminant when p^2 - 4q == 0.
    explicit BinetView(const HoradamParams& params);

    const HoradamParams& params() const { return params_; }
    const Rational& discriminant() const { return discriminant_; }
    const QuadExt& tau() const { return tau_; }
    const QuadExt& sigma() const { return sigma_; }
    const QuadExt& delta() const { return delta_; }
    const QuadExt& a_coef() const { return a_coef_; }
    const QuadExt& b_coef() const { return b_coef_; }

private:
    HoradamParams params_;
    Rational discriminant_;
    QuadExt tau_;
    QuadExt sigma_;
    QuadExt delta_;
    QuadExt a_coef_;
    QuadExt b_coef_;
};

// A tau^j + B sigma^j, computed entirely in Q(sqrt D).
QuadExt binet_term(const BinetView& view, Index j);

enum class Lemma3Identity { L1, L2, L3, L4 };

// LHS - RHS of
//   L1: U_{r+d} - tau^r U_d = sigma^d U_r
//   L2: U_{r+d} - sigma^r U_d = tau^d U_r
//   L3: V_{r+d} - tau^r V_d = -sigma^d U_r Delta
//   L4: V_{r+d} - sigma^r V_d = tau^d U_r Delta
// evaluated in Q(sqrt D). Always zero.
QuadExt lemma3_residual(const Rational& p, const Rational& q, Index r, Index d, Lemma3Identity which);

// LHS - RHS of A tau^j - B sigma^j = (w_{j+1} - q w_{j-1}) / Delta for a
// restricted (p = 1) sequence. Throws PreconditionViolation if p != 1.
QuadExt lemma4_residual(const HoradamParams& params, Index j);

}  // namespace horadam
