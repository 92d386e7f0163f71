#pragma once

// Exact scalars: arbitrary-precision integers and rationals (GMP backed), and
// the quadratic extension Q(sqrt D) used for Binet-form computations.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "horadam/errors.hpp"

namespace horadam {

using Integer = mpz_class;

// Sequence subscripts, nesting depths and exponents. Values are arbitrary
// precision; positions are machine integers with overflow-checked arithmetic.
using Index = std::int64_t;

Index checked_add(Index a, Index b);
Index checked_sub(Index a, Index b);
Index checked_mul(Index a, Index b);

// Product of linear terms, e.g. r * (a_n + 2n) + s, with overflow checks.
inline Index affine(Index scale, Index x, Index offset) {
    return checked_add(checked_mul(scale, x), offset);
}

inline bool is_odd(Index k) { return (k % 2) != 0; }

// (-1)^k
inline int sign_power(Index k) { return is_odd(k) ? -1 : 1; }

class Rational {
public:
    Rational() = default;
    Rational(int v) : value_(v) {}                     // NOLINT(google-explicit-constructor)
    Rational(long v) : value_(v) {}                    // NOLINT(google-explicit-constructor)
    Rational(long long v) : value_(Integer(std::to_string(v))) {}  // NOLINT
    Rational(const Integer& v) : value_(v) {}          // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den);

    // Accepts "n", "-n", "n/d" with optional surrounding whitespace.
    static Rational parse(std::string_view text);

    Integer numerator() const { return value_.get_num(); }
    Integer denominator() const { return value_.get_den(); }

    bool is_zero() const { return sgn(value_) == 0; }
    bool is_one() const { return value_ == 1; }
    bool is_integer() const { return value_.get_den() == 1; }
    int sign() const { return sgn(value_); }

    // Always "num/den", including for integers ("7/1").
    std::string to_string() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    const mpq_class& raw() const { return value_; }

private:
    explicit Rational(mpq_class v) : value_(std::move(v)) {}

    mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& x);

// x^e; 0^0 == 1, 0^e for e < 0 throws ZeroToNegativePower.
Rational pow(const Rational& x, Index e);

Rational one_like(const Rational&);

// u + v sqrt(D). D is carried by value; operands must agree on it.
// When D is a rational square the algebra is the split ring Q x Q rather than
// a field; inverting an element of zero norm then throws DivisionByZero.
class QuadExt {
public:
    QuadExt(Rational u, Rational v, Rational discriminant);

    static QuadExt from_rational(const Rational& u, const Rational& discriminant) {
        return QuadExt(u, Rational(0), discriminant);
    }
    // sqrt(D) itself.
    static QuadExt root(const Rational& discriminant) {
        return QuadExt(Rational(0), Rational(1), discriminant);
    }

    const Rational& rational_part() const { return u_; }
    const Rational& surd_part() const { return v_; }
    const Rational& discriminant() const { return d_; }

    bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
    bool is_rational() const { return v_.is_zero(); }

    QuadExt conj() const { return QuadExt(u_, -v_, d_); }
    // u^2 - D v^2
    Rational norm() const { return u_ * u_ - d_ * v_ * v_; }

    std::string to_string() const;

    QuadExt operator-() const { return QuadExt(-u_, -v_, d_); }
    QuadExt& operator+=(const QuadExt& o);
    QuadExt& operator-=(const QuadExt& o);
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o);

    QuadExt& operator+=(const Rational& o);
    QuadExt& operator-=(const Rational& o);
    QuadExt& operator*=(const Rational& o);
    QuadExt& operator/=(const Rational& o);

    friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
    friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
    friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
    friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }

    friend QuadExt operator+(QuadExt a, const Rational& b) { return a += b; }
    friend QuadExt operator-(QuadExt a, const Rational& b) { return a -= b; }
    friend QuadExt operator*(QuadExt a, const Rational& b) { return a *= b; }
    friend QuadExt operator/(QuadExt a, const Rational& b) { return a /= b; }
    friend QuadExt operator+(const Rational& a, QuadExt b) { return b += a; }
    friend QuadExt operator*(const Rational& a, QuadExt b) { return b *= a; }
    friend QuadExt operator-(const Rational& a, const QuadExt& b) { return -b + a; }
    friend QuadExt operator/(const Rational& a, const QuadExt& b) {
        return from_rational(a, b.d_) / b;
    }

    // Structural equality; values with different D compare unequal.
    friend bool operator==(const QuadExt& a, const QuadExt& b) {
        return a.d_ == b.d_ && a.u_ == b.u_ && a.v_ == b.v_;
    }

private:
    void require_same_discriminant(const QuadExt& o, const char* op) const;

    Rational u_;
    Rational v_;
    Rational d_;
};

std::ostream& operator<<(std::ostream& os, const QuadExt& x);

QuadExt pow(const QuadExt& x, Index e);

QuadExt one_like(const QuadExt& x);

}  // namespace horadam
