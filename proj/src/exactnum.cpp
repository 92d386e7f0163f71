#include "horadam/exactnum.hpp"

#include <cctype>
#include <ostream>

namespace horadam {

Index checked_add(Index a, Index b) {
    Index out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw IndexOverflow("index arithmetic overflow in addition");
    }
    return out;
}

Index checked_sub(Index a, Index b) {
    Index out = 0;
    if (__builtin_sub_overflow(a, b, &out)) {
        throw IndexOverflow("index arithmetic overflow in subtraction");
    }
    return out;
}

Index checked_mul(Index a, Index b) {
    Index out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw IndexOverflow("index arithmetic overflow in multiplication");
    }
    return out;
}

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) {
        throw DivisionByZero("rational with zero denominator: " + num.get_str() + "/0");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
    s = trim(s);
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty()) {
        throw ParseError("not a rational: '" + std::string(whole) + "'");
    }
    for (char ch : digits) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            throw ParseError("not a rational: '" + std::string(whole) + "'");
        }
    }
    std::string text(s);
    if (text.front() == '+') text.erase(0, 1);
    return Integer(text, 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view body = trim(text);
    auto slash = body.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(body, text));
    }
    Integer num = parse_integer(body.substr(0, slash), text);
    Integer den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) {
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

std::string Rational::to_string() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational& Rational::operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) {
        throw DivisionByZero("division by zero: " + to_string() + " / 0");
    }
    value_ /= o.value_;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.to_string(); }

Rational pow(const Rational& x, Index e) {
    if (e == 0) return Rational(1);
    if (x.is_zero()) {
        if (e < 0) {
            throw ZeroToNegativePower("0 raised to negative power " + std::to_string(e));
        }
        return Rational(0);
    }
    // |e| fits in unsigned long for every Index except INT64_MIN.
    if (e == INT64_MIN) throw IndexOverflow("exponent out of range");
    unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
    Integer num;
    Integer den;
    mpz_pow_ui(num.get_mpz_t(), x.raw().get_num_mpz_t(), mag);
    mpz_pow_ui(den.get_mpz_t(), x.raw().get_den_mpz_t(), mag);
    // numerator and denominator stay coprime; the constructor re-canonicalizes
    // only to fix the sign after inversion.
    return e > 0 ? Rational(num, den) : Rational(den, num);
}

Rational one_like(const Rational&) { return Rational(1); }

QuadExt::QuadExt(Rational u, Rational v, Rational discriminant)
    : u_(std::move(u)), v_(std::move(v)), d_(std::move(discriminant)) {
    if (d_.is_zero()) {
        throw DegenerateDiscriminant("quadratic extension requires D != 0");
    }
}

void QuadExt::require_same_discriminant(const QuadExt& o, const char* op) const {
    if (d_ != o.d_) {
        throw DiscriminantMismatch(std::string("cannot ") + op + " values in Q(sqrt " +
                                   d_.to_string() + ") and Q(sqrt " + o.d_.to_string() + ")");
    }
}

std::string QuadExt::to_string() const {
    return u_.to_string() + " + " + v_.to_string() + "*sqrt(" + d_.to_string() + ")";
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
    require_same_discriminant(o, "add");
    u_ += o.u_;
    v_ += o.v_;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
    require_same_discriminant(o, "subtract");
    u_ -= o.u_;
    v_ -= o.v_;
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    require_same_discriminant(o, "multiply");
    Rational u = u_ * o.u_ + v_ * o.v_ * d_;
    Rational v = u_ * o.v_ + o.u_ * v_;
    u_ = std::move(u);
    v_ = std::move(v);
    return *this;
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
    require_same_discriminant(o, "divide");
    if (o.is_zero()) {
        throw DivisionByZero("division by zero in Q(sqrt " + d_.to_string() + ")");
    }
    Rational n = o.norm();
    if (n.is_zero()) {
        throw DivisionByZero("divisor " + o.to_string() + " is a zero divisor (norm 0)");
    }
    *this *= o.conj();
    u_ /= n;
    v_ /= n;
    return *this;
}

QuadExt& QuadExt::operator+=(const Rational& o) {
    u_ += o;
    return *this;
}

QuadExt& QuadExt::operator-=(const Rational& o) {
    u_ -= o;
    return *this;
}

QuadExt& QuadExt::operator*=(const Rational& o) {
    u_ *= o;
    v_ *= o;
    return *this;
}

QuadExt& QuadExt::operator/=(const Rational& o) {
    u_ /= o;
    v_ /= o;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const QuadExt& x) { return os << x.to_string(); }

QuadExt pow(const QuadExt& x, Index e) {
    QuadExt result = one_like(x);
    if (e == 0) return result;
    if (x.is_zero()) {
        if (e < 0) {
            throw ZeroToNegativePower("0 raised to negative power " + std::to_string(e));
        }
        return QuadExt::from_rational(Rational(0), x.discriminant());
    }
    if (e == INT64_MIN) throw IndexOverflow("exponent out of range");
    QuadExt base = e > 0 ? x : result / x;
    std::uint64_t mag = static_cast<std::uint64_t>(e < 0 ? -e : e);
    while (mag != 0) {
        if (mag & 1U) result *= base;
        mag >>= 1U;
        if (mag != 0) base *= base;
    }
    return result;
}

QuadExt one_like(const QuadExt& x) { return QuadExt::from_rational(Rational(1), x.discriminant()); }

}  // namespace horadam
