#include "horadam/identities.hpp"

#include <array>
#include <cstdlib>

namespace horadam {

// Instances are validated to |parameter| <= kMaxParameterMagnitude, so the
// index expressions below (at most a product of two bounded terms plus small
// sums) cannot overflow Index; plain arithmetic is used throughout this file.

namespace {

struct IdentityEntry {
    IdentityId id;
    std::string_view name;
    IdentityTraits traits;
};

constexpr auto kAny = SequenceClass::Any;
constexpr auto kRestricted = SequenceClass::Restricted;
constexpr auto kGib = SequenceClass::Gibonacci;

IdentityTraits make_traits(SequenceClass seq, bool r, bool s, bool d, Parity parity = Parity::Any,
                           std::optional<IdentityId> parent = std::nullopt) {
    IdentityTraits t;
    t.sequence = seq;
    t.uses_r = r;
    t.uses_s = s;
    t.uses_d = d;
    t.depth_parity = parity;
    t.parent = parent;
    return t;
}

const std::vector<IdentityEntry>& catalog() {
    static const std::vector<IdentityEntry> entries = [] {
        using I = IdentityId;
        std::vector<IdentityEntry> e;
        IdentityTraits h = make_traits(SequenceClass::Fibonacci, false, false, false, Parity::Any, I::F3);
        h.fixed_r = 1;
        h.fixed_s = 0;
        h.fixed_c = 1;
        e.push_back({I::H, "H", h});
        e.push_back({I::F1a, "F1a", make_traits(kGib, false, true, false)});
        e.push_back({I::F1b, "F1b", make_traits(kGib, false, true, false)});
        e.push_back({I::F2a, "F2a", make_traits(kGib, false, true, false)});
        e.push_back({I::F2b, "F2b", make_traits(kGib, false, true, false)});
        e.push_back({I::F3, "F3", make_traits(kAny, true, true, false)});
        e.push_back({I::F4, "F4", make_traits(kAny, true, true, false)});
        e.push_back({I::F5, "F5", make_traits(kAny, true, true, true)});
        e.push_back({I::F6a, "F6a", make_traits(kAny, true, true, true, Parity::Even)});
        e.push_back({I::F6b, "F6b", make_traits(kAny, true, true, true, Parity::Odd)});
        e.push_back({I::F7, "F7", make_traits(kAny, true, true, true)});
        e.push_back({I::F3_w, "F3_w", make_traits(kRestricted, true, true, false, Parity::Any, I::F3)});
        e.push_back({I::F3_G, "F3_G", make_traits(kGib, true, true, false, Parity::Any, I::F3)});
        e.push_back({I::F4_G, "F4_G", make_traits(kGib, true, true, false, Parity::Any, I::F4)});
        e.push_back({I::F5_G, "F5_G", make_traits(kGib, true, true, true, Parity::Any, I::F5)});
        e.push_back({I::F6_G_even, "F6_G_even", make_traits(kGib, true, true, true, Parity::Even, I::F6a)});
        e.push_back({I::F6_G_odd, "F6_G_odd", make_traits(kGib, true, true, true, Parity::Odd, I::F6b)});
        e.push_back({I::F6_F_even, "F6_F_even",
                     make_traits(SequenceClass::Fibonacci, true, true, true, Parity::Even, I::F6a)});
        e.push_back({I::F6_F_odd, "F6_F_odd",
                     make_traits(SequenceClass::Fibonacci, true, true, true, Parity::Odd, I::F6b)});
        e.push_back({I::F6_L_even, "F6_L_even",
                     make_traits(SequenceClass::Lucas, true, true, true, Parity::Even, I::F6a)});
        e.push_back({I::F6_L_odd, "F6_L_odd",
                     make_traits(SequenceClass::Lucas, true, true, true, Parity::Odd, I::F6b)});
        e.push_back({I::F7_w, "F7_w", make_traits(kRestricted, true, true, true, Parity::Any, I::F7)});
        e.push_back({I::F7_G, "F7_G", make_traits(kGib, true, true, true, Parity::Any, I::F7)});
        IdentityTraits r1w = make_traits(kRestricted, false, true, false, Parity::Any, I::F7);
        r1w.fixed_r = 1;
        r1w.fixed_d = 0;
        e.push_back({I::F7_r1d0_w, "F7_r1d0_w", r1w});
        IdentityTraits r1g = make_traits(kGib, false, true, false, Parity::Any, I::F7);
        r1g.fixed_r = 1;
        r1g.fixed_d = 0;
        e.push_back({I::F7_r1d0_G, "F7_r1d0_G", r1g});
        return e;
    }();
    return entries;
}

const IdentityEntry& entry(IdentityId id) {
    for (const auto& e : catalog()) {
        if (e.id == id) return e;
    }
    throw PreconditionViolation("unknown identity id");
}

// Which theorem's hypotheses an identity inherits.
enum class Shape { H, F1, F2, F3, F4, F5, F6, F7 };

Shape shape_of(IdentityId id) {
    using I = IdentityId;
    switch (id) {
        case I::H:
            return Shape::H;
        case I::F1a:
        case I::F1b:
            return Shape::F1;
        case I::F2a:
        case I::F2b:
            return Shape::F2;
        case I::F3:
        case I::F3_w:
        case I::F3_G:
            return Shape::F3;
        case I::F4:
        case I::F4_G:
            return Shape::F4;
        case I::F5:
        case I::F5_G:
            return Shape::F5;
        case I::F6a:
        case I::F6b:
        case I::F6_G_even:
        case I::F6_G_odd:
        case I::F6_F_even:
        case I::F6_F_odd:
        case I::F6_L_even:
        case I::F6_L_odd:
            return Shape::F6;
        case I::F7:
        case I::F7_w:
        case I::F7_G:
        case I::F7_r1d0_w:
        case I::F7_r1d0_G:
            return Shape::F7;
    }
    return Shape::F3;
}

void require(bool ok, const std::string& violation) {
    if (!ok) throw InvalidInstance(violation);
}

std::string idx(Index v) { return std::to_string(v); }

// Evaluation context for one closed form: the summed sequence W, the Lucas
// sequences U and V for the same (p, q), and cost accounting.
class Terms {
public:
    Terms(const IdentityInstance& inst, ClosedFormCost* cost)
        : q(inst.params().q()),
          w_(inst.params()),
          u_(HoradamParams(0, 1, inst.params().p(), inst.params().q())),
          v_(HoradamParams(2, inst.params().p(), inst.params().p(), inst.params().q())),
          cost_(cost) {}

    // A term of the summed sequence.
    Rational W(Index j) const { return summed(w_, j); }
    Rational summed(const Sequence& seq, Index j) const {
        if (cost_) ++cost_->sequence_terms;
        return seq(j);
    }
    Rational U(Index j) const { return coefficient(u_, j); }
    Rational V(Index j) const { return coefficient(v_, j); }
    Rational coefficient(const Sequence& seq, Index j) const {
        if (cost_) ++cost_->coefficients;
        return seq(j);
    }
    Rational binom(Index top, Index k) const {
        if (cost_) ++cost_->binomials;
        return Rational(horadam::binom(top, k));
    }

    const Rational q;

private:
    Sequence w_;
    Sequence u_;
    Sequence v_;
    ClosedFormCost* cost_;
};

Rational sgn(Index k) { return Rational(sign_power(k)); }

void require_id(const IdentityInstance& inst, std::initializer_list<IdentityId> ids, const char* fn) {
    for (IdentityId id : ids) {
        if (inst.id() == id) return;
    }
    throw InvalidInstance(std::string(fn) + " cannot evaluate identity " + std::string(to_string(inst.id())));
}

}  // namespace

std::string_view to_string(IdentityId id) { return entry(id).name; }

std::optional<IdentityId> parse_identity(std::string_view name) {
    for (const auto& e : catalog()) {
        if (e.name == name) return e.id;
    }
    return std::nullopt;
}

const std::vector<IdentityId>& all_identities() {
    static const std::vector<IdentityId> ids = [] {
        std::vector<IdentityId> out;
        for (const auto& e : catalog()) out.push_back(e.id);
        return out;
    }();
    return ids;
}

const IdentityTraits& traits(IdentityId id) { return entry(id).traits; }

HoradamParams default_params(IdentityId id) {
    switch (id) {
        case IdentityId::F1b:
        case IdentityId::F2b:
        case IdentityId::F6_L_even:
        case IdentityId::F6_L_odd:
            return HoradamParams::lucas();
        default:
            return HoradamParams::fibonacci();
    }
}

InstanceRequest normalize(InstanceRequest request) {
    const IdentityTraits& t = traits(request.id);
    auto fix = [](Index& field, bool used, const std::optional<Index>& fixed) {
        if (fixed) {
            field = *fixed;
        } else if (!used) {
            field = 0;
        }
    };
    fix(request.r, t.uses_r, t.fixed_r);
    fix(request.s, t.uses_s, t.fixed_s);
    fix(request.d, t.uses_d, t.fixed_d);
    if (t.fixed_c) request.c = *t.fixed_c;
    return request;
}

bool family_satisfies(IdentityId id, const HoradamParams& params) {
    switch (traits(id).sequence) {
        case SequenceClass::Any:
            return true;
        case SequenceClass::Restricted:
            return params.is_restricted();
        case SequenceClass::Gibonacci:
            return params.is_gibonacci();
        case SequenceClass::Fibonacci:
            return params == HoradamParams::fibonacci();
        case SequenceClass::Lucas:
            return params == HoradamParams::lucas();
    }
    return false;
}

IdentityInstance IdentityInstance::create(InstanceRequest request) {
    request = normalize(std::move(request));
    const InstanceRequest& q = request;
    const IdentityTraits& t = traits(q.id);

    for (auto [name, value] : std::array<std::pair<const char*, Index>, 6>{
             {{"n", q.n}, {"a_n", q.a_n}, {"c", q.c}, {"r", q.r}, {"s", q.s}, {"d", q.d}}}) {
        require(std::llabs(value) <= kMaxParameterMagnitude,
                std::string("|") + name + "| exceeds " + idx(kMaxParameterMagnitude));
    }
    require(q.n >= 1, "n must be a positive integer (got " + idx(q.n) + ")");
    if (t.depth_parity == Parity::Even) require(!is_odd(q.n), "n must be even (got " + idx(q.n) + ")");
    if (t.depth_parity == Parity::Odd) require(is_odd(q.n), "n must be odd (got " + idx(q.n) + ")");

    switch (t.sequence) {
        case SequenceClass::Any:
            break;
        case SequenceClass::Restricted:
            require(q.params.is_restricted(), "restricted sequence needs p = 1");
            break;
        case SequenceClass::Gibonacci:
            require(q.params.is_gibonacci(), "gibonacci sequence needs (p,q) = (1,-1)");
            break;
        case SequenceClass::Fibonacci:
            require(q.params == HoradamParams::fibonacci(), "identity is stated for the Fibonacci numbers");
            break;
        case SequenceClass::Lucas:
            require(q.params == HoradamParams::lucas(), "identity is stated for the Lucas numbers");
            break;
    }

    const Rational& p = q.params.p();
    const Rational& qq = q.params.q();
    Sequence w(q.params);
    Sequence u(HoradamParams(0, 1, p, qq));
    Sequence v(HoradamParams(2, p, p, qq));
    const Index r = q.r, s = q.s, d = q.d;

    switch (shape_of(q.id)) {
        case Shape::H:
        case Shape::F1:
        case Shape::F2:
            break;
        case Shape::F3:
        case Shape::F4:
            require(!v(r).is_zero(), "V_r = 0 (r = " + idx(r) + ")");
            break;
        case Shape::F5:
            require(r != 0, "r = 0");
            require(r + d != 0, "r + d = 0");
            require(!u(r).is_zero(), "U_r = 0 (r = " + idx(r) + ")");
            require(!u(r + d).is_zero(), "U_{r+d} = 0 (r + d = " + idx(r + d) + ")");
            require(!u(d).is_zero(), "U_d = 0 (d = " + idx(d) + ")");
            break;
        case Shape::F6:
            require(r != 0, "r = 0");
            require(!q.params.discriminant().is_zero(), "p^2 - 4q = 0");
            require(!u(r).is_zero(), "U_r = 0 (r = " + idx(r) + ")");
            require(!v(r + d).is_zero(), "V_{r+d} = 0 (r + d = " + idx(r + d) + ")");
            require(!v(d).is_zero(), "V_d = 0 (d = " + idx(d) + ")");
            break;
        case Shape::F7:
            require(r + 1 != d, "r + 1 = d");
            require(!w(r + s).is_zero(), "W_{r+s} = 0 (r + s = " + idx(r + s) + ")");
            require(!w(s + d).is_zero(), "W_{s+d} = 0 (s + d = " + idx(s + d) + ")");
            require(!w(s + d - 1).is_zero(), "W_{s+d-1} = 0 (s + d - 1 = " + idx(s + d - 1) + ")");
            require(!u(r - d + 1).is_zero(), "U_{r-d+1} = 0 (r - d + 1 = " + idx(r - d + 1) + ")");
            require(!u(r - d).is_zero(), "U_{r-d} = 0 (r - d = " + idx(r - d) + ")");
            break;
    }
    return IdentityInstance(std::move(request));
}

NestedSumSpec lhs_spec(const IdentityInstance& inst) {
    using I = IdentityId;
    const HoradamParams& P = inst.params();
    const Index r = inst.r(), s = inst.s(), d = inst.d();
    Sequence w(P);
    Sequence u(HoradamParams(0, 1, P.p(), P.q()));
    Sequence v(HoradamParams(2, P.p(), P.p(), P.q()));
    SummandSpec t;
    switch (inst.id()) {
        case I::H:
            t = {P, 1, 0, 1, false};
            break;
        case I::F1a:
        case I::F1b:
            t = {P, 3, s, 1, false};
            break;
        case I::F2a:
        case I::F2b:
            t = {P, 3, s, 1, true};
            break;
        case I::F3:
        case I::F3_w:
        case I::F3_G:
            t = {P, r, s, Rational(1) / v(r), false};
            break;
        case I::F4:
            t = {P, 2 * r, s, Rational(1) / pow(P.q(), r), true};
            break;
        case I::F4_G:
            t = {P, 2 * r, s, 1, is_odd(r - 1)};
            break;
        case I::F5:
        case I::F5_G:
            t = {P, r, s, u(d) / u(r + d), false};
            break;
        case I::F6a:
        case I::F6b:
        case I::F6_G_even:
        case I::F6_G_odd:
        case I::F6_F_even:
        case I::F6_F_odd:
        case I::F6_L_even:
        case I::F6_L_odd:
            t = {P, r, s, v(d) / v(r + d), false};
            break;
        case I::F7:
        case I::F7_w:
            t = {std::nullopt, 1, 0, P.q() * (u(r - d) / u(r - d + 1)) * (w(s + d - 1) / w(s + d)), false};
            break;
        case I::F7_G:
            t = {std::nullopt, 1, 0, (u(r - d) / u(r - d + 1)) * (w(s + d - 1) / w(s + d)), true};
            break;
        case I::F7_r1d0_w:
            t = {std::nullopt, 1, 0, P.q() * (w(s - 1) / w(s)), false};
            break;
        case I::F7_r1d0_G:
            t = {std::nullopt, 1, 0, w(s - 1) / w(s), true};
            break;
    }
    return NestedSumSpec::uniform(inst.n(), inst.a_n(), inst.c(), std::move(t));
}

// sum F_{a_0}, c = 1:  F_{a_n+2n} - sum_j F_{2(n-j)} binom(a_n+j-1, j)
Rational rhs_H(const IdentityInstance& inst, ClosedFormCost* cost) {
    require_id(inst, {IdentityId::H}, "rhs_H");
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n();
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) sum += T.W(2 * (n - j)) * T.binom(a + j - 1, j);
    return T.W(a + 2 * n) - sum;
}

// sum G_{3a_0+s}  = G_{2n+3a_n+s}/2^n - sum_j G_{2(n-j)+3(c-1)+s}/2^{n-j} binom(a_n+j-c, j)
// The display is linear in the sequence, so any gibonacci G may stand in for F (a) or L (b).
Rational rhs_F1(Variant variant, const IdentityInstance& inst, ClosedFormCost* cost) {
    require_id(inst, {variant == Variant::a ? IdentityId::F1a : IdentityId::F1b}, "rhs_F1");
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), s = inst.s();
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        sum += T.W(2 * (n - j) + 3 * (c - 1) + s) / pow(Rational(2), n - j) * T.binom(a + j - c, j);
    }
    return T.W(2 * n + 3 * a + s) / pow(Rational(2), n) - sum;
}

// sum (-1)^{a_0} G_{3a_0+s}
//   = (-1)^{a_n} G_{n+3a_n+s}/2^n + (-1)^c sum_j G_{n-j+3(c-1)+s}/2^{n-j} binom(a_n+j-c, j)
Rational rhs_F2(Variant variant, const IdentityInstance& inst, ClosedFormCost* cost) {
    require_id(inst, {variant == Variant::a ? IdentityId::F2a : IdentityId::F2b}, "rhs_F2");
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), s = inst.s();
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        sum += T.W(n - j + 3 * (c - 1) + s) / pow(Rational(2), n - j) * T.binom(a + j - c, j);
    }
    return sgn(a) * T.W(n + 3 * a + s) / pow(Rational(2), n) + sgn(c) * sum;
}

// sum W_{ra_0+s}/V_r^{a_0}
//   = (-1)^n W_{r(a_n+2n)+s}/(q^{rn} V_r^{a_n})
//     - 1/V_r^{c-1} sum_j (-1)^{n-j} W_{r(2n-2j+c-1)+s}/q^{r(n-j)} binom(a_n+j-c, j)
Rational rhs_F3(const IdentityInstance& inst, ClosedFormCost* cost) {
    require_id(inst, {IdentityId::F3}, "rhs_F3");
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), r = inst.r(), s = inst.s();
    const Rational Vr = T.V(r);
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        sum += sgn(n - j) * T.W(r * (2 * n - 2 * j + c - 1) + s) / pow(T.q, r * (n - j)) * T.binom(a + j - c, j);
    }
    return sgn(n) * T.W(r * (a + 2 * n) + s) / (pow(T.q, r * n) * pow(Vr, a)) - sum / pow(Vr, c - 1);
}

// sum (-1)^{a_0} W_{2ra_0+s}/q^{ra_0}
//   = (-1)^{a_n} W_{r(2a_n+n)+s}/(q^{ra_n} V_r^n)
//     + (-1)^c/q^{r(c-1)} sum_j W_{r(n-j+2c-2)+s}/V_r^{n-j} binom(a_n+j-c, j)
Rational rhs_F4(const IdentityInstance& inst, ClosedFormCost* cost) {
    require_id(inst, {IdentityId::F4}, "rhs_F4");
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), r = inst.r(), s = inst.s();
    const Rational Vr = T.V(r);
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        sum += T.W(r * (n - j + 2 * c - 2) + s) / pow(Vr, n - j) * T.binom(a + j - c, j);
    }
    return sgn(a) * T.W(r * (2 * a + n) + s) / (pow(T.q, r * a) * pow(Vr, n)) +
           sgn(c) / pow(T.q, r * (c - 1)) * sum;
}

// sum (U_d/U_{r+d})^{a_0} W_{ra_0+s}
//   = (-1)^n U_d^{n+a_n}/(q^{dn} U_r^n U_{r+d}^{a_n}) W_{(r+d)n+ra_n+s}
//     - (U_d/U_{r+d})^{c-1} sum_j (-1)^{n-j}/q^{d(n-j)} (U_d/U_r)^{n-j} W_{r(n-j+c-1)+d(n-j)+s} binom(a_n+j-c, j)
Rational rhs_F5(const IdentityInstance& inst, ClosedFormCost* cost) {
    require_id(inst, {IdentityId::F5}, "rhs_F5");
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), r = inst.r(), s = inst.s(), d = inst.d();
    const Rational Ud = T.U(d), Ur = T.U(r), Urd = T.U(r + d);
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        const Index k = n - j;
        sum += sgn(k) / pow(T.q, d * k) * pow(Ud / Ur, k) * T.W(r * (k + c - 1) + d * k + s) *
               T.binom(a + j - c, j);
    }
    Rational lead = sgn(n) * pow(Ud, n + a) / (pow(T.q, d * n) * pow(Ur, n) * pow(Urd, a)) *
                    T.W((r + d) * n + r * a + s);
    return lead - pow(Ud / Urd, c - 1) * sum;
}

// sum (V_d/V_{r+d})^{a_0} W_{ra_0+s}, n even (a) or odd (b), with Delta = sqrt(p^2 - 4q).
QuadExt rhs_F6_extension(const IdentityInstance& inst, ClosedFormCost* cost) {
    require_id(inst, {IdentityId::F6a, IdentityId::F6b}, "rhs_F6");
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), r = inst.r(), s = inst.s(), d = inst.d();
    const QuadExt delta = QuadExt::root(inst.params().discriminant());
    const Rational Vd = T.V(d), Ur = T.U(r), Vrd = T.V(r + d);
    const Rational ratio = Vd / Vrd;
    const Rational vu = Vd / Ur;
    // W_{k+1} - q W_{k-1}
    auto wdiff = [&](Index k) { return T.W(k + 1) - T.q * T.W(k - 1); };

    if (!is_odd(n)) {
        QuadExt lead = pow(delta, -n) * (pow(vu, n) * pow(ratio, a) * T.W(r * (n + a) + d * n + s) /
                                         pow(T.q, d * n));
        QuadExt even = QuadExt::from_rational(0, delta.discriminant());
        for (Index j = 0; j <= (n - 2) / 2; ++j) {
            even += pow(delta, 2 * j) * (pow(vu, n - 2 * j) * T.W((r + d) * (n - 2 * j) + r * (c - 1) + s) *
                                         T.binom(a + 2 * j - c, 2 * j) / pow(T.q, d * (n - 2 * j)));
        }
        QuadExt odd = QuadExt::from_rational(0, delta.discriminant());
        for (Index j = 1; j <= n / 2; ++j) {
            const Index k = n - 2 * j + 1;
            odd += pow(delta, 2 * j) * (pow(vu, k) * wdiff((r + d) * k + r * (c - 1) + s) *
                                        T.binom(a + 2 * j - 1 - c, 2 * j - 1) / pow(T.q, d * k));
        }
        const Rational outer = pow(ratio, c - 1);
        return lead - outer * pow(delta, -n) * even - outer * pow(delta, -(n + 2)) * odd;
    }

    QuadExt lead = pow(delta, -(n + 1)) *
                   (pow(vu, n) * pow(ratio, a) * wdiff(r * (n + a) + d * n + s) / pow(T.q, d * n));
    QuadExt even = QuadExt::from_rational(0, delta.discriminant());
    for (Index j = 0; j <= (n - 1) / 2; ++j) {
        even += pow(delta, 2 * j) * (pow(vu, n - 2 * j) * wdiff((r + d) * (n - 2 * j) + r * (c - 1) + s) *
                                     T.binom(a + 2 * j - c, 2 * j) / pow(T.q, d * (n - 2 * j)));
    }
    QuadExt odd = QuadExt::from_rational(0, delta.discriminant());
    for (Index j = 1; j <= (n - 1) / 2; ++j) {
        const Index k = n - 2 * j + 1;
        odd += pow(delta, 2 * j) * (pow(vu, k) * T.W((r + d) * k + r * (c - 1) + s) *
                                    T.binom(a + 2 * j - 1 - c, 2 * j - 1) / pow(T.q, d * k));
    }
    const Rational outer = pow(ratio, c - 1);
    return lead - outer * pow(delta, -(n + 1)) * even - outer * pow(delta, -(n + 1)) * odd;
}

Rational rhs_F6(const IdentityInstance& inst, ClosedFormCost* cost) {
    QuadExt value = rhs_F6_extension(inst, cost);
    if (!value.is_rational()) {
        throw InvariantBreach("F6 closed form has nonzero surd part: " + value.to_string());
    }
    return value.rational_part();
}

// sum q^{a_0} (U_{r-d}/U_{r-d+1})^{a_0} (W_{s+d-1}/W_{s+d})^{a_0}
//   = (-1)^n q^{n+a_n} U_{r-d}^n (U_{r-d}/U_{r-d+1})^{a_n} (W_{s+d-1}/W_{s+d})^{a_n} (W_{s+d-1}/W_{r+s})^n
//     - q^{c-1} (U_{r-d}/U_{r-d+1})^{c-1} (W_{s+d-1}/W_{s+d})^{c-1}
//         sum_j (-1)^{n-j} q^{n-j} U_{r-d}^{n-j} (W_{s+d-1}/W_{r+s})^{n-j} binom(a_n+j-c, j)
Rational rhs_F7(const IdentityInstance& inst, ClosedFormCost* cost) {
    require_id(inst, {IdentityId::F7}, "rhs_F7");
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), r = inst.r(), s = inst.s(), d = inst.d();
    const Rational Urd = T.U(r - d), Urd1 = T.U(r - d + 1);
    const Rational Wsd1 = T.W(s + d - 1), Wsd = T.W(s + d), Wrs = T.W(r + s);
    const Rational uratio = Urd / Urd1, wratio = Wsd1 / Wsd, tail = Wsd1 / Wrs;
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        const Index k = n - j;
        sum += sgn(k) * pow(T.q, k) * pow(Urd, k) * pow(tail, k) * T.binom(a + j - c, j);
    }
    Rational lead = sgn(n) * pow(T.q, n + a) * pow(Urd, n) * pow(uratio, a) * pow(wratio, a) * pow(tail, n);
    return lead - pow(T.q, c - 1) * pow(uratio, c - 1) * pow(wratio, c - 1) * sum;
}

namespace {

// Restricted version of F3, in terms of w and v_r = V_r(1, q).
Rational rhs_F3_w(const IdentityInstance& inst, ClosedFormCost* cost) {
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), r = inst.r(), s = inst.s();
    const Rational vr = T.V(r);
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        sum += sgn(n - j) * T.W(r * (2 * n - 2 * j + c - 1) + s) / pow(T.q, r * (n - j)) * T.binom(a + j - c, j);
    }
    return sgn(n) * T.W(r * (a + 2 * n) + s) / (pow(T.q, r * n) * pow(vr, a)) - sum / pow(vr, c - 1);
}

// sum G_{ra_0+s}/L_r^{a_0}
//   = (-1)^{n(r-1)} G_{r(a_n+2n)+s}/L_r^{a_n}
//     - 1/L_r^{c-1} sum_j (-1)^{(n-j)(r-1)} G_{r(2n-2j+c-1)+s} binom(a_n+j-c, j)
Rational rhs_F3_G(const IdentityInstance& inst, ClosedFormCost* cost) {
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), r = inst.r(), s = inst.s();
    const Rational Lr = T.coefficient(Sequence(HoradamParams::lucas()), r);
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        sum += sgn((n - j) * (r - 1)) * T.W(r * (2 * n - 2 * j + c - 1) + s) * T.binom(a + j - c, j);
    }
    return sgn(n * (r - 1)) * T.W(r * (a + 2 * n) + s) / pow(Lr, a) - sum / pow(Lr, c - 1);
}

// sum (-1)^{(r-1)a_0} G_{2ra_0+s}
//   = (-1)^{(r-1)a_n} G_{r(2a_n+n)+s}/L_r^n
//     + (-1)^{r(c-1)+c} sum_j G_{r(n-j+2c-2)+s}/L_r^{n-j} binom(a_n+j-c, j)
Rational rhs_F4_G(const IdentityInstance& inst, ClosedFormCost* cost) {
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), r = inst.r(), s = inst.s();
    const Rational Lr = T.coefficient(Sequence(HoradamParams::lucas()), r);
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        sum += T.W(r * (n - j + 2 * c - 2) + s) / pow(Lr, n - j) * T.binom(a + j - c, j);
    }
    return sgn((r - 1) * a) * T.W(r * (2 * a + n) + s) / pow(Lr, n) + sgn(r * (c - 1) + c) * sum;
}

// sum (F_d/F_{r+d})^{a_0} G_{ra_0+s}
//   = (-1)^{n(d+1)} F_d^{n+a_n}/(F_r^n F_{r+d}^{a_n}) G_{(r+d)n+ra_n+s}
//     - (F_d/F_{r+d})^{c-1} sum_j (-1)^{(n-j)(d+1)} (F_d/F_r)^{n-j} G_{r(n-j+c-1)+d(n-j)+s} binom(a_n+j-c, j)
Rational rhs_F5_G(const IdentityInstance& inst, ClosedFormCost* cost) {
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), r = inst.r(), s = inst.s(), d = inst.d();
    const Sequence fib(HoradamParams::fibonacci());
    const Rational Fd = T.coefficient(fib, d), Fr = T.coefficient(fib, r), Frd = T.coefficient(fib, r + d);
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        const Index k = n - j;
        sum += sgn(k * (d + 1)) * pow(Fd / Fr, k) * T.W(r * (k + c - 1) + d * k + s) * T.binom(a + j - c, j);
    }
    Rational lead = sgn(n * (d + 1)) * pow(Fd, n + a) / (pow(Fr, n) * pow(Frd, a)) * T.W((r + d) * n + r * a + s);
    return lead - pow(Fd / Frd, c - 1) * sum;
}

enum class F6Flavor { G, F, L };

// The gibonacci, Fibonacci and Lucas displays of F6. Delta^2 = 5 throughout;
// the flavors differ only in which sequence carries each of the three groups
// and in the power of 5, exactly as displayed.
Rational rhs_F6_gibonacci(F6Flavor flavor, const IdentityInstance& inst, ClosedFormCost* cost) {
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), r = inst.r(), s = inst.s(), d = inst.d();
    const Sequence fib(HoradamParams::fibonacci());
    const Sequence luc(HoradamParams::lucas());
    const Rational Ld = T.coefficient(luc, d), Fr = T.coefficient(fib, r), Lrd = T.coefficient(luc, r + d);
    const Rational ratio = Ld / Lrd;
    const Rational lf = Ld / Fr;
    const Rational outer = pow(ratio, c - 1);
    const Rational five(5);
    const Rational sd = sgn(d);
    auto G = [&](Index k) { return T.W(k); };
    auto F = [&](Index k) { return T.summed(fib, k); };
    auto L = [&](Index k) { return T.summed(luc, k); };
    auto gpair = [&](Index k) { return T.W(k + 1) + T.W(k - 1); };

    if (!is_odd(n)) {
        const Index K = r * (n + a) + d * n + s;
        Rational lead = pow(lf, n) * pow(ratio, a) / pow(five, n / 2);
        Rational even = 0;
        for (Index j = 0; j <= (n - 2) / 2; ++j) {
            const Index k = (r + d) * (n - 2 * j) + r * (c - 1) + s;
            const Rational term = pow(five, j) * pow(lf, n - 2 * j) * T.binom(a + 2 * j - c, 2 * j);
            even += term * (flavor == F6Flavor::L ? L(k) : (flavor == F6Flavor::F ? F(k) : G(k)));
        }
        Rational odd = 0;
        for (Index j = 1; j <= n / 2; ++j) {
            const Index k = (r + d) * (n - 2 * j + 1) + r * (c - 1) + s;
            const Rational term = pow(five, j) * pow(lf, n - 2 * j + 1) * T.binom(a + 2 * j - 1 - c, 2 * j - 1);
            switch (flavor) {
                case F6Flavor::G:
                    odd += term * gpair(k);
                    break;
                case F6Flavor::F:
                    odd += term * L(k);
                    break;
                case F6Flavor::L:
                    odd += term * F(k);
                    break;
            }
        }
        const Rational lead_seq = flavor == F6Flavor::L ? L(K) : (flavor == F6Flavor::F ? F(K) : G(K));
        const Rational odd_scale = flavor == F6Flavor::L ? sd / pow(five, n / 2) : sd / pow(five, (n + 2) / 2);
        return lead * lead_seq - outer / pow(five, n / 2) * even - outer * odd_scale * odd;
    }

    const Index K = r * (n + a) + d * n + s;
    Rational even = 0;
    for (Index j = 0; j <= (n - 1) / 2; ++j) {
        const Index k = (r + d) * (n - 2 * j) + r * (c - 1) + s;
        const Rational term = pow(five, j) * pow(lf, n - 2 * j) * T.binom(a + 2 * j - c, 2 * j);
        switch (flavor) {
            case F6Flavor::G:
                even += term * gpair(k);
                break;
            case F6Flavor::F:
                even += term * L(k);
                break;
            case F6Flavor::L:
                even += term * F(k);
                break;
        }
    }
    Rational odd = 0;
    for (Index j = 1; j <= (n - 1) / 2; ++j) {
        const Index k = (r + d) * (n - 2 * j + 1) + r * (c - 1) + s;
        const Rational term = pow(five, j) * pow(lf, n - 2 * j + 1) * T.binom(a + 2 * j - 1 - c, 2 * j - 1);
        odd += term * (flavor == F6Flavor::L ? L(k) : (flavor == F6Flavor::F ? F(k) : G(k)));
    }
    Rational lead_seq;
    switch (flavor) {
        case F6Flavor::G:
            lead_seq = gpair(K);
            break;
        case F6Flavor::F:
            lead_seq = L(K);
            break;
        case F6Flavor::L:
            lead_seq = F(K);
            break;
    }
    // The Lucas display carries 5^{(n-1)/2} on its first two groups.
    const Rational head_scale = flavor == F6Flavor::L ? sd / pow(five, (n - 1) / 2) : sd / pow(five, (n + 1) / 2);
    Rational lead = head_scale * pow(lf, n) * pow(ratio, a) * lead_seq;
    return lead - outer * head_scale * even - outer / pow(five, (n + 1) / 2) * odd;
}

// Restricted version of F7 in terms of u = U(1, q) and w.
Rational rhs_F7_w(const IdentityInstance& inst, ClosedFormCost* cost) {
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), r = inst.r(), s = inst.s(), d = inst.d();
    const Rational urd = T.U(r - d), urd1 = T.U(r - d + 1);
    const Rational wsd1 = T.W(s + d - 1), wsd = T.W(s + d), wrs = T.W(r + s);
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        const Index k = n - j;
        sum += sgn(k) * pow(T.q, k) * pow(urd, k) * pow(wsd1 / wrs, k) * T.binom(a + j - c, j);
    }
    Rational lead = sgn(n) * pow(T.q, n + a) * pow(urd, n) * pow(urd / urd1, a) * pow(wsd1 / wsd, a) *
                    pow(wsd1 / wrs, n);
    return lead - pow(T.q, c - 1) * pow(urd / urd1, c - 1) * pow(wsd1 / wsd, c - 1) * sum;
}

// sum (-1)^{a_0} (F_{r-d}/F_{r-d+1})^{a_0} (G_{s+d-1}/G_{s+d})^{a_0}
//   = (-1)^{a_n} F_{r-d}^n (F_{r-d}/F_{r-d+1})^{a_n} (G_{s+d-1}/G_{s+d})^{a_n} (G_{s+d-1}/G_{r+s})^n
//     + (-1)^c (F_{r-d}/F_{r-d+1})^{c-1} (G_{s+d-1}/G_{s+d})^{c-1}
//         sum_j F_{r-d}^{n-j} (G_{s+d-1}/G_{r+s})^{n-j} binom(a_n+j-c, j)
Rational rhs_F7_G(const IdentityInstance& inst, ClosedFormCost* cost) {
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), r = inst.r(), s = inst.s(), d = inst.d();
    const Sequence fib(HoradamParams::fibonacci());
    const Rational Frd = T.coefficient(fib, r - d), Frd1 = T.coefficient(fib, r - d + 1);
    const Rational Gsd1 = T.W(s + d - 1), Gsd = T.W(s + d), Grs = T.W(r + s);
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        sum += pow(Frd, n - j) * pow(Gsd1 / Grs, n - j) * T.binom(a + j - c, j);
    }
    Rational lead = sgn(a) * pow(Frd, n) * pow(Frd / Frd1, a) * pow(Gsd1 / Gsd, a) * pow(Gsd1 / Grs, n);
    return lead + sgn(c) * pow(Frd / Frd1, c - 1) * pow(Gsd1 / Gsd, c - 1) * sum;
}

// sum q^{a_0} (w_{s-1}/w_s)^{a_0}
//   = (-1)^n q^{n+a_n} (w_{s-1}/w_s)^{a_n} (w_{s-1}/w_{s+1})^n
//     - q^{c-1} (w_{s-1}/w_s)^{c-1} sum_j (-1)^{n-j} q^{n-j} (w_{s-1}/w_{s+1})^{n-j} binom(a_n+j-c, j)
Rational rhs_F7_r1d0_w(const IdentityInstance& inst, ClosedFormCost* cost) {
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), s = inst.s();
    const Rational ws1 = T.W(s - 1), ws = T.W(s), wsp = T.W(s + 1);
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) {
        sum += sgn(n - j) * pow(T.q, n - j) * pow(ws1 / wsp, n - j) * T.binom(a + j - c, j);
    }
    return sgn(n) * pow(T.q, n + a) * pow(ws1 / ws, a) * pow(ws1 / wsp, n) -
           pow(T.q, c - 1) * pow(ws1 / ws, c - 1) * sum;
}

// sum (-1)^{a_0} (G_{s-1}/G_s)^{a_0}
//   = (-1)^{a_n} (G_{s-1}/G_s)^{a_n} (G_{s-1}/G_{s+1})^n
//     + (-1)^c (G_{s-1}/G_s)^{c-1} sum_j (G_{s-1}/G_{s+1})^{n-j} binom(a_n+j-c, j)
Rational rhs_F7_r1d0_G(const IdentityInstance& inst, ClosedFormCost* cost) {
    Terms T(inst, cost);
    const Index n = inst.n(), a = inst.a_n(), c = inst.c(), s = inst.s();
    const Rational gs1 = T.W(s - 1), gs = T.W(s), gsp = T.W(s + 1);
    Rational sum = 0;
    for (Index j = 0; j < n; ++j) sum += pow(gs1 / gsp, n - j) * T.binom(a + j - c, j);
    return sgn(a) * pow(gs1 / gs, a) * pow(gs1 / gsp, n) + sgn(c) * pow(gs1 / gs, c - 1) * sum;
}

}  // namespace

Rational rhs_specialization(IdentityId id, const IdentityInstance& inst, ClosedFormCost* cost) {
    if (!traits(id).parent) {
        throw InvalidInstance(std::string(to_string(id)) + " is not a specialization");
    }
    // Re-validate under the specialization's own hypotheses; the instance
    // must already be a point of its domain.
    InstanceRequest req = inst.request();
    req.id = id;
    IdentityInstance spec = IdentityInstance::create(req);
    const InstanceRequest& got = spec.request();
    const InstanceRequest& want = inst.request();
    if (got.n != want.n || got.a_n != want.a_n || got.c != want.c || got.r != want.r || got.s != want.s ||
        got.d != want.d) {
        throw InvalidInstance("instance is outside the domain of " + std::string(to_string(id)));
    }

    using I = IdentityId;
    switch (id) {
        case I::H:
            return rhs_H(spec, cost);
        case I::F3_w:
            return rhs_F3_w(spec, cost);
        case I::F3_G:
            return rhs_F3_G(spec, cost);
        case I::F4_G:
            return rhs_F4_G(spec, cost);
        case I::F5_G:
            return rhs_F5_G(spec, cost);
        case I::F6_G_even:
        case I::F6_G_odd:
            return rhs_F6_gibonacci(F6Flavor::G, spec, cost);
        case I::F6_F_even:
        case I::F6_F_odd:
            return rhs_F6_gibonacci(F6Flavor::F, spec, cost);
        case I::F6_L_even:
        case I::F6_L_odd:
            return rhs_F6_gibonacci(F6Flavor::L, spec, cost);
        case I::F7_w:
            return rhs_F7_w(spec, cost);
        case I::F7_G:
            return rhs_F7_G(spec, cost);
        case I::F7_r1d0_w:
            return rhs_F7_r1d0_w(spec, cost);
        case I::F7_r1d0_G:
            return rhs_F7_r1d0_G(spec, cost);
        default:
            break;
    }
    throw InvalidInstance(std::string(to_string(id)) + " is not a specialization");
}

Rational rhs(const IdentityInstance& inst, ClosedFormCost* cost) {
    using I = IdentityId;
    switch (inst.id()) {
        case I::F1a:
            return rhs_F1(Variant::a, inst, cost);
        case I::F1b:
            return rhs_F1(Variant::b, inst, cost);
        case I::F2a:
            return rhs_F2(Variant::a, inst, cost);
        case I::F2b:
            return rhs_F2(Variant::b, inst, cost);
        case I::F3:
            return rhs_F3(inst, cost);
        case I::F4:
            return rhs_F4(inst, cost);
        case I::F5:
            return rhs_F5(inst, cost);
        case I::F6a:
        case I::F6b:
            return rhs_F6(inst, cost);
        case I::F7:
            return rhs_F7(inst, cost);
        default:
            return rhs_specialization(inst.id(), inst, cost);
    }
}

}  // namespace horadam
