#include "horadam/nestedcore.hpp"

namespace horadam {

Integer nested_tuple_count(Index upper, std::span<const Index> limits) {
    return oracle_nested_dp(upper, limits, [](Index) { return Integer(1); }, Integer(0)).value;
}

Rational SummandSpec::operator()(Index a0) const {
    Rational value = pow(weight_base, a0);
    if (sequence) value *= Sequence(*sequence)(affine(index_scale, a0, index_offset));
    if (alternating && is_odd(a0)) value = -value;
    return value;
}

std::string SummandSpec::describe() const {
    std::string out;
    if (alternating) out += "(-1)^a0 * ";
    out += "(" + weight_base.to_string() + ")^a0";
    if (sequence) {
        out += " * W[" + sequence->key() + "](" + std::to_string(index_scale) + "*a0 + " +
               std::to_string(index_offset) + ")";
    }
    return out;
}

NestedSumSpec::NestedSumSpec(Index upper, LowerLimits limits, SummandSpec summand)
    : upper_(upper), limits_(std::move(limits)), summand_(std::move(summand)) {
    if (limits_.empty()) throw PreconditionViolation("nested sum needs at least one level");
    if (summand_.weight_base.is_zero()) throw PreconditionViolation("summand weight base must be nonzero");
}

OracleResult<Rational> oracle_nested_counted(const NestedSumSpec& spec) {
    return oracle_nested_dp(spec.upper(), spec.limits(), spec.summand(), Rational(0));
}

Rational oracle_nested(const NestedSumSpec& spec) { return oracle_nested_counted(spec).value; }

OracleResult<Rational> oracle_nested_naive(const NestedSumSpec& spec, std::uint64_t cap) {
    return oracle_nested_enumerate(spec.upper(), spec.limits(), spec.summand(), Rational(0), cap);
}

}  // namespace horadam
