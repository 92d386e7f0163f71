#pragma once

// Closed-form nested-sum identities over Horadam sequences and the machinery
// to check each one against the nested-sum oracle.
//
// Every right-hand side below is transcribed directly from its theorem or
// specialization display. None of them share a simplification path with each
// other or with the oracle; agreement between them is the point.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "horadam/exactnum.hpp"
#include "horadam/nestedcore.hpp"
#include "horadam/sequences.hpp"

namespace horadam {

enum class IdentityId {
    H,
    F1a,
    F1b,
    F2a,
    F2b,
    F3,
    F4,
    F5,
    F6a,
    F6b,
    F7,
    F3_w,
    F3_G,
    F4_G,
    F5_G,
    F6_G_even,
    F6_G_odd,
    F6_F_even,
    F6_F_odd,
    F6_L_even,
    F6_L_odd,
    F7_w,
    F7_G,
    F7_r1d0_w,
    F7_r1d0_G,
};

std::string_view to_string(IdentityId id);
std::optional<IdentityId> parse_identity(std::string_view name);
const std::vector<IdentityId>& all_identities();

// The sequences an identity is stated for.
enum class SequenceClass { Any, Restricted, Gibonacci, Fibonacci, Lucas };
enum class Parity { Any, Even, Odd };

struct IdentityTraits {
    SequenceClass sequence = SequenceClass::Any;
    Parity depth_parity = Parity::Any;
    bool uses_r = false;
    bool uses_s = false;
    bool uses_d = false;
    std::optional<Index> fixed_r;
    std::optional<Index> fixed_d;
    std::optional<Index> fixed_c;
    std::optional<Index> fixed_s;
    // The general theorem this display specializes, if any.
    std::optional<IdentityId> parent;
};

const IdentityTraits& traits(IdentityId id);

// Canonical parameters for identities stated for one fixed sequence, and the
// Fibonacci numbers otherwise.
HoradamParams default_params(IdentityId id);

// Subscripts, depth and limits are bounded so every index expression in the
// catalog stays well inside 64 bits.
inline constexpr Index kMaxParameterMagnitude = 1'000'000;

// Unvalidated request: what a caller asks to evaluate.
struct InstanceRequest {
    IdentityId id = IdentityId::F3;
    HoradamParams params = HoradamParams::fibonacci();
    Index n = 1;
    Index a_n = 1;
    Index c = 1;
    Index r = 0;
    Index s = 0;
    Index d = 0;
};

class InvalidInstance : public Error {
public:
    explicit InvalidInstance(std::string violation)
        : Error("invalid instance: " + violation), violation_(std::move(violation)) {}
    const std::string& violation() const { return violation_; }

private:
    std::string violation_;
};

// A request whose identity-specific preconditions hold. Fields the identity
// does not use are normalized to 0.
class IdentityInstance {
public:
    // Throws InvalidInstance naming the first violated precondition.
    static IdentityInstance create(InstanceRequest request);

    const InstanceRequest& request() const { return req_; }
    IdentityId id() const { return req_.id; }
    const HoradamParams& params() const { return req_.params; }
    Index n() const { return req_.n; }
    Index a_n() const { return req_.a_n; }
    Index c() const { return req_.c; }
    Index r() const { return req_.r; }
    Index s() const { return req_.s; }
    Index d() const { return req_.d; }

private:
    explicit IdentityInstance(InstanceRequest req) : req_(std::move(req)) {}

    InstanceRequest req_;
};

// Normalizes unused fields the same way create() does, without validating.
InstanceRequest normalize(InstanceRequest request);

// Work done by one closed-form evaluation. Summand evaluations are the terms
// of the summed sequence plus the binomial coefficients; coefficient lookups
// (V_r, U_d, ...) are tallied separately.
struct ClosedFormCost {
    std::uint64_t sequence_terms = 0;
    std::uint64_t binomials = 0;
    std::uint64_t coefficients = 0;

    std::uint64_t summand_evals() const { return sequence_terms + binomials; }
};

// The oracle-evaluable left-hand side.
NestedSumSpec lhs_spec(const IdentityInstance& inst);

enum class Variant { a, b };

Rational rhs_H(const IdentityInstance& inst, ClosedFormCost* cost = nullptr);
Rational rhs_F1(Variant variant, const IdentityInstance& inst, ClosedFormCost* cost = nullptr);
Rational rhs_F2(Variant variant, const IdentityInstance& inst, ClosedFormCost* cost = nullptr);
Rational rhs_F3(const IdentityInstance& inst, ClosedFormCost* cost = nullptr);
Rational rhs_F4(const IdentityInstance& inst, ClosedFormCost* cost = nullptr);
Rational rhs_F5(const IdentityInstance& inst, ClosedFormCost* cost = nullptr);
// Dispatches on the parity of n. Evaluated in Q(sqrt D) with Delta = sqrt D;
// throws InvariantBreach if the surd part does not vanish.
Rational rhs_F6(const IdentityInstance& inst, ClosedFormCost* cost = nullptr);
QuadExt rhs_F6_extension(const IdentityInstance& inst, ClosedFormCost* cost = nullptr);
Rational rhs_F7(const IdentityInstance& inst, ClosedFormCost* cost = nullptr);

// The restricted / gibonacci / Fibonacci / Lucas displays, each evaluated as
// written rather than through its parent theorem.
Rational rhs_specialization(IdentityId id, const IdentityInstance& inst, ClosedFormCost* cost = nullptr);

// The right-hand side for inst.id().
Rational rhs(const IdentityInstance& inst, ClosedFormCost* cost = nullptr);

enum class Outcome {
    Verified,               // a_n >= c - 1 and both sides agree
    Mismatch,               // a_n >= c - 1 and they differ
    OutsideDomainEqual,     // a_n < c - 1 (empty LHS by convention), still equal
    OutsideDomainMismatch,  // a_n < c - 1 and the closed form is not 0
    Skipped,                // a precondition failed or a pole was hit
};

std::string_view to_string(Outcome outcome);

// a_n >= c - 1: every sum in the nest is well formed.
inline bool in_verified_domain(Index a_n, Index c) { return a_n >= c - 1; }

struct EvaluationReport {
    InstanceRequest instance;
    std::optional<Rational> lhs;
    std::optional<Rational> rhs;
    bool equal = false;
    Outcome outcome = Outcome::Skipped;
    std::string message;
    std::uint64_t oracle_terms = 0;
    std::uint64_t closed_terms = 0;
    std::chrono::nanoseconds oracle_time{0};
    std::chrono::nanoseconds closed_time{0};
};

// Never throws for library errors: invalid instances and poles become
// Skipped reports carrying the message.
EvaluationReport verify(const InstanceRequest& request);

struct IndexRange {
    Index first = 0;
    Index last = -1;  // inclusive; empty when last < first

    bool empty() const { return last < first; }
    std::size_t size() const { return empty() ? 0 : static_cast<std::size_t>(last - first + 1); }
    static IndexRange single(Index v) { return {v, v}; }
};

struct ParameterFamily {
    std::string name;
    HoradamParams params;
};

// Built-in fixtures: fibonacci, lucas, gibonacci-3-1, gibonacci-m1-2,
// integer-roots (D = 1), negative-d (D = -3), generic (D = -11),
// rational (non-integer p and q).
const std::vector<ParameterFamily>& builtin_families();
std::optional<ParameterFamily> find_family(std::string_view name);
bool family_satisfies(IdentityId id, const HoradamParams& params);
std::vector<ParameterFamily> compatible_families(IdentityId id);

struct SweepGrid {
    std::vector<ParameterFamily> families;
    IndexRange n{1, 3};
    IndexRange c{-1, 1};
    // a_n either as an absolute range or relative to c (a_n = c + offset).
    std::optional<IndexRange> a_absolute;
    IndexRange a_offset{-1, 5};
    IndexRange r{-2, 2};
    IndexRange s{-2, 2};
    IndexRange d{-1, 1};
    // When set, keep a deterministic pseudo-random subset of this many points.
    std::optional<std::size_t> samples;
    std::uint64_t seed = 0;
};

// Grid points in enumeration order: family, n, c, a_n, r, s, d. Axes an
// identity does not use collapse to their normalized value.
std::vector<InstanceRequest> expand_grid(IdentityId id, const SweepGrid& grid);

struct SweepSummary {
    std::size_t total = 0;
    std::size_t verified = 0;
    std::size_t mismatches = 0;
    std::size_t outside_equal = 0;
    std::size_t outside_mismatch = 0;
    std::size_t skipped = 0;

    void add(const EvaluationReport& report);
    bool ok() const { return mismatches == 0; }
};

// One report per grid point, in grid order regardless of `jobs`.
std::vector<EvaluationReport> sweep(IdentityId id, const SweepGrid& grid, unsigned jobs = 1);
std::vector<EvaluationReport> verify_all(const std::vector<InstanceRequest>& requests, unsigned jobs = 1);
SweepSummary summarize(const std::vector<EvaluationReport>& reports);

}  // namespace horadam
