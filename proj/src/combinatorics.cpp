#include "horadam/combinatorics.hpp"

#include <string>

namespace horadam {

Integer binom(Index top, Index k) {
    if (k < 0) throw PreconditionViolation("binom: k must be non-negative, got " + std::to_string(k));
    Integer result;
    // mpz_bin_ui implements the falling-factorial definition, negative tops included.
    mpz_bin_ui(result.get_mpz_t(), Integer(std::to_string(top)).get_mpz_t(),
               static_cast<unsigned long>(k));
    return result;
}

Integer binom_column_sum(Index k, Index m, Index c) {
    if (k < 0) {
        throw PreconditionViolation("binom_column_sum: k must be non-negative, got " + std::to_string(k));
    }
    if (m < c) return 0;
    return binom(checked_add(checked_sub(m, c), checked_add(k, 1)), checked_add(k, 1));
}

Integer nested_ones(Index s, Index b_s, Index c) {
    if (s < 1) throw PreconditionViolation("nested_ones: depth must be positive, got " + std::to_string(s));
    return binom(checked_sub(checked_add(b_s, s), c), s);
}

}  // namespace horadam
