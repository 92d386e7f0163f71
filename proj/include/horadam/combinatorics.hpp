#pragma once

#include "horadam/exactnum.hpp"

namespace horadam {

// Generalized binomial top (top-1) ... (top-k+1) / k! for any integer top and
// k >= 0. binom(m, k) == 0 for 0 <= m < k; negative tops give the
// alternating-sign values binom(-m, k) == (-1)^k binom(m+k-1, k).
Integer binom(Index top, Index k);

// sum_{j=c}^{m} binom(j - c + k, k), in closed form binom(m - c + k + 1, k + 1).
// An empty range (m < c) is 0.
Integer binom_column_sum(Index k, Index m, Index c);

// The s-fold nested sum of 1 with every lower limit c and outer limit b_s:
// binom(b_s + s - c, s). Matches the literal sum whenever b_s >= c - 1.
Integer nested_ones(Index s, Index b_s, Index c);

}  // namespace horadam
