#pragma once

// Residual suites for the auxiliary lemmas: binomial column sums and
// nested-ones counts (plain and shifted), the Lucas-sequence relations
// L1-L4, and the restricted-sequence relation.

#include <string>
#include <vector>

#include "horadam/identities.hpp"

namespace horadam {

struct LemmaSuiteResult {
    explicit LemmaSuiteResult(std::string suite) : name(std::move(suite)) {}

    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::vector<std::string> notes;  // skipped families, first failures

    bool ok() const { return failures == 0; }
};

struct LemmaGrid {
    std::vector<ParameterFamily> families = builtin_families();
    IndexRange r{-4, 4};
    IndexRange d{-4, 4};
    IndexRange j{-10, 10};
};

std::vector<LemmaSuiteResult> run_lemma_suites(const LemmaGrid& grid = {});

}  // namespace horadam
