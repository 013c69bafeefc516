#pragma once

#include "cmdegkit/eval_context.hpp"

#include <string>
#include <vector>

namespace cmdegkit {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteResult {
    std::vector<CriterionResult> criteria;
    bool all_pass = false;
};

// Number of library-level checks in the release gate (the determinism
// check on the command-line tool lives outside the library and is driven
// by the test harness).
int criterion_count();

// Runs one gate check, index 1..criterion_count(). Numeric failures are
// folded into the result detail; only a bad index throws.
CriterionResult run_criterion(int index, const EvalContext& ctx = {});

SuiteResult run_suite(const EvalContext& ctx = {});

} // namespace cmdegkit
