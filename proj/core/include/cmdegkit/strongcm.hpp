#pragma once

#include "cmdegkit/cmdeg.hpp"
#include "cmdegkit/eval_context.hpp"

#include <string>

namespace cmdegkit {

// Tests the strong form of complete monotonicity on a grid: every
// g_n(x) = (-1)^n x^{n+1} f^{(n)}(x), n = 0..K, must be nonnegative and
// non-increasing. Monotonicity is checked weakly across adjacent grid
// points with a magnitude-proportional allowance. In the returned report
// a witness (x, n, v) carries either a negative g_n value or, for a
// monotonicity breach at the pair ending at x, the positive rise.
CMReport strongly_cm_check(const std::string& fn_id, int K,
                           const GridSpec& grid, const EvalContext& ctx = {});

struct EquivalenceReport {
    bool strong_verdict = false;
    bool xcm_verdict = false; // sign conditions applied to x f(x)
    bool agree = false;
};

// The strong property holds exactly when x f(x) is completely monotonic;
// this runs both grid tests at the same order and reports whether the
// verdicts coincide. The x f derivatives come from the exact product rule
// d^k[x f] = x f^(k) + k f^(k-1).
EquivalenceReport equivalence_test(const std::string& fn_id, int K,
                                   const GridSpec& grid,
                                   const EvalContext& ctx = {});

} // namespace cmdegkit
