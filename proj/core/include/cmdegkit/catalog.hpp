#pragma once

#include "cmdegkit/eval_context.hpp"

#include <string>
#include <vector>

namespace cmdegkit {

// A derivative evaluation with a magnitude proxy: `scale` is the sum of
// the absolute values of the closed-form pieces the value was assembled
// from. Sign checks use it to distinguish benign rounding in a cancelling
// sum from a genuine sign violation.
struct DerivValue {
    double value = 0.0;
    double scale = 0.0;
};

// Closed-form k-th derivatives of the built-in test functions. Ids:
//   "inv_x"      1/x
//   "pow:a"      x^-a for the given positive a, e.g. "pow:1.5"
//   "exp_neg"    e^-x
//   "inv_x_xp1"  1/(x(x+1))
//   "Psi"        [psi'(x)]^2 + psi''(x)
//   "h_lambda:v" Psi(x) - (x^2 + v x + 12)/(12 x^4 (x+1)^2)
//   "neg_h_mu:v" the negated h function for the upper-bound family
// Throws catalog_error for unknown ids, std::domain_error for bad k or x.
DerivValue catalog_deriv(const std::string& id, int k, double x,
                         const EvalContext& ctx);

// Convenience: value only.
double catalog_eval(const std::string& id, double x, const EvalContext& ctx);

// True when the id (including any parameter suffix) parses to a known
// catalog entry.
bool catalog_has(const std::string& id);

// The fixed ids (parameterized entries listed with a sample parameter).
std::vector<std::string> catalog_ids();

} // namespace cmdegkit
