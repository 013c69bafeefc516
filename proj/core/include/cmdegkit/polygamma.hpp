#pragma once

#include "cmdegkit/eval_context.hpp"

namespace cmdegkit {

// psi^(n)(x) for n >= 1, x > 0, by recurrence shift to a large argument
// followed by the Bernoulli asymptotic series. Relative accuracy is near
// machine precision for n <= 20 (target 1e-12 for n <= 6).
// Throws std::domain_error for n < 1 or x <= 0, overflow_error when
// x^-(n+1) is not representable.
double polygamma(int n, double x, const EvalContext& ctx);

// Partial sum of the large-argument expansion of psi', psi'' or psi''',
// kept to `terms` terms: the leading (n-1)!/z^n, then n!/(2 z^(n+1)), then
// Bernoulli corrections B_2k (2k+n-1)! / ((2k)! z^(2k+n)). terms <= 12
// (B_2..B_20 are tabulated). Throws std::domain_error on z <= 0, n not in
// {1,2,3}, or terms out of range.
double polygamma_asymptotic(int n, double z, int terms);

// Independent oracle: adaptive quadrature of
// (-1)^(n+1) * Integral_0^T t^n e^(-xt) / (1 - e^(-t)) dt
// with T = max(ctx.horizon, 80/x). Agrees with polygamma to about
// 10 * ctx.quad_rel_tol relative. Throws quadrature_error on
// nonconvergence and the same domain errors as polygamma.
double polygamma_integral(int n, double x, const EvalContext& ctx);

} // namespace cmdegkit
