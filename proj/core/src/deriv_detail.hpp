#pragma once

#include "cmdegkit/catalog.hpp"
#include "cmdegkit/eval_context.hpp"

namespace cmdegkit::detail {

// Leibniz expansion of the m-th derivative of Psi = (psi')^2 + psi''.
DerivValue psi_deriv_dv(int m, double x, const EvalContext& ctx);

// k-th derivative of h_lambda = Psi - rational comparison side, with the
// rational part differentiated exactly through its partial fractions.
DerivValue gap_deriv_dv(double lambda, int k, double x,
                        const EvalContext& ctx);

} // namespace cmdegkit::detail
