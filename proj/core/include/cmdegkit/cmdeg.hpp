#pragma once

#include "cmdegkit/eval_context.hpp"

#include <string>
#include <vector>

namespace cmdegkit {

// Psi(x) = [psi'(x)]^2 + psi''(x), the function whose complete-monotonicity
// degree this toolkit pins down numerically.
double psi_capital(double x, const EvalContext& ctx = {});

// m-th derivative of Psi via the Leibniz expansion over polygamma factors.
double psi_capital_deriv(int m, double x, const EvalContext& ctx = {});

// phi(x) = -x Psi'(x) / Psi(x). Tends to 4 at both ends of (0, inf); its
// infimum over the positive axis is the monotonicity degree of Psi.
double phi(double x, const EvalContext& ctx = {});

struct GridSpec {
    double min = 0.01;
    double max = 100.0;
    int points = 400;
    std::string scale = "log"; // "log" or "linear"
};

std::vector<double> make_grid(const GridSpec& spec);

struct Witness {
    double x;
    int k;
    double value; // signed derivative value that violated the sign condition
};

struct CMReport {
    std::string fn_id;
    double alpha = 0.0;
    int order = 0; // highest derivative order K checked
    GridSpec grid;
    bool verdict = false;
    std::vector<Witness> witnesses;
    double tolerance = 0.0; // relative slack used in the sign conditions
};

// Checks (-1)^k d^k/dx^k [x^alpha f(x)] >= 0 for k = 0..K over the grid,
// with slack proportional to the accumulated magnitude of the Leibniz terms.
CMReport cm_check(const std::string& fn_id, double alpha, int K,
                  const GridSpec& grid, const EvalContext& ctx = {});

struct DegreeEstimate {
    double lo = 0.0; // largest alpha observed to pass
    double hi = 0.0; // smallest alpha observed to fail
    int order = 0;
    GridSpec grid_spec;
    int iterations = 0;
};

// Bisects [alpha_lo, alpha_hi] on the cm_check verdict. Requires a valid
// bracket: pass at alpha_lo, fail at alpha_hi (throws bracket_error
// otherwise). Stops when the bracket width drops below width_tol or after
// max_iterations splits, whichever comes first.
DegreeEstimate degree_estimate(const std::string& fn_id, double alpha_lo,
                               double alpha_hi, int K, const GridSpec& grid,
                               const EvalContext& ctx = {},
                               double width_tol = 0.0625,
                               int max_iterations = 60);

struct LaplaceCheck {
    double x = 0.0;
    double lhs = 0.0; // x^4 Psi(x)
    double rhs = 0.0; // 1/12 + integral of the kernel against e^{-xt}
    double rel_err = 0.0;
    double tol = 0.0;
    bool pass = false;
    bool horizon_warning = false; // truncation tail may dominate the budget
};

// Cross-checks x^4 Psi(x) against its integral representation.
LaplaceCheck laplace_identity_check(double x, const EvalContext& ctx = {});

} // namespace cmdegkit
