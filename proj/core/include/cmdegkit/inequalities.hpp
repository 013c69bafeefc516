#pragma once

#include "cmdegkit/catalog.hpp"
#include "cmdegkit/cmdeg.hpp"
#include "cmdegkit/eval_context.hpp"

#include <string>
#include <vector>

namespace cmdegkit {

// Degree-10 numerator of the sharpened lower bound, positive coefficients.
double p_poly(double x);

// Rational comparison sides for Psi:
//   "lower1"  (x^2 + 12) / (12 x^4 (x+1)^2)
//   "lower2"  p(x) / (900 x^4 (x+1)^10)
//   "upper"   (x + 12) / (12 x^4 (x+1))
double bound_eval(const std::string& bound_id, double x);

struct BoundWitness {
    double x;
    double lhs; // Psi(x)
    double rhs; // rational side at x
};

struct BoundReport {
    std::string bound_id;
    GridSpec grid;
    double min_margin = 0.0; // most pessimistic signed margin seen
    bool verdict = false;
    std::vector<BoundWitness> witnesses;
};

// Checks Psi against one rational side over the grid. Margin is
// Psi - side for the lower bounds and side - Psi for the upper bound;
// a witness is recorded where the margin drops below the noise allowance.
BoundReport bound_check(const std::string& bound_id, const GridSpec& grid,
                        const EvalContext& ctx = {});

// Verifies max(lower1, lower2) < Psi < upper at every grid point; the
// margin at x is the smaller of the two one-sided margins.
BoundReport sandwich_check(const GridSpec& grid, const EvalContext& ctx = {});

// One-parameter gap family: h_lambda(x) = Psi(x) - (x^2 + lambda x + 12)
// / (12 x^4 (x+1)^2). Nonnegative everywhere exactly when lambda <= 0;
// nonpositive everywhere exactly when lambda >= 4.
double h_lambda(double lambda, double x, const EvalContext& ctx = {});
DerivValue h_lambda_deriv(double lambda, int k, double x,
                          const EvalContext& ctx = {});

// Two-sided family check: (x^2 + mu x + 12)/(12 x^4 (x+1)^2) < Psi(x) <
// (x^2 + nu x + 12)/(12 x^4 (x+1)^2) over the grid. When a side fails,
// witnesses are hunted on a wide log scan (2000 points over [1e-3, 1e6])
// and each sign change is refined by golden-section shrinking so the
// reported x sits at the violation boundary.
BoundReport double_inequality_check(double mu, double nu,
                                    const GridSpec& grid,
                                    const EvalContext& ctx = {});

struct RatioScan {
    double min = 0.0;
    double argmin = 0.0;
    double max = 0.0;
    double argmax = 0.0;
};

struct ConjectureProbe {
    DegreeEstimate lower_gap; // degree bracket for h_lambda
    DegreeEstimate upper_gap; // degree bracket for -h_mu
    RatioScan lower_ratio;    // -x h'/h over the default grid
    RatioScan upper_ratio;
    std::string notes;
};

// Exploratory only: brackets the monotonicity degree of h_lambda and of
// -h_mu and scans the local degree ratio -x h'(x)/h(x). No correctness
// claim is attached; values of lambda in (0, 4) are flagged as the
// uncharacterized regime. Never throws on a failed bracket; the notes
// record what happened.
ConjectureProbe conjecture_probe(double lambda, double mu,
                                 const EvalContext& ctx = {});

} // namespace cmdegkit
