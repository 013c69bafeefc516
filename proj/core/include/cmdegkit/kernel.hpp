#pragma once

#include "cmdegkit/eval_context.hpp"

#include <array>
#include <functional>
#include <vector>

namespace cmdegkit {

// Point evaluation bundle used by kernel dumps and reports.
struct KernelSample {
    double t = 0.0;
    double sigma = 0.0;
    std::array<double, 4> dsigma{}; // sigma' .. sigma'''' at t
    double q4 = 0.0;                // q^(4)(t)
    double logconc = 0.0;           // [ln sigma'']''(t)
};

// sigma(s) = s / (1 - e^-s), continued by 1 at s = 0. Total on the reals;
// Maclaurin branch for |s| < ctx.series_radius.
double sigma(double s, const EvalContext& ctx);

// k-th derivative of sigma, k in 1..4. Series branch below the radius,
// stabilized closed forms elsewhere.
double sigma_deriv(int k, double s, const EvalContext& ctx);

// q(t) = Integral_0^t sigma(s) sigma(t-s) ds - t sigma(t) and its
// derivatives through order 4, each via one convolution integral plus
// boundary terms. k in 0..4, t > 0. Throws quadrature_error on
// nonconvergence.
double q_deriv(int k, double t, const EvalContext& ctx);

// The lower bound the convolution inequality yields for q^(4):
// (1/6) t sigma''(t) + sigma''(t) - 2 sigma'''(t) - t sigma''''(t).
double q4_lower_bound(double t, const EvalContext& ctx);

// The positivity cascade: h1 and the derivatives the proof chains through.
// All nine vanish at s = 0 and are positive for s > 0.
struct HChain {
    double h1, h1p;             // h1, h1'
    double h2, h2p, h2pp, h2p3; // h2, h2', h2'', h2'''
    double h3, h3p, h3pp;       // h3, h3', h3''
};

// Direct exponential-polynomial evaluation. h1 carries an e^(4s) term, so
// doubles overflow near s = 177; throws overflow_error beyond kHChainMaxS.
inline constexpr double kHChainMaxS = 177.0;
HChain h_chain(double s);

// h3'''(s) = 8 (27 e^s - 3 s^2 - 20 s - 27) e^s, the chain's terminal
// inequality; separate because HChain holds the nine chained values.
double h3_third(double s);

// [ln sigma''(s)]'' = sigma''''/sigma'' - (sigma'''/sigma'')^2, negative on
// (0, inf). Series branch below the radius (the closed forms are 0/0 at 0;
// the limit is -1/5).
double log_concavity(double s, const EvalContext& ctx);

// (A, B, C) with A = Integral_0^t sigma''(s) sigma''(t-s) ds,
// B = t exp[(2/t) Integral_0^t ln sigma''(u) du], C = (1/6) t sigma''(t);
// the ordering A >= B >= C holds for t > 0. Error fields carry the
// quadrature error estimates for A and B.
struct ConvolutionBound {
    double a = 0.0, b = 0.0, c = 0.0;
    double a_err = 0.0, b_err = 0.0;
};
ConvolutionBound convolution_bound_check(double t, const EvalContext& ctx);

// Two-sided estimates for the average-minus-endpoint-mean gap of a twice
// differentiable f with m <= f'' <= M on (a, b), S2 = (f'(b)-f'(a))/(b-a):
//   (2m-3*S2)/12 (b-a)^2 <= gap <= (2M-3*S2)/12 (b-a)^2
//   (3*S2-M)/24 (b-a)^2 <= -gap <= (3*S2-m)/24 (b-a)^2
struct HHBounds {
    double gap = 0.0;            // (1/(b-a)) Int_a^b f - (f(a)+f(b))/2
    double lhs_gap_lower = 0.0;  // (2m-3*S2)(b-a)^2/12
    double lhs_gap_upper = 0.0;  // (2M-3*S2)(b-a)^2/12
    double neg_gap_lower = 0.0;  // (3*S2-M)(b-a)^2/24
    double neg_gap_upper = 0.0;  // (3*S2-m)(b-a)^2/24
    bool holds = false;          // all four inequalities within slack
    double violation = 0.0;      // worst signed margin when violated
};
HHBounds hh_bounds_check(const std::function<double(double)>& f,
                         const std::function<double(double)>& fprime,
                         double a, double b, double m, double M,
                         const EvalContext& ctx);

// Convenience for callers without analytic curvature bounds: scan f'' on a
// 1000-point grid and widen the observed range by 10%.
std::pair<double, double> second_derivative_range(
    const std::function<double(double)>& fsecond, double a, double b,
    int points = 1000);

// With f = sigma'' (log-concave), x -> sigma''(x) sigma''(lambda - x) must
// be non-decreasing on (0, lambda/2) and non-increasing on (lambda/2,
// lambda), within 1e-12 * scale. grid must be sorted and inside
// (0, lambda).
bool product_monotonicity_check(double lambda, const std::vector<double>& grid,
                                const EvalContext& ctx);

// Bundle of kernel values at one t.
KernelSample kernel_sample(double t, const EvalContext& ctx);

} // namespace cmdegkit
