#include "cmdegkit/kernel.hpp"
#include "cmdegkit/errors.hpp"
#include "cmdegkit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cmdegkit {
namespace {

// Bernoulli numbers with the B1 = +1/2 convention: sigma(s) = s/(1-e^-s)
// has Maclaurin coefficients B+_k / k!, and more generally
// sigma^(j)(s) = sum_m B+_(m+j) s^m / m!.
constexpr double kBplus[25] = {
    1.0,
    0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
    0.0,
    854513.0 / 138.0,
    0.0,
    -236364091.0 / 2730.0};

constexpr int kSeriesTerms = 20;

double sigma_series(int j, double s) {
    // sum_m B+_(m+j) s^m / m!, m = 0 .. kSeriesTerms-1
    double sum = kBplus[j];
    double term = 1.0; // s^m / m!
    for (int m = 1; m < kSeriesTerms && m + j < 25; ++m) {
        term *= s / m;
        sum += kBplus[m + j] * term;
    }
    return sum;
}

// Closed forms, stabilized per sign of s. For s > 0 the printed forms are
// multiplied through by e^(-(k+1)s) so nothing overflows; for s < 0 the
// printed forms are already stable (e^s <= 1).
double sigma_closed(double s) {
    // total in s: for s < -709 the denominator is -inf and the quotient
    // correctly underflows to +0
    return s / -std::expm1(-s);
}

double d1_closed(double s) {
    if (s > 0.0) {
        const double e1 = std::exp(-s);
        const double d = -std::expm1(-s); // 1 - e^-s
        return (1.0 - (s + 1.0) * e1) / (d * d);
    }
    const double es = std::exp(s);
    const double d = es - 1.0;
    return (es - s - 1.0) * es / (d * d);
}

double d2_closed(double s) {
    if (s > 0.0) {
        const double e1 = std::exp(-s);
        const double e2 = e1 * e1;
        const double d = -std::expm1(-s);
        return ((s - 2.0) * e1 + (s + 2.0) * e2) / (d * d * d);
    }
    const double es = std::exp(s);
    const double d = es - 1.0;
    return ((s - 2.0) * es + s + 2.0) * es / (d * d * d);
}

double d3_closed(double s) {
    if (s > 0.0) {
        const double e1 = std::exp(-s);
        const double e2 = e1 * e1;
        const double e3 = e2 * e1;
        const double d = -std::expm1(-s);
        return -((s - 3.0) * e1 + 4.0 * s * e2 + (s + 3.0) * e3) / (d * d * d * d);
    }
    const double es = std::exp(s);
    const double d = es - 1.0;
    return -((s - 3.0) * es * es + 4.0 * s * es + s + 3.0) * es / (d * d * d * d);
}

double d4_closed(double s) {
    if (s > 0.0) {
        const double e1 = std::exp(-s);
        const double e2 = e1 * e1;
        const double e3 = e2 * e1;
        const double e4 = e2 * e2;
        const double d = -std::expm1(-s);
        return ((s - 4.0) * e1 + (11.0 * s - 12.0) * e2 + (11.0 * s + 12.0) * e3 +
                (s + 4.0) * e4) /
               (d * d * d * d * d);
    }
    const double es = std::exp(s);
    const double e2 = es * es;
    const double e3 = e2 * es;
    const double d = es - 1.0;
    return ((s - 4.0) * e3 + (11.0 * s - 12.0) * e2 + (11.0 * s + 12.0) * es + s + 4.0) *
           es / (d * d * d * d * d);
}

// Folded convolution: Integral_0^t f(s) g(t-s) ds computed over [0, t/2]
// as f(s)g(t-s) + f(t-s)g(s), which keeps the adaptive scheme on half the
// interval and is exact by the s <-> t-s substitution.
QuadResult convolve(const std::function<double(double)>& f,
                    const std::function<double(double)>& g, double t,
                    const EvalContext& ctx) {
    auto integrand = [&](double s) { return f(s) * g(t - s) + f(t - s) * g(s); };
    return integrate(integrand, 0.0, 0.5 * t, ctx.quad_rel_tol);
}

} // namespace

double sigma(double s, const EvalContext& ctx) {
    if (std::fabs(s) < ctx.series_radius)
        return sigma_series(0, s);
    return sigma_closed(s);
}

double sigma_deriv(int k, double s, const EvalContext& ctx) {
    if (k < 1 || k > 4)
        throw std::domain_error("sigma_deriv: k must be in 1..4");
    if (std::fabs(s) < ctx.series_radius)
        return sigma_series(k, s);
    switch (k) {
    case 1: return d1_closed(s);
    case 2: return d2_closed(s);
    case 3: return d3_closed(s);
    default: return d4_closed(s);
    }
}

double q_deriv(int k, double t, const EvalContext& ctx) {
    if (k < 0 || k > 4)
        throw std::domain_error("q_deriv: k must be in 0..4");
    if (!(t > 0.0))
        throw std::domain_error("q_deriv: t must be positive");

    auto s0 = [&ctx](double s) { return sigma(s, ctx); };
    auto s1 = [&ctx](double s) { return sigma_deriv(1, s, ctx); };
    auto s2 = [&ctx](double s) { return sigma_deriv(2, s, ctx); };

    switch (k) {
    case 0:
        return convolve(s0, s0, t, ctx).value - t * sigma(t, ctx);
    case 1:
        return convolve(s0, s1, t, ctx).value - t * sigma_deriv(1, t, ctx);
    case 2:
        return convolve(s1, s1, t, ctx).value - t * sigma_deriv(2, t, ctx);
    case 3:
        return convolve(s1, s2, t, ctx).value + 0.5 * sigma_deriv(1, t, ctx) -
               sigma_deriv(2, t, ctx) - t * sigma_deriv(3, t, ctx);
    default:
        return convolve(s2, s2, t, ctx).value + sigma_deriv(2, t, ctx) -
               2.0 * sigma_deriv(3, t, ctx) - t * sigma_deriv(4, t, ctx);
    }
}

double q4_lower_bound(double t, const EvalContext& ctx) {
    return (t / 6.0 + 1.0) * sigma_deriv(2, t, ctx) - 2.0 * sigma_deriv(3, t, ctx) -
           t * sigma_deriv(4, t, ctx);
}

HChain h_chain(double s) {
    if (!(s >= 0.0))
        throw std::domain_error("h_chain: s must be nonnegative");
    if (s > kHChainMaxS) {
        std::ostringstream os;
        os << "h_chain: e^(4s) overflows for s=" << s << " (max " << kHChainMaxS << ")";
        throw overflow_error(os.str());
    }
    const double e1 = std::exp(s);
    const double e2 = e1 * e1;
    const double e3 = e2 * e1;
    const double e4 = e2 * e2;
    const double s2 = s * s;

    HChain r{};
    r.h1 = e4 - 4.0 * (s2 - 3.0 * s + 4.0) * e3 - (4.0 * s2 - 30.0) * e2 -
           4.0 * (s2 + 3.0 * s + 4.0) * e1 + 1.0;
    r.h2 = e3 - (3.0 * s2 - 7.0 * s + 9.0) * e2 - (2.0 * s2 + 2.0 * s - 15.0) * e1 -
           s2 - 5.0 * s - 7.0;
    r.h1p = 4.0 * r.h2 * e1;
    r.h2p = 3.0 * e3 - (6.0 * s2 - 8.0 * s + 11.0) * e2 - (2.0 * s2 + 6.0 * s - 13.0) * e1 -
            2.0 * s - 5.0;
    r.h2pp = 9.0 * e3 - 2.0 * (6.0 * s2 - 2.0 * s + 7.0) * e2 -
             (2.0 * s2 + 10.0 * s - 7.0) * e1 - 2.0;
    r.h3 = 27.0 * e2 - 8.0 * (3.0 * s2 + 2.0 * s + 3.0) * e1 - 2.0 * s2 - 14.0 * s - 3.0;
    r.h2p3 = r.h3 * e1;
    r.h3p = 54.0 * e2 - 8.0 * (3.0 * s2 + 8.0 * s + 5.0) * e1 - 2.0 * (2.0 * s + 7.0);
    r.h3pp = 4.0 * (27.0 * e2 - 2.0 * (3.0 * s2 + 14.0 * s + 13.0) * e1 - 1.0);
    return r;
}

double h3_third(double s) {
    if (!(s >= 0.0))
        throw std::domain_error("h3_third: s must be nonnegative");
    if (s > kHChainMaxS)
        throw overflow_error("h3_third: exponential overflow");
    const double e1 = std::exp(s);
    return 8.0 * (27.0 * e1 - 3.0 * s * s - 20.0 * s - 27.0) * e1;
}

double log_concavity(double s, const EvalContext& ctx) {
    if (!(s >= 0.0))
        throw std::domain_error("log_concavity: s must be nonnegative");
    if (s > 700.0)
        throw overflow_error("log_concavity: sigma'' underflows past s = 700");
    const double s2 = sigma_deriv(2, s, ctx);
    const double s3 = sigma_deriv(3, s, ctx);
    const double s4 = sigma_deriv(4, s, ctx);
    const double r = s3 / s2;
    return s4 / s2 - r * r;
}

ConvolutionBound convolution_bound_check(double t, const EvalContext& ctx) {
    if (!(t > 0.0))
        throw std::domain_error("convolution_bound_check: t must be positive");
    auto s2 = [&ctx](double s) { return sigma_deriv(2, s, ctx); };

    ConvolutionBound out{};
    QuadResult a = convolve(s2, s2, t, ctx);
    out.a = a.value;
    out.a_err = a.abs_error;

    auto logs2 = [&](double u) { return std::log(s2(u)); };
    QuadResult li = integrate(logs2, 0.0, t, ctx.quad_rel_tol);
    out.b = t * std::exp(2.0 / t * li.value);
    // first-order error propagation through exp
    out.b_err = out.b * 2.0 / t * li.abs_error;

    out.c = t / 6.0 * s2(t);
    return out;
}

HHBounds hh_bounds_check(const std::function<double(double)>& f,
                         const std::function<double(double)>& fprime,
                         double a, double b, double m, double M,
                         const EvalContext& ctx) {
    if (!(a < b))
        throw std::domain_error("hh_bounds_check: need a < b");
    if (!(m <= M))
        throw std::domain_error("hh_bounds_check: need m <= M");

    const double w = b - a;
    const double s2 = (fprime(b) - fprime(a)) / w;
    QuadResult integral = integrate(f, a, b, ctx.quad_rel_tol);

    HHBounds r{};
    r.gap = integral.value / w - 0.5 * (f(a) + f(b));
    r.lhs_gap_lower = (2.0 * m - 3.0 * s2) / 12.0 * w * w;
    r.lhs_gap_upper = (2.0 * M - 3.0 * s2) / 12.0 * w * w;
    r.neg_gap_lower = (3.0 * s2 - M) / 24.0 * w * w;
    r.neg_gap_upper = (3.0 * s2 - m) / 24.0 * w * w;

    const double scale = std::max({1.0, std::fabs(r.gap), std::fabs(r.lhs_gap_lower),
                                   std::fabs(r.lhs_gap_upper)});
    const double slack = 1e-12 * scale + integral.abs_error / w;
    const double margins[4] = {
        r.gap - r.lhs_gap_lower,       // >= 0 wanted
        r.lhs_gap_upper - r.gap,       // >= 0 wanted
        (-r.gap) - r.neg_gap_lower,    // >= 0 wanted
        r.neg_gap_upper - (-r.gap)};   // >= 0 wanted
    double worst = margins[0];
    for (double mg : margins) worst = std::min(worst, mg);
    r.holds = worst >= -slack;
    r.violation = r.holds ? 0.0 : worst;
    return r;
}

std::pair<double, double> second_derivative_range(
    const std::function<double(double)>& fsecond, double a, double b, int points) {
    if (points < 2)
        throw std::domain_error("second_derivative_range: need at least 2 points");
    double lo = fsecond(a), hi = lo;
    for (int i = 1; i < points; ++i) {
        const double x = a + (b - a) * i / (points - 1);
        const double v = fsecond(x);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    // widen by 10% of the span (plus a floor when the span is zero)
    const double pad = 0.1 * std::max(hi - lo, 1e-15 * std::max(std::fabs(lo), 1.0));
    return {lo - pad, hi + pad};
}

bool product_monotonicity_check(double lambda, const std::vector<double>& grid,
                                const EvalContext& ctx) {
    if (!(lambda > 0.0))
        throw std::domain_error("product_monotonicity_check: lambda must be positive");
    if (grid.empty())
        return true;
    for (size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] < lambda))
            throw std::domain_error("product_monotonicity_check: grid point outside (0, lambda)");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw std::domain_error("product_monotonicity_check: grid must be strictly increasing");
    }

    std::vector<double> vals(grid.size());
    double scale = 1.0;
    for (size_t i = 0; i < grid.size(); ++i) {
        vals[i] = sigma_deriv(2, grid[i], ctx) * sigma_deriv(2, lambda - grid[i], ctx);
        scale = std::max(scale, std::fabs(vals[i]));
    }
    const double tol = 1e-12 * scale;
    const double half = 0.5 * lambda;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        if (grid[i + 1] <= half) { // fully on the rising side
            if (vals[i + 1] < vals[i] - tol)
                return false;
        } else if (grid[i] >= half) { // fully on the falling side
            if (vals[i + 1] > vals[i] + tol)
                return false;
        } // pairs straddling lambda/2 carry no monotonicity constraint
    }
    return true;
}

KernelSample kernel_sample(double t, const EvalContext& ctx) {
    KernelSample s{};
    s.t = t;
    s.sigma = sigma(t, ctx);
    for (int k = 1; k <= 4; ++k)
        s.dsigma[static_cast<size_t>(k - 1)] = sigma_deriv(k, t, ctx);
    s.q4 = q_deriv(4, t, ctx);
    s.logconc = log_concavity(t, ctx);
    return s;
}

} // namespace cmdegkit
