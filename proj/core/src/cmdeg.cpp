#include "cmdegkit/cmdeg.hpp"
#include "cmdegkit/catalog.hpp"
#include "cmdegkit/errors.hpp"
#include "cmdegkit/kernel.hpp"
#include "cmdegkit/quadrature.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmdegkit {
namespace {

constexpr double kSignSlack = 1e-12;

double falling(double a, int i) {
    double r = 1.0;
    for (int j = 0; j < i; ++j)
        r *= a - j;
    return r;
}

} // namespace

double psi_capital(double x, const EvalContext& ctx) {
    return catalog_deriv("Psi", 0, x, ctx).value;
}

double psi_capital_deriv(int m, double x, const EvalContext& ctx) {
    return catalog_deriv("Psi", m, x, ctx).value;
}

double phi(double x, const EvalContext& ctx) {
    const double num = psi_capital_deriv(1, x, ctx);
    const double den = psi_capital(x, ctx);
    return -x * num / den;
}

std::vector<double> make_grid(const GridSpec& spec) {
    if (!(spec.min > 0.0) || !(spec.max > spec.min))
        throw std::invalid_argument("make_grid: need 0 < min < max");
    if (spec.points < 2)
        throw std::invalid_argument("make_grid: need at least 2 points");
    std::vector<double> xs(spec.points);
    if (spec.scale == "log") {
        const double la = std::log(spec.min), lb = std::log(spec.max);
        for (int i = 0; i < spec.points; ++i)
            xs[i] = std::exp(la + (lb - la) * i / (spec.points - 1));
    } else if (spec.scale == "linear") {
        for (int i = 0; i < spec.points; ++i)
            xs[i] = spec.min + (spec.max - spec.min) * i / (spec.points - 1);
    } else {
        throw std::invalid_argument("make_grid: scale must be log or linear");
    }
    xs.front() = spec.min;
    xs.back() = spec.max;
    return xs;
}

CMReport cm_check(const std::string& fn_id, double alpha, int K,
                  const GridSpec& grid, const EvalContext& ctx) {
    if (K < 0 || K > 18)
        throw std::domain_error("cm_check: order K must be in 0..18");
    if (!catalog_has(fn_id))
        throw catalog_error("cm_check: unknown catalog function id: " + fn_id);
    ctx.validate();

    const std::vector<double> xs = make_grid(grid);
    std::vector<std::vector<Witness>> per_point(xs.size());

    detail::parallel_for(int(xs.size()), [&](int idx) {
        const double x = xs[idx];
        std::vector<DerivValue> f(K + 1);
        for (int j = 0; j <= K; ++j)
            f[j] = catalog_deriv(fn_id, j, x, ctx);
        for (int k = 0; k <= K; ++k) {
            // d^k [x^alpha f] = sum_i C(k,i) falling(alpha,i) x^{alpha-i}
            //                          f^{(k-i)}
            double dk = 0.0, scale = 0.0, binom = 1.0;
            for (int i = 0; i <= k; ++i) {
                const double w = binom * falling(alpha, i) *
                                 std::pow(x, alpha - i);
                dk += w * f[k - i].value;
                scale += std::fabs(w) * f[k - i].scale;
                binom = binom * (k - i) / (i + 1);
            }
            const double signed_dk = (k % 2 == 0) ? dk : -dk;
            const double slack = kSignSlack * std::max(1.0, scale);
            if (signed_dk < -slack)
                per_point[idx].push_back({x, k, signed_dk});
        }
    });

    CMReport rep;
    rep.fn_id = fn_id;
    rep.alpha = alpha;
    rep.order = K;
    rep.grid = grid;
    rep.tolerance = kSignSlack;
    for (auto& w : per_point)
        rep.witnesses.insert(rep.witnesses.end(), w.begin(), w.end());
    rep.verdict = rep.witnesses.empty();
    return rep;
}

DegreeEstimate degree_estimate(const std::string& fn_id, double alpha_lo,
                               double alpha_hi, int K, const GridSpec& grid,
                               const EvalContext& ctx, double width_tol,
                               int max_iterations) {
    if (!(alpha_lo < alpha_hi))
        throw bracket_error("degree_estimate: need alpha_lo < alpha_hi");
    if (!cm_check(fn_id, alpha_lo, K, grid, ctx).verdict)
        throw bracket_error("degree_estimate: sign conditions already fail "
                            "at the lower endpoint");
    if (cm_check(fn_id, alpha_hi, K, grid, ctx).verdict)
        throw bracket_error("degree_estimate: sign conditions still hold at "
                            "the upper endpoint");

    DegreeEstimate est;
    est.lo = alpha_lo;
    est.hi = alpha_hi;
    est.order = K;
    est.grid_spec = grid;
    while (est.iterations < max_iterations && est.hi - est.lo > width_tol) {
        const double mid = 0.5 * (est.lo + est.hi);
        if (cm_check(fn_id, mid, K, grid, ctx).verdict)
            est.lo = mid;
        else
            est.hi = mid;
        ++est.iterations;
    }
    return est;
}

LaplaceCheck laplace_identity_check(double x, const EvalContext& ctx) {
    if (!(x > 0.0))
        throw std::domain_error("laplace_identity_check: x must be positive");
    ctx.validate();

    LaplaceCheck chk;
    chk.x = x;
    chk.lhs = std::pow(x, 4.0) * psi_capital(x, ctx);

    const double T = ctx.horizon;
    const auto integrand = [&](double t) {
        return q_deriv(4, t, ctx) * std::exp(-x * t);
    };
    const QuadResult quad = integrate(integrand, 0.0, T, ctx.quad_rel_tol);
    chk.rhs = 1.0 / 12.0 + quad.value;

    chk.tol = std::max(1e-8, 10.0 * ctx.quad_rel_tol);
    chk.rel_err = std::fabs(chk.lhs - chk.rhs) /
                  std::max(std::fabs(chk.lhs), 1e-300);
    chk.pass = chk.rel_err <= chk.tol;

    // The integrand decays past the horizon; bounding the dropped tail by
    // value-at-horizon times the remaining exponential mass flags runs where
    // truncation, not quadrature, limits the comparison.
    const double tail = std::fabs(q_deriv(4, T, ctx)) * std::exp(-x * T) / x;
    chk.horizon_warning = tail > 0.1 * chk.tol * std::max(std::fabs(chk.lhs),
                                                          1e-300);
    return chk;
}

} // namespace cmdegkit
