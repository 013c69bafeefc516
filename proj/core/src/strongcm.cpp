#include "cmdegkit/strongcm.hpp"
#include "cmdegkit/catalog.hpp"
#include "cmdegkit/errors.hpp"
#include "parallel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cmdegkit {
namespace {

constexpr double kNoiseRel = 1e-12;

} // namespace

CMReport strongly_cm_check(const std::string& fn_id, int K,
                           const GridSpec& grid, const EvalContext& ctx) {
    if (K < 0 || K > 18)
        throw std::domain_error("strongly_cm_check: order K must be in 0..18");
    if (!catalog_has(fn_id))
        throw catalog_error("strongly_cm_check: unknown catalog function id: "
                            + fn_id);
    ctx.validate();

    const std::vector<double> xs = make_grid(grid);
    const size_t npts = xs.size();
    // g[n][i] = (-1)^n x_i^{n+1} f^{(n)}(x_i), with a matching noise scale
    std::vector<std::vector<double>> g(K + 1, std::vector<double>(npts));
    std::vector<std::vector<double>> gs(K + 1, std::vector<double>(npts));
    detail::parallel_for(int(npts), [&](int i) {
        const double x = xs[i];
        for (int n = 0; n <= K; ++n) {
            const DerivValue d = catalog_deriv(fn_id, n, x, ctx);
            const double w = std::pow(x, double(n + 1));
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            g[n][i] = sign * w * d.value;
            gs[n][i] = w * d.scale;
        }
    });

    CMReport rep;
    rep.fn_id = fn_id;
    rep.alpha = 0.0;
    rep.order = K;
    rep.grid = grid;
    rep.tolerance = kNoiseRel;
    for (int n = 0; n <= K; ++n) {
        for (size_t i = 0; i < npts; ++i) {
            const double tol = kNoiseRel * std::max(1.0, gs[n][i]);
            if (g[n][i] < -tol)
                rep.witnesses.push_back({xs[i], n, g[n][i]});
        }
        for (size_t i = 0; i + 1 < npts; ++i) {
            const double tol =
                kNoiseRel * std::max(1.0, gs[n][i] + gs[n][i + 1]);
            const double rise = g[n][i + 1] - g[n][i];
            if (rise > tol)
                rep.witnesses.push_back({xs[i + 1], n, rise});
        }
    }
    rep.verdict = rep.witnesses.empty();
    return rep;
}

EquivalenceReport equivalence_test(const std::string& fn_id, int K,
                                   const GridSpec& grid,
                                   const EvalContext& ctx) {
    EquivalenceReport rep;
    rep.strong_verdict = strongly_cm_check(fn_id, K, grid, ctx).verdict;
    rep.xcm_verdict = cm_check(fn_id, 1.0, K, grid, ctx).verdict;
    rep.agree = rep.strong_verdict == rep.xcm_verdict;
    return rep;
}

} // namespace cmdegkit
