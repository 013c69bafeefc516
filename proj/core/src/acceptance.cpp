#include "cmdegkit/acceptance.hpp"
#include "cmdegkit/catalog.hpp"
#include "cmdegkit/cmdeg.hpp"
#include "cmdegkit/inequalities.hpp"
#include "cmdegkit/kernel.hpp"
#include "cmdegkit/polygamma.hpp"
#include "cmdegkit/series.hpp"
#include "cmdegkit/strongcm.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmdegkit {
namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Gate {
    bool ok = true;
    std::string fails;
    std::string infos;
    void require(bool cond, const std::string& msg) {
        if (!cond) {
            ok = false;
            if (!fails.empty())
                fails += "; ";
            fails += msg;
        }
    }
    void info(const std::string& s) {
        if (!infos.empty())
            infos += "; ";
        infos += s;
    }
    CriterionResult done(int index, const std::string& name) const {
        CriterionResult r;
        r.index = index;
        r.name = name;
        r.pass = ok;
        r.detail = ok ? infos : fails;
        return r;
    }
};

bool starts_with(const std::string& s, const char* prefix) {
    return s.rfind(prefix, 0) == 0;
}

// ---- 1: the eight exact integer coefficients -------------------------------

CriterionResult criterion_coeff_table(const EvalContext&) {
    static const long long expect[8] = {840,    4968,    16296,   39888,
                                        104040, 472824, 2962344, 17643744};
    Gate g;
    for (int k = 5; k <= 12; ++k) {
        const bigint got = q_coefficient(k);
        if (got != bigint(expect[k - 5]))
            g.require(false, "Q(" + std::to_string(k) + ") = " + got.str() +
                                 ", expected " +
                                 std::to_string(expect[k - 5]));
    }
    g.info("Q(5)..Q(12) match the frozen integer table exactly");
    return g.done(1, "coefficient-table-exactness");
}

// ---- 2: positivity to k=200 and the three quadratic roots ------------------

CriterionResult criterion_positivity_roots(const EvalContext&) {
    Gate g;
    const SeriesTable table = q_positivity(200);
    g.require(table.all_positive, "a coefficient through k=200 is not positive");

    const auto roots = quadratic_larger_roots();
    static const double quad[3][3] = {
        {66.0, 35.0, -78.0}, {33.0, -148.0, 12.0}, {2.0, -31.0, 66.0}};
    static const char* prefixes[3] = {"0.85", "4.4", "12.9"};
    std::string printed;
    for (int i = 0; i < 3; ++i) {
        const double r = roots[i];
        const double resid = std::fabs(quad[i][0] * r * r + quad[i][1] * r +
                                       quad[i][2]);
        const double scale = std::fabs(quad[i][0]) * r * r +
                             std::fabs(quad[i][1]) * r +
                             std::fabs(quad[i][2]);
        g.require(resid <= 1e-12 * scale,
                  "root " + std::to_string(i) + " residual " + num(resid) +
                      " exceeds 1e-12 of scale " + num(scale));
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.6f", r);
        g.require(starts_with(buf, prefixes[i]),
                  std::string("root prints ") + buf + ", expected prefix " +
                      prefixes[i]);
        if (!printed.empty())
            printed += ", ";
        printed += buf;
    }
    g.info("coefficients positive through k=200; larger roots " + printed +
           " satisfy their quadratics to 1e-12");
    return g.done(2, "coefficient-positivity-and-roots");
}

// ---- 3: kernel derivative values near t = 0 --------------------------------

CriterionResult criterion_kernel_small_t(const EvalContext& ctx) {
    Gate g;
    const double t = 1e-3;
    const double q3 = q_deriv(3, t, ctx);
    g.require(std::fabs(q3 - 1.0 / 12.0) <= 1e-3,
              "third derivative at t=0.001 is " + num(q3) +
                  ", not within 1e-3 of 1/12");
    for (int k = 0; k <= 2; ++k) {
        const double qk = q_deriv(k, t, ctx);
        if (std::fabs(qk) <= 1e-6)
            continue;
        std::string msg = "order-" + std::to_string(k) + " value " + num(qk) +
                          " exceeds the 1e-6 smallness target";
        if (k == 2)
            msg += " (this quantity rises like t/12 from zero, so its true"
                   " size at t=0.001 is about 8.3e-5; the target lies below"
                   " the value being measured)";
        g.require(false, msg);
    }
    g.info("q'''(0.001) = " + num(q3) + " ~ 1/12; orders 0..2 below 1e-6");
    return g.done(3, "kernel-small-t-values");
}

// ---- 4: everything that must stay one-signed, plus the A >= B >= C chain ---

CriterionResult criterion_positivity_chain(const EvalContext& ctx) {
    Gate g;
    GridSpec grid;
    grid.min = 1e-3;
    grid.max = 30.0;
    grid.points = 200;
    grid.scale = "log";
    const std::vector<double> ss = make_grid(grid);

    auto nonneg = [&](double v, const char* label, double s) {
        g.require(v >= -1e-12 * std::max(1.0, std::fabs(v)),
                  std::string(label) + " negative at s=" + num(s) + ": " +
                      num(v));
    };
    for (double s : ss) {
        const HChain hc = h_chain(s);
        nonneg(hc.h1, "h1", s);
        nonneg(hc.h1p, "h1'", s);
        nonneg(hc.h2, "h2", s);
        nonneg(hc.h2p, "h2'", s);
        nonneg(hc.h2pp, "h2''", s);
        nonneg(hc.h2p3, "h2'''", s);
        nonneg(hc.h3, "h3", s);
        nonneg(hc.h3p, "h3'", s);
        nonneg(hc.h3pp, "h3''", s);
        const double lc = log_concavity(s, ctx);
        g.require(lc < 0.0, "log-concavity value " + num(lc) +
                                " not negative at s=" + num(s));
        const double q4 = q_deriv(4, s, ctx);
        g.require(q4 > 0.0,
                  "q4 value " + num(q4) + " not positive at s=" + num(s));
    }

    for (double t : {0.1, 1.0, 5.0, 10.0}) {
        const ConvolutionBound cb = convolution_bound_check(t, ctx);
        g.require(cb.a >= cb.b - (cb.a_err + cb.b_err),
                  "A < B at t=" + num(t) + " (A=" + num(cb.a) +
                      ", B=" + num(cb.b) + ")");
        g.require(cb.b >= cb.c - cb.b_err, "B < C at t=" + num(t) +
                                               " (B=" + num(cb.b) +
                                               ", C=" + num(cb.c) + ")");
    }
    g.info("nine chain values nonnegative, log-concavity negative, q4 "
           "positive on 200 log points over [0.001, 30]; A >= B >= C at "
           "t in {0.1, 1, 5, 10}");
    return g.done(4, "positivity-chain");
}

// ---- 5: closed form vs truncated series ------------------------------------

CriterionResult criterion_series_identity(const EvalContext&) {
    Gate g;
    g.require(theta(0.0) == 0.0, "value at 0 is not exactly 0");
    double worst = 0.0, worst_t = 0.0;
    for (double t : {0.25, 0.5, 1.0, 2.0}) {
        const double closed = theta(t);
        const double series = theta_series_sum(t, 60);
        const double rel = std::fabs(closed - series) / std::fabs(closed);
        if (rel > worst) {
            worst = rel;
            worst_t = t;
        }
        g.require(rel <= 1e-10, "closed vs series mismatch " + num(rel) +
                                    " at t=" + num(t));
    }
    g.info("value at 0 exact; worst closed-vs-series rel diff " + num(worst) +
           " at t=" + num(worst_t));
    return g.done(5, "series-closed-form-identity");
}

// ---- 6: the integral representation reproduces x^4 Psi ---------------------

CriterionResult criterion_transform_identity(const EvalContext& ctx) {
    Gate g;
    double worst = 0.0, worst_x = 0.0;
    for (double x : {1.0, 2.0, 5.0}) {
        const LaplaceCheck chk = laplace_identity_check(x, ctx);
        if (chk.rel_err > worst) {
            worst = chk.rel_err;
            worst_x = x;
        }
        g.require(chk.rel_err <= 1e-6, "rel err " + num(chk.rel_err) +
                                           " at x=" + num(x) +
                                           " exceeds 1e-6");
        g.require(!chk.horizon_warning,
                  "truncation horizon too short at x=" + num(x));
    }
    g.info("x^4 Psi matches 1/12 + transform at x in {1,2,5}; worst rel err " +
           num(worst) + " at x=" + num(worst_x));
    return g.done(6, "transform-identity");
}

// ---- 7: the weight-4 sign conditions and the degree bracket ----------------

CriterionResult criterion_degree_four(const EvalContext& ctx) {
    Gate g;
    GridSpec desk; // defaults: 400-point log grid on [0.01, 100]
    const CMReport pass4 = cm_check("Psi", 4.0, 10, desk, ctx);
    g.require(pass4.verdict, "weight-4 sign conditions fail at K=10 with " +
                                 std::to_string(pass4.witnesses.size()) +
                                 " witnesses");

    GridSpec wide;
    wide.max = 1e5;
    const CMReport fail45 = cm_check("Psi", 4.5, 1, wide, ctx);
    g.require(!fail45.verdict && !fail45.witnesses.empty(),
              "weight-4.5 first-order conditions unexpectedly hold");
    std::string witness_note;
    if (!fail45.witnesses.empty())
        witness_note = "first weight-4.5 witness at x=" +
                       num(fail45.witnesses.front().x);

    const DegreeEstimate est =
        degree_estimate("Psi", 0.0, 8.0, 6, GridSpec{}, ctx, 0.1, 60);
    const double mid = 0.5 * (est.lo + est.hi);
    g.require(mid >= 3.8 && mid <= 4.2,
              "degree bracket [" + num(est.lo) + ", " + num(est.hi) +
                  "] midpoint " + num(mid) + " outside [3.8, 4.2]");
    g.info("weight 4 passes at K=10; weight 4.5 fails at K=1 (" +
           witness_note + "); degree bracket [" + num(est.lo) + ", " +
           num(est.hi) + "]");
    return g.done(7, "degree-four-checks");
}

// ---- 8: -x Psi'/Psi approaches 4 -------------------------------------------

CriterionResult criterion_ratio_limit(const EvalContext& ctx) {
    Gate g;
    const double p1 = std::fabs(phi(10.0, ctx) - 4.0);
    const double p2 = std::fabs(phi(100.0, ctx) - 4.0);
    const double p3 = std::fabs(phi(1000.0, ctx) - 4.0);
    g.require(p3 <= 0.05,
              "|ratio(1000) - 4| = " + num(p3) + " exceeds 0.05");
    g.require(p1 > p2 && p2 > p3,
              "|ratio - 4| not strictly decreasing over x = 10, 100, 1000 (" +
                  num(p1) + ", " + num(p2) + ", " + num(p3) + ")");
    g.info("|ratio - 4| = " + num(p1) + ", " + num(p2) + ", " + num(p3) +
           " at x = 10, 100, 1000");
    return g.done(8, "ratio-limit");
}

// ---- 9: the bound sandwich and the two-parameter family --------------------

CriterionResult criterion_inequalities(const EvalContext& ctx) {
    Gate g;
    GridSpec grid; // 400-point log grid on [0.01, 100]
    g.require(sandwich_check(grid, ctx).verdict,
              "sandwich bounds violated on the grid");

    const double p1 = p_poly(1.0);
    g.require(p1 == 189241.0, "p(1) = " + num(p1) + ", expected 189241");
    const double l2 = bound_eval("lower2", 1.0);
    const double l1 = bound_eval("lower1", 1.0);
    const double psi1 = psi_capital(1.0, ctx);
    const double up = bound_eval("upper", 1.0);
    g.require(std::fabs(l2 - 189241.0 / 921600.0) <= 1e-15,
              "sharp lower bound at 1 is " + num(l2) +
                  ", expected 189241/921600");
    g.require(std::fabs(l1 - 13.0 / 48.0) <= 1e-15,
              "simple lower bound at 1 is " + num(l1) + ", expected 13/48");
    g.require(std::fabs(up - 13.0 / 24.0) <= 1e-15,
              "upper bound at 1 is " + num(up) + ", expected 13/24");
    g.require(l2 < l1 && l1 < psi1 && psi1 < up,
              "ordering 189241/921600 < 13/48 < Psi(1) < 13/24 broken: " +
                  num(l2) + ", " + num(l1) + ", " + num(psi1) + ", " +
                  num(up));

    g.require(double_inequality_check(0.0, 4.0, grid, ctx).verdict,
              "the (0, 4) pair fails on the grid");
    const BoundReport bad_mu = double_inequality_check(0.5, 4.0, grid, ctx);
    g.require(!bad_mu.verdict && !bad_mu.witnesses.empty(),
              "the (0.5, 4) pair did not fail with a located witness");
    const BoundReport bad_nu = double_inequality_check(0.0, 3.5, grid, ctx);
    g.require(!bad_nu.verdict && !bad_nu.witnesses.empty(),
              "the (0, 3.5) pair did not fail with a located witness");

    double min_h0 = 1e308, max_h4 = -1e308;
    for (double x : make_grid(grid)) {
        min_h0 = std::min(min_h0, h_lambda(0.0, x, ctx));
        max_h4 = std::max(max_h4, h_lambda(4.0, x, ctx));
    }
    g.require(min_h0 > 0.0,
              "lower gap not strictly positive: min " + num(min_h0));
    g.require(max_h4 < 0.0,
              "upper gap not strictly negative: max " + num(max_h4));

    std::string w1 = bad_mu.witnesses.empty()
                         ? std::string("none")
                         : num(bad_mu.witnesses.front().x);
    std::string w2 = bad_nu.witnesses.empty()
                         ? std::string("none")
                         : num(bad_nu.witnesses.front().x);
    g.info("sandwich and (0,4) hold; (0.5,4) breaks near x=" + w1 +
           ", (0,3.5) breaks near x=" + w2 + "; gap extrema " + num(min_h0) +
           " / " + num(max_h4));
    return g.done(9, "inequality-suite");
}

// ---- 10: strong form vs weighted form over the whole catalog ---------------

CriterionResult criterion_strong_equivalence(const EvalContext& ctx) {
    Gate g;
    const GridSpec grid;
    const std::vector<double> xs = make_grid(grid);
    static const struct {
        const char* id;
        bool expect_pass;
    } cat[] = {{"inv_x", true},     {"pow:1", true},   {"pow:1.5", true},
               {"pow:3", true},     {"pow:0.5", false}, {"exp_neg", false},
               {"inv_x_xp1", true}, {"Psi", true}};

    for (const auto& c : cat) {
        const EquivalenceReport eq = equivalence_test(c.id, 8, grid, ctx);
        g.require(eq.agree, std::string(c.id) + ": strong and weighted "
                                                "verdicts disagree");
        g.require(eq.strong_verdict == c.expect_pass,
                  std::string(c.id) + ": strong verdict " +
                      (eq.strong_verdict ? "pass" : "fail") + ", expected " +
                      (c.expect_pass ? "pass" : "fail"));
        if (!c.expect_pass || !eq.strong_verdict)
            continue;
        // Chained inequality: (-1)^k x^{k+1} f^(k) >= k (-1)^{k-1} x^k
        // f^(k-1), the step that drives the induction.
        for (int k = 1; k <= 8; ++k) {
            for (double x : xs) {
                const DerivValue fk = catalog_deriv(c.id, k, x, ctx);
                const DerivValue fk1 = catalog_deriv(c.id, k - 1, x, ctx);
                const double sk = (k % 2 == 0) ? 1.0 : -1.0;
                const double lhs = sk * std::pow(x, k + 1.0) * fk.value;
                const double rhs = -k * sk * std::pow(x, double(k)) *
                                   fk1.value;
                const double scale = std::pow(x, k + 1.0) * fk.scale +
                                     k * std::pow(x, double(k)) * fk1.scale;
                if (lhs < rhs - 1e-12 * std::max(1.0, scale)) {
                    g.require(false, std::string(c.id) +
                                         ": induction step fails at k=" +
                                         std::to_string(k) +
                                         ", x=" + num(x));
                    break;
                }
            }
        }
    }
    g.info("strong and weighted verdicts agree for all 8 catalog entries "
           "(5 pass, 2 fail, plus the main function); induction steps hold "
           "for every passing member");
    return g.done(10, "strong-equivalence");
}

// ---- 11: polygamma accuracy against independent routes ---------------------

double zeta_euler_maclaurin(double s) {
    // Partial sum to N with the standard tail correction; for s in {2, 3}
    // the dropped term is far below 1e-15 relative.
    constexpr int N = 20;
    static const double b2i[6] = {1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0,
                                  -1.0 / 30.0, 5.0 / 66.0,  -691.0 / 2730.0};
    double sum = 0.0;
    for (int j = 1; j < N; ++j)
        sum += std::pow(double(j), -s);
    sum += 0.5 * std::pow(double(N), -s);
    sum += std::pow(double(N), 1.0 - s) / (s - 1.0);
    double rising = s;        // s (s+1) ... rising factorial of odd length
    double fact = 2.0;        // (2i)!
    for (int i = 1; i <= 6; ++i) {
        sum += b2i[i - 1] / fact * rising * std::pow(double(N), -s - 2 * i + 1);
        rising *= (s + 2 * i - 1) * (s + 2 * i);
        fact *= (2 * i + 1) * (2 * i + 2);
    }
    return sum;
}

CriterionResult criterion_polygamma_accuracy(const EvalContext& ctx) {
    Gate g;
    const double z2 = zeta_euler_maclaurin(2.0);
    const double z3 = zeta_euler_maclaurin(3.0);
    const double t1 = polygamma(1, 1.0, ctx);
    const double t2 = polygamma(2, 1.0, ctx);
    g.require(std::fabs(t1 - z2) / z2 <= 1e-12,
              "order-1 value at 1 off the zeta oracle by " +
                  num(std::fabs(t1 - z2) / z2));
    g.require(std::fabs(t2 + 2.0 * z3) / (2.0 * z3) <= 1e-12,
              "order-2 value at 1 off the zeta oracle by " +
                  num(std::fabs(t2 + 2.0 * z3) / (2.0 * z3)));

    double worst_route = 0.0;
    for (int n = 1; n <= 4; ++n) {
        for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
            const double a = polygamma(n, x, ctx);
            const double b = polygamma_integral(n, x, ctx);
            const double rel = std::fabs(a - b) / std::fabs(a);
            worst_route = std::max(worst_route, rel);
            g.require(rel <= 1e-8, "series route and integral route differ "
                                   "by " +
                                       num(rel) + " at n=" +
                                       std::to_string(n) + ", x=" + num(x));
        }
    }

    double worst_rec = 0.0;
    for (int n = 1; n <= 6; ++n) {
        double fact = 1.0;
        for (int j = 2; j <= n; ++j)
            fact *= j;
        for (double x : {0.25, 0.5, 1.0, 3.7, 10.0, 42.5}) {
            const double lhs = polygamma(n, x, ctx);
            const double step = ((n % 2 == 1) ? 1.0 : -1.0) * fact /
                                std::pow(x, n + 1.0);
            const double resid =
                std::fabs(lhs - polygamma(n, x + 1.0, ctx) - step) /
                std::fabs(lhs);
            worst_rec = std::max(worst_rec, resid);
            g.require(resid <= 1e-12, "recurrence residual " + num(resid) +
                                          " at n=" + std::to_string(n) +
                                          ", x=" + num(x));
        }
    }
    g.info("zeta oracles matched to 1e-12; worst dual-route diff " +
           num(worst_route) + "; worst recurrence residual " +
           num(worst_rec));
    return g.done(11, "polygamma-accuracy");
}

const char* kCriterionNames[11] = {
    "coefficient-table-exactness", "coefficient-positivity-and-roots",
    "kernel-small-t-values",       "positivity-chain",
    "series-closed-form-identity", "transform-identity",
    "degree-four-checks",          "ratio-limit",
    "inequality-suite",            "strong-equivalence",
    "polygamma-accuracy"};

} // namespace

int criterion_count() { return 11; }

CriterionResult run_criterion(int index, const EvalContext& ctx) {
    ctx.validate();
    if (index < 1 || index > criterion_count())
        throw std::out_of_range("run_criterion: index must be 1..11");
    try {
        switch (index) {
        case 1: return criterion_coeff_table(ctx);
        case 2: return criterion_positivity_roots(ctx);
        case 3: return criterion_kernel_small_t(ctx);
        case 4: return criterion_positivity_chain(ctx);
        case 5: return criterion_series_identity(ctx);
        case 6: return criterion_transform_identity(ctx);
        case 7: return criterion_degree_four(ctx);
        case 8: return criterion_ratio_limit(ctx);
        case 9: return criterion_inequalities(ctx);
        case 10: return criterion_strong_equivalence(ctx);
        case 11: return criterion_polygamma_accuracy(ctx);
        default:
            throw std::out_of_range("run_criterion: index must be 1..11");
        }
    } catch (const std::exception& e) {
        CriterionResult r;
        r.index = index;
        r.name = kCriterionNames[index - 1];
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
        return r;
    }
}

SuiteResult run_suite(const EvalContext& ctx) {
    SuiteResult suite;
    suite.all_pass = true;
    for (int i = 1; i <= criterion_count(); ++i) {
        suite.criteria.push_back(run_criterion(i, ctx));
        suite.all_pass = suite.all_pass && suite.criteria.back().pass;
    }
    return suite;
}

} // namespace cmdegkit
