#include "cmdegkit/inequalities.hpp"
#include "cmdegkit/errors.hpp"
#include "deriv_detail.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

namespace cmdegkit {
namespace {

constexpr double kNoiseRel = 1e-12;

double family_side(double lambda, double x) {
    const double xp1 = x + 1.0;
    return (x * x + lambda * x + 12.0) /
           (12.0 * x * x * x * x * xp1 * xp1);
}

// margin(x, scale_out) >= 0 means the inequality holds at x.
using MarginFn = std::function<double(double, double&)>;

struct ScanResult {
    double min_margin = 0.0;
    double arg_min = 0.0;
    bool violated = false;
    std::vector<double> margins;
    std::vector<char> violating; // tolerance-adjusted, not raw sign
};

ScanResult scan(const std::vector<double>& xs, const MarginFn& margin) {
    ScanResult res;
    res.margins.resize(xs.size());
    res.violating.resize(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        double scale = 0.0;
        res.margins[i] = margin(xs[i], scale);
        res.violating[i] =
            res.margins[i] < -kNoiseRel * std::max(1.0, scale);
        if (res.violating[i])
            res.violated = true;
        if (i == 0 || res.margins[i] < res.min_margin) {
            res.min_margin = res.margins[i];
            res.arg_min = xs[i];
        }
    }
    return res;
}

// Shrinks a sign-change bracket with golden-ratio interior points and
// returns the endpoint on the violating (negative-margin) side.
double golden_refine(double a, double b, double ma, const MarginFn& margin) {
    constexpr double kGolden = 0.3819660112501051; // 2 - golden ratio
    for (int it = 0; it < 120 && b - a > 1e-13 * std::max(1.0, b); ++it) {
        const double c = a + kGolden * (b - a);
        double scale = 0.0;
        const double mc = margin(c, scale);
        if ((mc < 0.0) == (ma < 0.0)) {
            a = c;
            ma = mc;
        } else {
            b = c;
        }
    }
    return ma < 0.0 ? a : b;
}

void locate_witnesses(const std::vector<double>& xs, const ScanResult& res,
                      const MarginFn& margin,
                      const std::function<double(double)>& side,
                      const EvalContext& ctx,
                      std::vector<BoundWitness>& out) {
    auto push = [&](double x) {
        out.push_back({x, detail::psi_deriv_dv(0, x, ctx).value, side(x)});
    };
    push(res.arg_min);
    // Only transitions into or out of a tolerance-certified violation count
    // as boundaries; raw sign flips inside the rounding floor do not.
    for (size_t i = 0; i + 1 < xs.size(); ++i) {
        if (res.violating[i] == res.violating[i + 1])
            continue;
        push(golden_refine(xs[i], xs[i + 1], res.margins[i], margin));
    }
}

void finish_witnesses(std::vector<BoundWitness>& ws) {
    std::sort(ws.begin(), ws.end(),
              [](const BoundWitness& u, const BoundWitness& v) {
                  return u.x < v.x;
              });
    ws.erase(std::unique(ws.begin(), ws.end(),
                         [](const BoundWitness& u, const BoundWitness& v) {
                             return u.x == v.x;
                         }),
             ws.end());
}

} // namespace

double p_poly(double x) {
    static const double c[11] = {75.0,    900.0,   4840.0,  15370.0,
                                 31865.0, 45050.0, 44101.0, 29700.0,
                                 13290.0, 3600.0,  450.0};
    double acc = c[0];
    for (int i = 1; i < 11; ++i)
        acc = acc * x + c[i];
    return acc;
}

double bound_eval(const std::string& bound_id, double x) {
    if (!(x > 0.0))
        throw std::domain_error("bound_eval: x must be positive");
    const double x4 = x * x * x * x;
    const double xp1 = x + 1.0;
    if (bound_id == "lower1")
        return (x * x + 12.0) / (12.0 * x4 * xp1 * xp1);
    if (bound_id == "lower2")
        return p_poly(x) / (900.0 * x4 * std::pow(xp1, 10.0));
    if (bound_id == "upper")
        return (x + 12.0) / (12.0 * x4 * xp1);
    throw catalog_error("bound_eval: unknown bound id: " + bound_id);
}

BoundReport bound_check(const std::string& bound_id, const GridSpec& grid,
                        const EvalContext& ctx) {
    ctx.validate();
    const bool is_upper = bound_id == "upper";
    if (!is_upper && bound_id != "lower1" && bound_id != "lower2")
        throw catalog_error("bound_check: unknown bound id: " + bound_id);

    const std::vector<double> xs = make_grid(grid);
    auto side = [bound_id](double x) { return bound_eval(bound_id, x); };
    MarginFn margin = [&, is_upper](double x, double& scale) {
        const DerivValue psi = detail::psi_deriv_dv(0, x, ctx);
        const double s = side(x);
        scale = psi.scale + std::fabs(s);
        return is_upper ? s - psi.value : psi.value - s;
    };
    const ScanResult res = scan(xs, margin);

    BoundReport rep;
    rep.bound_id = bound_id;
    rep.grid = grid;
    rep.min_margin = res.min_margin;
    rep.verdict = !res.violated;
    if (res.violated) {
        locate_witnesses(xs, res, margin, side, ctx, rep.witnesses);
        finish_witnesses(rep.witnesses);
    }
    return rep;
}

BoundReport sandwich_check(const GridSpec& grid, const EvalContext& ctx) {
    ctx.validate();
    const std::vector<double> xs = make_grid(grid);
    auto side = [](double x) {
        return std::max(bound_eval("lower1", x), bound_eval("lower2", x));
    };
    MarginFn margin = [&](double x, double& scale) {
        const DerivValue psi = detail::psi_deriv_dv(0, x, ctx);
        const double lo = side(x);
        const double up = bound_eval("upper", x);
        scale = psi.scale + std::fabs(lo) + std::fabs(up);
        return std::min(psi.value - lo, up - psi.value);
    };
    const ScanResult res = scan(xs, margin);

    BoundReport rep;
    rep.bound_id = "sandwich";
    rep.grid = grid;
    rep.min_margin = res.min_margin;
    rep.verdict = !res.violated;
    if (res.violated) {
        locate_witnesses(xs, res, margin, side, ctx, rep.witnesses);
        finish_witnesses(rep.witnesses);
    }
    return rep;
}

double h_lambda(double lambda, double x, const EvalContext& ctx) {
    if (!(x > 0.0))
        throw std::domain_error("h_lambda: x must be positive");
    return detail::psi_deriv_dv(0, x, ctx).value - family_side(lambda, x);
}

DerivValue h_lambda_deriv(double lambda, int k, double x,
                          const EvalContext& ctx) {
    if (k < 0 || k > 18)
        throw std::domain_error("h_lambda_deriv: order k must be in 0..18");
    if (!(x > 0.0))
        throw std::domain_error("h_lambda_deriv: x must be positive");
    return detail::gap_deriv_dv(lambda, k, x, ctx);
}

BoundReport double_inequality_check(double mu, double nu,
                                    const GridSpec& grid,
                                    const EvalContext& ctx) {
    ctx.validate();
    const std::vector<double> xs = make_grid(grid);

    MarginFn lower_margin = [&, mu](double x, double& scale) {
        const DerivValue h = detail::gap_deriv_dv(mu, 0, x, ctx);
        scale = h.scale;
        return h.value;
    };
    MarginFn upper_margin = [&, nu](double x, double& scale) {
        const DerivValue h = detail::gap_deriv_dv(nu, 0, x, ctx);
        scale = h.scale;
        return -h.value;
    };
    MarginFn combined = [&](double x, double& scale) {
        double s1 = 0.0, s2 = 0.0;
        const double lo = lower_margin(x, s1);
        const double up = upper_margin(x, s2);
        scale = std::max(s1, s2);
        return std::min(lo, up);
    };

    const ScanResult res = scan(xs, combined);
    BoundReport rep;
    char name[80];
    std::snprintf(name, sizeof(name), "pair:mu=%.17g,nu=%.17g", mu, nu);
    rep.bound_id = name;
    rep.grid = grid;
    rep.min_margin = res.min_margin;
    rep.verdict = !res.violated;
    if (rep.verdict)
        return rep;

    // Hunt for boundary witnesses on the wide scan, one side at a time.
    GridSpec wide;
    wide.min = 1e-3;
    wide.max = 1e6;
    wide.points = 2000;
    wide.scale = "log";
    const std::vector<double> wxs = make_grid(wide);
    const struct {
        const MarginFn& margin;
        double lambda;
    } sides[2] = {{lower_margin, mu}, {upper_margin, nu}};
    for (const auto& s : sides) {
        const ScanResult wres = scan(wxs, s.margin);
        if (!wres.violated)
            continue;
        auto side_val = [&](double x) { return family_side(s.lambda, x); };
        locate_witnesses(wxs, wres, s.margin, side_val, ctx, rep.witnesses);
    }
    finish_witnesses(rep.witnesses);
    return rep;
}

namespace {

RatioScan ratio_scan(double lambda, const std::vector<double>& xs,
                     const EvalContext& ctx) {
    RatioScan scan;
    bool first = true;
    for (double x : xs) {
        const double h = detail::gap_deriv_dv(lambda, 0, x, ctx).value;
        const double hp = detail::gap_deriv_dv(lambda, 1, x, ctx).value;
        const double r = -x * hp / h;
        if (first || r < scan.min) {
            scan.min = r;
            scan.argmin = x;
        }
        if (first || r > scan.max) {
            scan.max = r;
            scan.argmax = x;
        }
        first = false;
    }
    return scan;
}

DegreeEstimate bracket_degree(const std::string& fn_id, int K,
                              const GridSpec& grid, const EvalContext& ctx,
                              std::string& notes) {
    // Coarse ascent in half-steps to find a pass/fail straddle, then bisect.
    double last_pass = -1.0, first_fail = -1.0;
    for (double a = 0.0; a <= 6.0; a += 0.5) {
        if (cm_check(fn_id, a, K, grid, ctx).verdict) {
            last_pass = a;
        } else {
            first_fail = a;
            break;
        }
    }
    DegreeEstimate est;
    est.order = K;
    est.grid_spec = grid;
    if (last_pass < 0.0) {
        notes += fn_id + ": sign conditions fail even unweighted; ";
        return est;
    }
    if (first_fail < 0.0) {
        notes += fn_id + ": no failure up to weight 6; ";
        est.lo = last_pass;
        est.hi = 6.0;
        return est;
    }
    return degree_estimate(fn_id, last_pass, first_fail, K, grid, ctx,
                           0.015625, 60);
}

} // namespace

ConjectureProbe conjecture_probe(double lambda, double mu,
                                 const EvalContext& ctx) {
    ctx.validate();
    ConjectureProbe probe;
    if (lambda > 0.0 || mu < 4.0)
        probe.notes += "uncharacterized regime (no sign claim applies); ";

    const GridSpec grid; // defaults: 400-point log grid on [0.01, 100]
    const std::vector<double> xs = make_grid(grid);
    probe.lower_ratio = ratio_scan(lambda, xs, ctx);
    probe.upper_ratio = ratio_scan(mu, xs, ctx);

    constexpr int kProbeOrder = 6;
    char id[64];
    std::snprintf(id, sizeof(id), "h_lambda:%.17g", lambda);
    probe.lower_gap = bracket_degree(id, kProbeOrder, grid, ctx, probe.notes);
    std::snprintf(id, sizeof(id), "neg_h_mu:%.17g", mu);
    probe.upper_gap = bracket_degree(id, kProbeOrder, grid, ctx, probe.notes);

    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "lower gap: degree in [%.6g, %.6g], local ratio spans "
                  "[%.4f, %.4f]; upper gap: degree in [%.6g, %.6g], ratio "
                  "spans [%.4f, %.4f]",
                  probe.lower_gap.lo, probe.lower_gap.hi,
                  probe.lower_ratio.min, probe.lower_ratio.max,
                  probe.upper_gap.lo, probe.upper_gap.hi,
                  probe.upper_ratio.min, probe.upper_ratio.max);
    probe.notes += buf;
    return probe;
}

} // namespace cmdegkit
