#include "cmdegkit/quadrature.hpp"
#include "cmdegkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace cmdegkit {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Seg {
    double a, b;
    double value;
    double err;
    double resabs; // estimate of Int |f| over the segment
};

Seg gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double gauss = fc * wg[3];
    double kron = fc * wgk[7];
    double resabs = std::fabs(fc) * wgk[7];

    double fv[14];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        fv[j] = f(c - dx);
        fv[7 + j] = f(c + dx);
        const double sum = fv[j] + fv[7 + j];
        kron += wgk[j] * sum;
        resabs += wgk[j] * (std::fabs(fv[j]) + std::fabs(fv[7 + j]));
        if (j % 2 == 1) // xgk[1], xgk[3], xgk[5] are the embedded Gauss nodes
            gauss += wg[j / 2] * sum;
    }

    const double mean = 0.5 * kron;
    double resasc = wgk[7] * std::fabs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[7 + j] - mean));

    double err = std::fabs(kron - gauss) * h;
    resasc *= std::fabs(h);
    resabs *= std::fabs(h);
    // QUADPACK error sharpening
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);

    return Seg{a, b, kron * h, err, resabs};
}

} // namespace

QuadResult integrate(const std::function<double(double)>& f,
                     double a, double b, double rel_tol, int max_intervals) {
    if (!(a < b))
        return QuadResult{0.0, 0.0, 0};

    auto cmp = [](const Seg& l, const Seg& r) { return l.err < r.err; };
    std::priority_queue<Seg, std::vector<Seg>, decltype(cmp)> active(cmp);

    // Seed with geometrically growing segments so long ranges with decaying
    // integrands (Laplace tails) start from a sensible partition.
    std::vector<double> cuts{a};
    if (b - a > 8.0) {
        double step = 1.0;
        double p = a + step;
        while (p < b - step) {
            cuts.push_back(p);
            step *= 2.0;
            p += step;
        }
    }
    cuts.push_back(b);

    double total = 0.0;
    double total_resabs = 0.0;
    double queued_err = 0.0;  // error carried by splittable intervals
    double settled_err = 0.0; // error of intervals at rounding resolution
    int n = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        Seg s = gk15(f, cuts[i], cuts[i + 1]);
        total += s.value;
        total_resabs += s.resabs;
        queued_err += s.err;
        active.push(s);
        ++n;
    }

    // The relative target is floored at the rounding resolution of
    // Int |f|: a cancelling integral can never be resolved below it.
    const double eps = std::numeric_limits<double>::epsilon();
    const double abs_floor = 1e-300;
    auto target = [&] {
        return std::max({rel_tol * std::fabs(total),
                         100.0 * eps * total_resabs, abs_floor});
    };

    while (queued_err + settled_err > target() && n < max_intervals && !active.empty()) {
        Seg worst = active.top();
        active.pop();
        queued_err -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            settled_err += worst.err; // cannot subdivide further
            continue;
        }
        Seg l = gk15(f, worst.a, mid);
        Seg r = gk15(f, mid, worst.b);
        total += l.value + r.value - worst.value;
        total_resabs += l.resabs + r.resabs - worst.resabs;
        queued_err += l.err + r.err;
        active.push(l);
        active.push(r);
        ++n;
    }

    const double final_err = queued_err + settled_err;
    if (final_err > 10.0 * target()) {
        std::ostringstream os;
        os << "quadrature did not converge on [" << a << ", " << b << "]: error estimate "
           << final_err << " vs target " << target() << " after " << n << " intervals";
        throw quadrature_error(os.str());
    }

    return QuadResult{total, final_err, n};
}

} // namespace cmdegkit
