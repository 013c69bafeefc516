#include "cmdegkit/polygamma.hpp"
#include "cmdegkit/errors.hpp"
#include "cmdegkit/kernel.hpp"
#include "cmdegkit/quadrature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cmdegkit {
namespace {

// B_2, B_4, ..., B_20 as exact rationals
constexpr double kBern2k[10] = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
    -174611.0 / 330.0};

constexpr int kMaxAsymTerms = 12; // leading + half-power + 10 Bernoulli terms
constexpr int kMaxOrder = 20;     // psi^(n) supported through n = 20

void check_domain(int n, double x) {
    if (n < 1)
        throw std::domain_error("polygamma: order n must be >= 1");
    if (n > kMaxOrder)
        throw std::domain_error("polygamma: order n must be <= 20");
    if (!(x > 0.0))
        throw std::domain_error("polygamma: argument x must be positive");
    // x^-(n+1) representable?
    if ((n + 1) * std::log(x) < -708.0) {
        std::ostringstream os;
        os << "polygamma: x^-(n+1) overflows for n=" << n << ", x=" << x;
        throw overflow_error(os.str());
    }
}

// magnitude of the expansion in brackets; caller applies the sign
double asym_magnitude(int n, double z, int terms) {
    double lgamma_n = std::lgamma(double(n)); // ln (n-1)!
    double sum = std::exp(lgamma_n - n * std::log(z));
    if (terms >= 2)
        sum += 0.5 * std::exp(lgamma_n + std::log(double(n)) - (n + 1) * std::log(z));
    const double z2 = z * z;
    // term_k = B_2k * (2k+n-1)! / ((2k)! z^(2k+n)); build the factorial
    // ratio incrementally: ratio_k = (2k+n-1)!/((2k)! z^(2k+n))
    double ratio = std::exp(std::lgamma(double(n + 2)) - std::log(2.0) - (n + 2) * std::log(z));
    // ratio now = (n+1)!/(2! z^(n+2)), the k=1 value
    for (int k = 1; k <= terms - 2; ++k) {
        sum += kBern2k[k - 1] * ratio;
        // advance (2k)! -> (2k+2)!, (2k+n-1)! -> (2k+n+1)!, z^... -> +2
        ratio *= double(2 * k + n) * double(2 * k + n + 1) /
                 (double(2 * k + 1) * double(2 * k + 2) * z2);
    }
    return sum;
}

} // namespace

double polygamma_asymptotic(int n, double z, int terms) {
    if (n < 1 || n > 3)
        throw std::domain_error("polygamma_asymptotic: n must be 1, 2 or 3");
    if (!(z > 0.0))
        throw std::domain_error("polygamma_asymptotic: z must be positive");
    if (terms < 1 || terms > kMaxAsymTerms)
        throw std::domain_error("polygamma_asymptotic: terms must be in 1..12");
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    return sign * asym_magnitude(n, z, terms);
}

double polygamma(int n, double x, const EvalContext& ctx) {
    check_domain(n, x);
    const double zmin = std::max(ctx.shift_threshold, double(n + 8));
    const int m = (x >= zmin) ? 0 : int(std::ceil(zmin - x));
    const double z = x + m;

    const int terms = std::min(ctx.asym_terms, kMaxAsymTerms);
    double mag = asym_magnitude(n, z, terms);

    // psi^(n)(x) = psi^(n)(z) + (-1)^(n+1) n! sum_{j=0}^{m-1} (x+j)^-(n+1);
    // both pieces share the sign (-1)^(n+1), so accumulate magnitudes.
    double shift = 0.0;
    for (int j = m - 1; j >= 0; --j) // small terms first
        shift += std::pow(x + j, -(n + 1));
    mag += std::tgamma(double(n + 1)) * shift;

    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    return sign * mag;
}

double polygamma_integral(int n, double x, const EvalContext& ctx) {
    check_domain(n, x);
    const double T = std::max(ctx.horizon, 80.0 / x);
    // integrand t^n e^(-xt) / (1 - e^(-t)) = t^(n-1) sigma(t) e^(-xt);
    // finite at 0 (n=1 -> 1, n>=2 -> 0)
    auto f = [n, x, &ctx](double t) {
        if (t == 0.0)
            return n == 1 ? 1.0 : 0.0;
        return std::pow(t, n - 1) * sigma(t, ctx) * std::exp(-x * t);
    };
    QuadResult r = integrate(f, 0.0, T, ctx.quad_rel_tol);
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    return sign * r.value;
}

} // namespace cmdegkit
