#include "cmdegkit/catalog.hpp"
#include "cmdegkit/errors.hpp"
#include "cmdegkit/polygamma.hpp"
#include "deriv_detail.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace cmdegkit {
namespace {

constexpr int kMaxDerivOrder = 18; // Psi needs polygamma up to order k+2

double rising(double a, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i)
        r *= a + i;
    return r;
}

double factorial(int k) {
    double r = 1.0;
    for (int i = 2; i <= k; ++i)
        r *= i;
    return r;
}

// k-th derivative of c (x+p)^-i
double shifted_pow_deriv(double c, int i, double p, int k, double x) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return c * sign * rising(double(i), k) * std::pow(x + p, -double(i + k));
}

} // namespace

namespace detail {

DerivValue psi_deriv_dv(int m, double x, const EvalContext& ctx) {
    // Psi^(m) = sum_j C(m,j) psi^(1+j) psi^(1+m-j) + psi^(m+2)
    double value = 0.0, scale = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
        const double term =
            binom * polygamma(1 + j, x, ctx) * polygamma(1 + m - j, x, ctx);
        value += term;
        scale += std::fabs(term);
        binom = binom * (m - j) / (j + 1);
    }
    const double tail = polygamma(m + 2, x, ctx);
    value += tail;
    scale += std::fabs(tail);
    return {value, scale};
}

// h_lambda(x) = Psi(x) - R_lambda(x) with the rational part expanded in
// partial fractions:
// R_lambda = (1/12) [ (3L-50)/x + (37-2L)/x^2 + (L-24)/x^3 + 12/x^4
//                     + (50-3L)/(x+1) + (13-L)/(x+1)^2 ]
DerivValue gap_deriv_dv(double lambda, int k, double x,
                        const EvalContext& ctx) {
    DerivValue psi = psi_deriv_dv(k, x, ctx);
    const double L = lambda;
    const double coef[6] = {3.0 * L - 50.0, 37.0 - 2.0 * L, L - 24.0,
                            12.0, 50.0 - 3.0 * L, 13.0 - L};
    const int pow_i[6] = {1, 2, 3, 4, 1, 2};
    const double shift[6] = {0.0, 0.0, 0.0, 0.0, 1.0, 1.0};
    double rat = 0.0, rat_scale = 0.0;
    for (int p = 0; p < 6; ++p) {
        const double piece =
            shifted_pow_deriv(coef[p] / 12.0, pow_i[p], shift[p], k, x);
        rat += piece;
        rat_scale += std::fabs(piece);
    }
    return {psi.value - rat, psi.scale + rat_scale};
}

} // namespace detail

namespace {

struct ParsedId {
    enum Kind { InvX, Pow, ExpNeg, InvXxp1, Psi, HLambda, NegHMu, Unknown } kind;
    double param = 0.0;
};

ParsedId parse_id(const std::string& id) {
    auto param_of = [&](size_t prefix_len) -> std::pair<bool, double> {
        const std::string s = id.substr(prefix_len);
        if (s.empty())
            return {false, 0.0};
        char* end = nullptr;
        const double v = std::strtod(s.c_str(), &end);
        if (end == nullptr || *end != '\0' || !std::isfinite(v))
            return {false, 0.0};
        return {true, v};
    };
    if (id == "inv_x") return {ParsedId::InvX, 0.0};
    if (id == "exp_neg") return {ParsedId::ExpNeg, 0.0};
    if (id == "inv_x_xp1") return {ParsedId::InvXxp1, 0.0};
    if (id == "Psi") return {ParsedId::Psi, 0.0};
    if (id.rfind("pow:", 0) == 0) {
        auto [ok, v] = param_of(4);
        if (ok && v > 0.0) return {ParsedId::Pow, v};
    }
    if (id.rfind("h_lambda:", 0) == 0) {
        auto [ok, v] = param_of(9);
        if (ok) return {ParsedId::HLambda, v};
    }
    if (id.rfind("neg_h_mu:", 0) == 0) {
        auto [ok, v] = param_of(9);
        if (ok) return {ParsedId::NegHMu, v};
    }
    return {ParsedId::Unknown, 0.0};
}

} // namespace

DerivValue catalog_deriv(const std::string& id, int k, double x,
                         const EvalContext& ctx) {
    if (k < 0 || k > kMaxDerivOrder)
        throw std::domain_error("catalog_deriv: order k must be in 0..18");
    if (!(x > 0.0))
        throw std::domain_error("catalog_deriv: x must be positive");

    const ParsedId p = parse_id(id);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    switch (p.kind) {
    case ParsedId::InvX: {
        const double v = sign * factorial(k) * std::pow(x, -double(k + 1));
        return {v, std::fabs(v)};
    }
    case ParsedId::Pow: {
        const double v = sign * rising(p.param, k) * std::pow(x, -p.param - k);
        return {v, std::fabs(v)};
    }
    case ParsedId::ExpNeg: {
        const double v = sign * std::exp(-x);
        return {v, std::fabs(v)};
    }
    case ParsedId::InvXxp1: {
        const double a = std::pow(x, -double(k + 1));
        const double b = std::pow(x + 1.0, -double(k + 1));
        const double f = factorial(k);
        return {sign * f * (a - b), f * (a + b)};
    }
    case ParsedId::Psi:
        return detail::psi_deriv_dv(k, x, ctx);
    case ParsedId::HLambda:
        return detail::gap_deriv_dv(p.param, k, x, ctx);
    case ParsedId::NegHMu: {
        DerivValue v = detail::gap_deriv_dv(p.param, k, x, ctx);
        return {-v.value, v.scale};
    }
    case ParsedId::Unknown:
    default:
        throw catalog_error("unknown catalog function id: " + id);
    }
}

double catalog_eval(const std::string& id, double x, const EvalContext& ctx) {
    return catalog_deriv(id, 0, x, ctx).value;
}

bool catalog_has(const std::string& id) {
    return parse_id(id).kind != ParsedId::Unknown;
}

std::vector<std::string> catalog_ids() {
    return {"inv_x", "pow:1.5", "exp_neg", "inv_x_xp1", "Psi",
            "h_lambda:0", "neg_h_mu:4"};
}

} // namespace cmdegkit
