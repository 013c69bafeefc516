#include <cmdegkit/errors.hpp>
#include <cmdegkit/kernel.hpp>

#include <cmath>
#include <doctest.h>
#include <vector>

using namespace cmdegkit;

namespace {
const EvalContext kCtx{};

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

// Central difference with a scale-aware step.
template <typename F> double fd(F&& f, double s) {
    const double h = 1e-6 * std::max(1.0, std::fabs(s));
    return (f(s + h) - f(s - h)) / (2.0 * h);
}
} // namespace

TEST_SUITE("kernel") {

TEST_CASE("values at zero") {
    CHECK(sigma(0.0, kCtx) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sigma_deriv(1, 0.0, kCtx) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sigma_deriv(2, 0.0, kCtx) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(std::fabs(sigma_deriv(3, 0.0, kCtx)) < 1e-16);
    CHECK(sigma_deriv(4, 0.0, kCtx) ==
          doctest::Approx(-1.0 / 30.0).epsilon(1e-15));
}

TEST_CASE("odd-part identity sigma(s) - sigma(-s) = s") {
    for (double s : {0.05, 0.3, 1.0, 3.0, 10.0}) {
        CHECK(sigma(s, kCtx) - sigma(-s, kCtx) ==
              doctest::Approx(s).epsilon(1e-13));
    }
}

TEST_CASE("series and closed branches agree at shared points") {
    // A wider radius forces the series branch where the default uses the
    // closed forms; both must produce the same numbers.
    EvalContext wide = kCtx;
    wide.series_radius = 0.9;
    for (double s : {0.55, 0.7, -0.6, 0.85}) {
        CHECK(rel_err(sigma(s, wide), sigma(s, kCtx)) < 1e-12);
        for (int k = 1; k <= 4; ++k)
            CHECK(std::fabs(sigma_deriv(k, s, wide) -
                            sigma_deriv(k, s, kCtx)) < 1e-12);
    }
}

TEST_CASE("fourth derivative spot value") {
    CHECK(rel_err(sigma_deriv(4, 1.0, kCtx), -0.022718211777988321) < 1e-12);
}

TEST_CASE("derivatives are consistent under finite differences") {
    for (double s : {-2.0, 0.2, 1.3, 4.0}) {
        CHECK(rel_err(sigma_deriv(1, s, kCtx),
                      fd([&](double u) { return sigma(u, kCtx); }, s)) < 1e-7);
        for (int k = 2; k <= 4; ++k) {
            const double want =
                fd([&](double u) { return sigma_deriv(k - 1, u, kCtx); }, s);
            const double got = sigma_deriv(k, s, kCtx);
            CHECK(std::fabs(got - want) <
                  1e-6 * std::max(1.0, std::fabs(got)));
        }
    }
}

TEST_CASE("convolution derivative values") {
    CHECK(rel_err(q_deriv(0, 1.0, kCtx), 0.02182725916857270) < 1e-8);
    CHECK(rel_err(q_deriv(2, 1.0, kCtx), 0.1855679260542431) < 1e-8);
    CHECK(rel_err(q_deriv(3, 1.0, kCtx), 0.3034222138787514) < 1e-8);
    CHECK(rel_err(q_deriv(4, 1e-3, kCtx), 0.16679442775608565) < 1e-8);
    CHECK(rel_err(q_deriv(4, 0.5, kCtx), 0.22380059495988557) < 1e-8);
    CHECK(rel_err(q_deriv(4, 1.0, kCtx), 0.25892165929534927) < 1e-8);
    CHECK(rel_err(q_deriv(4, 3.0, kCtx), 0.16415854053076813) < 1e-8);
    CHECK(rel_err(q_deriv(4, 10.0, kCtx), 9.826488021245928e-4) < 1e-8);
    CHECK(rel_err(q_deriv(4, 30.0, kCtx), 2.190365331439438e-10) < 1e-6);
}

TEST_CASE("fourth derivative approaches 1/6 at zero") {
    CHECK(q_deriv(4, 1e-6, kCtx) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-5));
}

TEST_CASE("lower bound stays below the fourth derivative") {
    for (double t : {0.1, 0.5, 1.0, 3.0, 10.0})
        CHECK(q4_lower_bound(t, kCtx) <= q_deriv(4, t, kCtx) + 1e-10);
}

TEST_CASE("lower bound matches its exponential-polynomial form") {
    // Independent route: the same quantity collapses to
    // -e^t P(t) / (6 (e^t - 1)^5) with P the quadratic-coefficient
    // polynomial below.
    auto pform = [](double t) {
        const double et = std::exp(t);
        const double p = (5 * t * t - 40 * t + 48) * et * et * et +
                         (67 * t * t - 108 * t - 72) * et * et +
                         t * (67 * t + 120) * et + 5 * t * t + 28 * t + 24;
        const double em1 = std::expm1(t);
        return -et * p / (6.0 * std::pow(em1, 5));
    };
    CHECK(rel_err(q4_lower_bound(0.5, kCtx), 0.223687624924042884) < 1e-12);
    CHECK(rel_err(q4_lower_bound(1.0, kCtx), 0.258080710795887474) < 1e-12);
    CHECK(rel_err(q4_lower_bound(3.0, kCtx), 0.15305123167682056) < 1e-12);
    CHECK(rel_err(q4_lower_bound(10.0, kCtx), -0.00112202561369475849) <
          1e-12);
    for (double t : {0.5, 1.0, 3.0, 10.0})
        CHECK(rel_err(q4_lower_bound(t, kCtx), pform(t)) < 1e-10);
}

TEST_CASE("cascade functions vanish at zero and are positive") {
    HChain z = h_chain(1e-8);
    for (double v : {z.h1, z.h1p, z.h2, z.h2p, z.h2pp, z.h2p3, z.h3, z.h3p,
                     z.h3pp})
        CHECK(std::fabs(v) < 1e-12);
    CHECK(std::fabs(h3_third(1e-8)) < 1e-4);

    for (double s : {0.5, 1.0, 5.0, 20.0, 100.0}) {
        HChain c = h_chain(s);
        for (double v : {c.h1, c.h1p, c.h2, c.h2p, c.h2pp, c.h2p3, c.h3,
                         c.h3p, c.h3pp})
            CHECK(v > 0.0);
        CHECK(h3_third(s) > 0.0);
    }
}

TEST_CASE("cascade derivatives are consistent under finite differences") {
    for (double s : {0.8, 2.0, 5.0}) {
        HChain c = h_chain(s);
        auto check_pair = [&](double deriv, auto field) {
            const double want =
                fd([&](double u) { return field(h_chain(u)); }, s);
            CHECK(std::fabs(deriv - want) <
                  1e-5 * std::max(1.0, std::fabs(deriv)));
        };
        check_pair(c.h1p, [](const HChain& h) { return h.h1; });
        check_pair(c.h2p, [](const HChain& h) { return h.h2; });
        check_pair(c.h2pp, [](const HChain& h) { return h.h2p; });
        check_pair(c.h2p3, [](const HChain& h) { return h.h2pp; });
        check_pair(c.h3p, [](const HChain& h) { return h.h3; });
        check_pair(c.h3pp, [](const HChain& h) { return h.h3p; });
        const double want =
            fd([&](double u) { return h_chain(u).h3pp; }, s);
        CHECK(std::fabs(h3_third(s) - want) <
              1e-5 * std::max(1.0, std::fabs(want)));
    }
}

TEST_CASE("log-concavity values and limit") {
    CHECK(rel_err(log_concavity(1.0, kCtx), -0.18903113318795369) < 1e-10);
    CHECK(rel_err(log_concavity(0.1, kCtx), -0.19988576188774007) < 1e-10);
    CHECK(log_concavity(1e-4, kCtx) ==
          doctest::Approx(-0.2).epsilon(1e-3));
    for (double s : {0.01, 0.5, 2.0, 10.0, 50.0})
        CHECK(log_concavity(s, kCtx) < 0.0);
}

TEST_CASE("overflow guards") {
    CHECK_THROWS_AS(h_chain(178.0), overflow_error);
    CHECK_THROWS_AS(log_concavity(701.0, kCtx), overflow_error);
}

TEST_CASE("convolution bound triple ordering and values") {
    ConvolutionBound b1 = convolution_bound_check(0.1, kCtx);
    CHECK(rel_err(b1.a, 0.00277592667964230451) < 1e-7);
    CHECK(rel_err(b1.b, 0.00277592664880972244) < 1e-7);
    CHECK(rel_err(b1.c, 0.00277500165266786154) < 1e-10);

    ConvolutionBound b5 = convolution_bound_check(5.0, kCtx);
    CHECK(rel_err(b5.a, 0.0326637998820307751) < 1e-7);
    CHECK(rel_err(b5.b, 0.0315946999755978184) < 1e-7);
    CHECK(rel_err(b5.c, 0.0174602667333315397) < 1e-10);

    for (double t : {0.1, 1.0, 5.0, 10.0}) {
        ConvolutionBound b = convolution_bound_check(t, kCtx);
        CHECK(b.a >= b.b - (b.a_err + b.b_err + 1e-12));
        CHECK(b.b >= b.c - (b.b_err + 1e-12));
    }
}

TEST_CASE("endpoint-mean gap bounds, equality case") {
    // f = t^2 on [0, 1]: S2 = 2, f'' = 2, every inequality is tight.
    HHBounds hh = hh_bounds_check([](double t) { return t * t; },
                                  [](double t) { return 2.0 * t; }, 0.0, 1.0,
                                  2.0, 2.0, kCtx);
    CHECK(hh.holds);
    CHECK(hh.gap == doctest::Approx(-1.0 / 6.0).epsilon(1e-10));
    CHECK(hh.lhs_gap_lower == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
    CHECK(hh.lhs_gap_upper == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
    CHECK(hh.neg_gap_lower == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(hh.neg_gap_upper == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("endpoint-mean gap bounds on a transcendental") {
    // f = ln(sigma'') pieces appear downstream; use f = e^-t with exact
    // curvature range on [0, 2].
    HHBounds hh = hh_bounds_check([](double t) { return std::exp(-t); },
                                  [](double t) { return -std::exp(-t); },
                                  0.0, 2.0, std::exp(-2.0), 1.0, kCtx);
    CHECK(hh.holds);
    const double avg = (1.0 - std::exp(-2.0)) / 2.0;
    const double mean = (1.0 + std::exp(-2.0)) / 2.0;
    CHECK(hh.gap == doctest::Approx(avg - mean).epsilon(1e-9));
}

TEST_CASE("curvature range scan pads the observed extrema") {
    auto [m, M] = second_derivative_range(
        [](double t) { return -std::sin(t); }, 0.0, M_PI);
    CHECK(m <= -1.0);
    CHECK(m >= -1.2);
    CHECK(M >= 0.0);
    CHECK(M <= 0.2);
}

TEST_CASE("shifted product is unimodal around the midpoint") {
    std::vector<double> grid;
    for (int i = 1; i <= 59; ++i)
        grid.push_back(2.0 * i / 60.0);
    CHECK(product_monotonicity_check(2.0, grid, kCtx));
}

TEST_CASE("point bundle matches the scalar evaluators") {
    KernelSample s = kernel_sample(1.0, kCtx);
    CHECK(s.t == 1.0);
    CHECK(s.sigma == doctest::Approx(sigma(1.0, kCtx)).epsilon(1e-15));
    for (int k = 1; k <= 4; ++k)
        CHECK(s.dsigma[k - 1] ==
              doctest::Approx(sigma_deriv(k, 1.0, kCtx)).epsilon(1e-15));
    CHECK(s.q4 == doctest::Approx(q_deriv(4, 1.0, kCtx)).epsilon(1e-12));
    CHECK(s.logconc ==
          doctest::Approx(log_concavity(1.0, kCtx)).epsilon(1e-12));
}

} // TEST_SUITE
