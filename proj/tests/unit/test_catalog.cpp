#include <cmdegkit/catalog.hpp>
#include <cmdegkit/errors.hpp>
#include <cmdegkit/polygamma.hpp>

#include <cmath>
#include <doctest.h>

using namespace cmdegkit;

namespace {
const EvalContext kCtx{};

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}
} // namespace

TEST_SUITE("catalog") {

TEST_CASE("id recognition") {
    CHECK(catalog_has("inv_x"));
    CHECK(catalog_has("pow:1.5"));
    CHECK(catalog_has("exp_neg"));
    CHECK(catalog_has("inv_x_xp1"));
    CHECK(catalog_has("Psi"));
    CHECK(catalog_has("h_lambda:0"));
    CHECK(catalog_has("neg_h_mu:4"));
    CHECK_FALSE(catalog_has("pow:abc"));
    CHECK_FALSE(catalog_has("pow:-1"));
    CHECK_FALSE(catalog_has("pow:"));
    CHECK_FALSE(catalog_has("nope"));
    CHECK_FALSE(catalog_has(""));
    CHECK(catalog_ids().size() == 7);
}

TEST_CASE("closed-form derivatives are exact") {
    // 1/x: k-th derivative (-1)^k k! x^-(k+1)
    CHECK(catalog_deriv("inv_x", 3, 2.0, kCtx).value == -6.0 / 16.0);
    // x^-1.5 at x = 4, k = 2: 1.5 * 2.5 * 4^-3.5
    CHECK(catalog_deriv("pow:1.5", 2, 4.0, kCtx).value ==
          doctest::Approx(3.75 / 128.0).epsilon(1e-15));
    // e^-x
    CHECK(catalog_deriv("exp_neg", 5, 1.0, kCtx).value ==
          doctest::Approx(-std::exp(-1.0)).epsilon(1e-15));
    // 1/(x(x+1)) by partial fractions
    CHECK(catalog_deriv("inv_x_xp1", 0, 2.0, kCtx).value ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(catalog_deriv("inv_x_xp1", 1, 2.0, kCtx).value ==
          doctest::Approx(-(0.25 - 1.0 / 9.0)).epsilon(1e-15));
}

TEST_CASE("the degree-four subject matches its polygamma assembly") {
    const double d0 = catalog_deriv("Psi", 0, 1.0, kCtx).value;
    const double p1 = polygamma(1, 1.0, kCtx);
    const double p2 = polygamma(2, 1.0, kCtx);
    const double p3 = polygamma(3, 1.0, kCtx);
    CHECK(rel_err(d0, p1 * p1 + p2) < 1e-13);
    CHECK(rel_err(d0, 0.3016942779586569) < 1e-13);
    const double d1 = catalog_deriv("Psi", 1, 1.0, kCtx).value;
    CHECK(rel_err(d1, 2.0 * p1 * p2 + p3) < 1e-13);
}

TEST_CASE("derivative ladders agree with finite differences") {
    const double x = 1.7;
    const double h = 1e-5 * x;
    for (const char* id : {"inv_x", "pow:1.5", "exp_neg", "inv_x_xp1", "Psi",
                           "h_lambda:0", "neg_h_mu:4"}) {
        for (int k = 0; k <= 3; ++k) {
            const double up = catalog_deriv(id, k, x + h, kCtx).value;
            const double dn = catalog_deriv(id, k, x - h, kCtx).value;
            const double want = (up - dn) / (2.0 * h);
            const double got = catalog_deriv(id, k + 1, x, kCtx).value;
            CHECK(std::fabs(got - want) <
                  1e-5 * std::max(1.0, std::fabs(got)));
        }
    }
}

TEST_CASE("scale tracks the assembled magnitude") {
    DerivValue dv = catalog_deriv("inv_x_xp1", 4, 0.5, kCtx);
    CHECK(dv.scale >= std::fabs(dv.value));
    DerivValue smooth = catalog_deriv("inv_x", 2, 3.0, kCtx);
    CHECK(smooth.scale >= std::fabs(smooth.value));
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(catalog_deriv("nope", 0, 1.0, kCtx), catalog_error);
    CHECK_THROWS_AS(catalog_deriv("inv_x", -1, 1.0, kCtx),
                    std::domain_error);
    CHECK_THROWS_AS(catalog_deriv("inv_x", 19, 1.0, kCtx),
                    std::domain_error);
    CHECK_THROWS_AS(catalog_deriv("inv_x", 0, 0.0, kCtx), std::domain_error);
    CHECK_THROWS_AS(catalog_deriv("inv_x", 0, -1.0, kCtx),
                    std::domain_error);
    CHECK_THROWS_AS(catalog_eval("pow:0", 1.0, kCtx), catalog_error);
}

TEST_CASE("value shortcut matches order zero") {
    CHECK(catalog_eval("Psi", 2.0, kCtx) ==
          doctest::Approx(catalog_deriv("Psi", 0, 2.0, kCtx).value)
              .epsilon(1e-15));
}

} // TEST_SUITE
