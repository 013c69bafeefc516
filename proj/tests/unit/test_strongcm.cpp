#include <cmdegkit/catalog.hpp>
#include <cmdegkit/cmdeg.hpp>
#include <cmdegkit/errors.hpp>
#include <cmdegkit/strongcm.hpp>

#include <cmath>
#include <doctest.h>

using namespace cmdegkit;

namespace {
const EvalContext kCtx{};
} // namespace

TEST_SUITE("strongcm") {

TEST_CASE("classical members pass") {
    CHECK(strongly_cm_check("inv_x", 8, GridSpec{}, kCtx).verdict);
    CHECK(strongly_cm_check("pow:1.5", 8, GridSpec{}, kCtx).verdict);
    CHECK(strongly_cm_check("inv_x_xp1", 3, GridSpec{}, kCtx).verdict);
    CHECK(strongly_cm_check("inv_x_xp1", 8, GridSpec{}, kCtx).verdict);
    CHECK(strongly_cm_check("Psi", 6, GridSpec{}, kCtx).verdict);
}

TEST_CASE("slowly decaying and exponential members fail") {
    CMReport slow = strongly_cm_check("pow:0.5", 8, GridSpec{}, kCtx);
    CHECK_FALSE(slow.verdict);
    CHECK_FALSE(slow.witnesses.empty());

    CMReport exp = strongly_cm_check("exp_neg", 4, GridSpec{}, kCtx);
    CHECK_FALSE(exp.verdict);
    REQUIRE_FALSE(exp.witnesses.empty());
    // x e^-x rises on (0, 1): some witness sits at the plain-value level.
    bool base_level = false;
    for (const Witness& w : exp.witnesses)
        if (w.k == 0)
            base_level = true;
    CHECK(base_level);
}

TEST_CASE("spot values of the scaled derivative stack") {
    // At x = 0.5: x Psi, -x^2 Psi', x^3 Psi'' with known values.
    const double x = 0.5;
    const double f0 = catalog_deriv("Psi", 0, x, kCtx).value;
    const double f1 = catalog_deriv("Psi", 1, x, kCtx).value;
    const double f2 = catalog_deriv("Psi", 2, x, kCtx).value;
    CHECK(x * f0 == doctest::Approx(3.76173805713).epsilon(1e-10));
    CHECK(-x * x * f1 == doctest::Approx(17.1711185977).epsilon(1e-10));
    CHECK(x * x * x * f2 == doctest::Approx(94.5414670918).epsilon(1e-10));
}

TEST_CASE("both routes agree across the catalog") {
    for (const char* id :
         {"inv_x", "pow:1.5", "pow:0.5", "exp_neg", "inv_x_xp1"}) {
        EquivalenceReport r = equivalence_test(id, 8, GridSpec{}, kCtx);
        CHECK(r.agree);
        CHECK(r.strong_verdict == r.xcm_verdict);
    }
}

TEST_CASE("passing members have degree at least one") {
    DegreeEstimate d =
        degree_estimate("inv_x_xp1", 0.0, 3.0, 4, GridSpec{}, kCtx, 0.1);
    CHECK(d.lo >= 0.9);
    CHECK(d.hi >= d.lo);
}

TEST_CASE("induction step holds along the passing chain") {
    // For strongly decaying members: x |f^(k)| >= k |f^(k-1)| pointwise,
    // written with the alternating signs made explicit.
    auto grid = make_grid(GridSpec{0.1, 50.0, 60, "log"});
    for (const char* id : {"inv_x", "pow:1.5", "inv_x_xp1"}) {
        for (int k = 1; k <= 8; ++k) {
            const double sk = (k % 2 == 0) ? 1.0 : -1.0;
            for (double x : grid) {
                DerivValue fk = catalog_deriv(id, k, x, kCtx);
                DerivValue fk1 = catalog_deriv(id, k - 1, x, kCtx);
                const double lhs = sk * std::pow(x, k + 1) * fk.value;
                const double rhs = -double(k) * sk * std::pow(x, k) *
                                   fk1.value;
                const double slack =
                    1e-12 * std::max(1.0, std::pow(x, k + 1) * fk.scale);
                CHECK(lhs >= rhs - slack);
            }
        }
    }
}

} // TEST_SUITE
