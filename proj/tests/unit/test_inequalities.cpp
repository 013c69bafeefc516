#include <cmdegkit/cmdeg.hpp>
#include <cmdegkit/errors.hpp>
#include <cmdegkit/inequalities.hpp>

#include <cmath>
#include <doctest.h>

using namespace cmdegkit;

namespace {
const EvalContext kCtx{};

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}
} // namespace

TEST_SUITE("inequalities") {

TEST_CASE("numerator polynomial spot values") {
    CHECK(p_poly(0.0) == 450.0);
    CHECK(p_poly(1.0) == 189241.0);
}

TEST_CASE("bound values at one") {
    CHECK(rel_err(bound_eval("lower1", 1.0), 13.0 / 48.0) < 1e-15);
    CHECK(rel_err(bound_eval("lower2", 1.0), 189241.0 / 921600.0) <
          1e-15);
    CHECK(rel_err(bound_eval("upper", 1.0), 13.0 / 24.0) < 1e-15);
    CHECK_THROWS_AS(bound_eval("middle", 1.0), catalog_error);
}

TEST_CASE("bounds close onto the subject far out") {
    const double x = 1e3;
    const double subject = psi_capital(x, kCtx);
    CHECK(rel_err(bound_eval("lower1", x) / subject, 0.9960214024) <
          1e-6);
    CHECK(rel_err(bound_eval("lower2", x) / subject, 0.999998004) <
          1e-6);
    CHECK(rel_err(bound_eval("upper", x) / subject, 1.008969525) <
          1e-6);
}

TEST_CASE("single-sided checks pass on the default grid") {
    for (const char* id : {"lower1", "lower2", "upper"}) {
        BoundReport r = bound_check(id, GridSpec{}, kCtx);
        CHECK(r.verdict);
        CHECK(r.min_margin > 0.0);
        CHECK(r.witnesses.empty());
        CHECK(r.bound_id == id);
    }
    BoundReport s = sandwich_check(GridSpec{}, kCtx);
    CHECK(s.verdict);
    CHECK(s.min_margin > 0.0);
}

TEST_CASE("the two lower bounds trade sharpness") {
    // Near one the short form wins, far out the tenfold-power form does.
    CHECK(bound_eval("lower1", 1.0) > bound_eval("lower2", 1.0));
    CHECK(bound_eval("lower2", 1e3) >
          bound_eval("lower1", 1e3));
}

TEST_CASE("gap function values and affinity in the parameter") {
    CHECK(rel_err(h_lambda(0.0, 1.0, kCtx), 0.030860944625323575) < 1e-12);
    CHECK(rel_err(h_lambda(4.0, 1.0, kCtx), -0.052472388708009759) < 1e-12);
    // h_a(x) - h_b(x) = (b - a) x / (12 x^4 (x+1)^2)
    for (double x : {0.3, 1.0, 7.0}) {
        const double diff = h_lambda(1.0, x, kCtx) - h_lambda(3.0, x, kCtx);
        const double want =
            2.0 * x / (12.0 * std::pow(x, 4) * std::pow(x + 1.0, 2));
        CHECK(rel_err(diff, want) < 1e-10);
    }
}

TEST_CASE("gap derivatives agree with finite differences") {
    const double x = 1.3;
    const double h = 1e-5 * x;
    for (int k = 0; k <= 2; ++k) {
        const double up = h_lambda_deriv(0.0, k, x + h, kCtx).value;
        const double dn = h_lambda_deriv(0.0, k, x - h, kCtx).value;
        const double want = (up - dn) / (2.0 * h);
        const double got = h_lambda_deriv(0.0, k + 1, x, kCtx).value;
        CHECK(std::fabs(got - want) < 1e-5 * std::max(1.0, std::fabs(got)));
    }
    CHECK(h_lambda_deriv(0.0, 0, x, kCtx).value ==
          doctest::Approx(h_lambda(0.0, x, kCtx)).epsilon(1e-14));
}

TEST_CASE("two-parameter family verdicts") {
    BoundReport ok = double_inequality_check(0.0, 4.0, GridSpec{}, kCtx);
    CHECK(ok.verdict);
    CHECK(ok.min_margin > 0.0);

    BoundReport bad_lo = double_inequality_check(0.5, 4.0, GridSpec{}, kCtx);
    CHECK_FALSE(bad_lo.verdict);
    REQUIRE_FALSE(bad_lo.witnesses.empty());
    // The violation lives near the small-x crossing of the lower member.
    bool near = false;
    for (const BoundWitness& w : bad_lo.witnesses)
        if (std::fabs(w.x - 0.246528078752) < 1e-3)
            near = true;
    CHECK(near);

    BoundReport bad_hi = double_inequality_check(0.0, 3.5, GridSpec{}, kCtx);
    CHECK_FALSE(bad_hi.verdict);
    REQUIRE_FALSE(bad_hi.witnesses.empty());
    near = false;
    for (const BoundWitness& w : bad_hi.witnesses)
        if (std::fabs(w.x - 10.0247441444) < 1e-2)
            near = true;
    CHECK(near);
}

TEST_CASE("witness entries record both sides") {
    BoundReport bad = double_inequality_check(0.5, 4.0, GridSpec{}, kCtx);
    for (const BoundWitness& w : bad.witnesses) {
        CHECK(w.x > 0.0);
        CHECK(std::isfinite(w.lhs));
        CHECK(std::isfinite(w.rhs));
    }
}

TEST_CASE("probe reports brackets and ratio ranges") {
    ConjectureProbe probe = conjecture_probe(0.0, 4.0, kCtx);
    const double lo_mid = (probe.lower_gap.lo + probe.lower_gap.hi) / 2.0;
    const double hi_mid = (probe.upper_gap.lo + probe.upper_gap.hi) / 2.0;
    CHECK(lo_mid > 1.5);
    CHECK(lo_mid < 2.5);
    CHECK(hi_mid > 2.5);
    CHECK(hi_mid < 3.5);
    CHECK(probe.lower_ratio.min == doctest::Approx(2.0305).epsilon(5e-3));
    // The ratio climbs monotonically toward 5, so the scan tops out at the
    // grid end.
    CHECK(probe.lower_ratio.max == doctest::Approx(4.96658).epsilon(5e-3));
    CHECK(probe.lower_ratio.argmax == 100.0);
    CHECK_FALSE(probe.notes.empty());
}

TEST_CASE("probe labels the unsettled parameter range") {
    ConjectureProbe probe = conjecture_probe(1.0, 4.0, kCtx);
    CHECK(probe.notes.find("uncharacterized") != std::string::npos);
}

} // TEST_SUITE
