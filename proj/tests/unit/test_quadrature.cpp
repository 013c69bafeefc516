#include <cmdegkit/errors.hpp>
#include <cmdegkit/quadrature.hpp>

#include <cmath>
#include <doctest.h>

using namespace cmdegkit;

TEST_SUITE("quadrature") {

TEST_CASE("polynomial is exact to rounding") {
    QuadResult r = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
    CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(r.abs_error < 1e-12);
}

TEST_CASE("sine over a half period") {
    QuadResult r = integrate([](double x) { return std::sin(x); }, 0.0,
                             M_PI, 1e-12);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("oscillatory integrand") {
    QuadResult r = integrate([](double x) { return std::cos(5.0 * x); }, 0.0,
                             10.0, 1e-12);
    CHECK(r.value == doctest::Approx(std::sin(50.0) / 5.0).epsilon(1e-11));
}

TEST_CASE("long decaying tail") {
    // The one-sided exponential needs the geometric seeding to converge
    // on [0, 600] without exhausting the interval budget.
    QuadResult r = integrate([](double x) { return std::exp(-x); }, 0.0,
                             600.0, 1e-10);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.intervals > 1);
}

TEST_CASE("zero integrand terminates") {
    QuadResult r = integrate([](double) { return 0.0; }, 0.0, 1.0, 1e-10);
    CHECK(r.value == 0.0);
}

TEST_CASE("odd integrand over symmetric range") {
    QuadResult r = integrate([](double x) { return x * std::exp(-x * x); },
                             -3.0, 3.0, 1e-8);
    CHECK(std::fabs(r.value) < 1e-12);
}

TEST_CASE("budget exhaustion throws") {
    CHECK_THROWS_AS(
        integrate([](double x) { return std::cos(200.0 * x); }, 0.0, 50.0,
                  1e-14, 2),
        quadrature_error);
}

TEST_CASE("error estimate bounds the true error") {
    QuadResult r = integrate([](double x) { return 1.0 / (1.0 + x * x); },
                             0.0, 8.0, 1e-11);
    const double truth = std::atan(8.0);
    CHECK(std::fabs(r.value - truth) <= std::max(r.abs_error, 1e-14));
}

} // TEST_SUITE
