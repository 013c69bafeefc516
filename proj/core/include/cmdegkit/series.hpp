#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace cmdegkit {

using bigint = boost::multiprecision::cpp_int;

// Exact integer coefficient table Q(k) for k = k_min .. k_max.
struct SeriesTable {
    int k_min = 5;
    int k_max = 5;
    std::vector<bigint> q_values;
    bool all_positive = false;
};

// Q(k) = 6(66k^2+35k-78) + 3(33k^2-148k+12) 2^k + 2(2k^2-31k+66) 3^k,
// in exact integer arithmetic. k >= 5 is the positivity regime; smaller k
// is permitted for diagnostics.
bigint q_coefficient(int k);

// Table with every Q(k), 5 <= k <= k_max, and the exact positivity flag.
SeriesTable q_positivity(int k_max);

// theta(t) = sum_(k>=5) Q(k) t^k / k!. Closed form
//   (36t^2-174t+132)e^(3t) + (396t^2-690t+36)e^(2t)
//   + (396t^2+606t-468)e^t + 36t^2 + 258t + 300
// for t >= 0.25; the exact-coefficient series below (the closed form
// cancels catastrophically near 0). Positive for t > 0, vanishes to order
// 5 at 0. Throws overflow_error once e^(3t) is not representable.
double theta(double t);

// Compensated floating-point partial sum sum_(k=5)^K Q(k) t^k / k! with
// exact integer coefficients. The K = 60 truncation is the reference the
// closed form is checked against.
double theta_series_sum(double t, int k_max);

// Larger roots of 66x^2+35x-78, 33x^2-148x+12, 2x^2-31x+66, in closed
// form: (sqrt(21817)-35)/132, 2(37+sqrt(1270))/33, (31+sqrt(433))/4.
std::array<double, 3> quadratic_larger_roots();

} // namespace cmdegkit
