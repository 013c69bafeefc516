#include "cmdegkit/series.hpp"
#include "cmdegkit/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace cmdegkit {

bigint q_coefficient(int k) {
    const bigint kk = k;
    const bigint p2 = bigint(1) << k; // 2^k
    bigint p3 = 1;
    for (int i = 0; i < k; ++i)
        p3 *= 3;
    return 6 * (66 * kk * kk + 35 * kk - 78) +
           3 * (33 * kk * kk - 148 * kk + 12) * p2 +
           2 * (2 * kk * kk - 31 * kk + 66) * p3;
}

SeriesTable q_positivity(int k_max) {
    if (k_max < 5)
        throw std::domain_error("q_positivity: k_max must be >= 5");
    SeriesTable t;
    t.k_min = 5;
    t.k_max = k_max;
    t.q_values.reserve(static_cast<size_t>(k_max - 4));
    t.all_positive = true;
    for (int k = 5; k <= k_max; ++k) {
        t.q_values.push_back(q_coefficient(k));
        if (t.q_values.back() <= 0)
            t.all_positive = false;
    }
    return t;
}

double theta_series_sum(double t, int k_max) {
    // Neumaier-compensated sum of Q(k) t^k / k!, k = 5..k_max
    double sum = 0.0, comp = 0.0;
    double pow_fact = t * t * t * t * t / 120.0; // t^5 / 5!
    for (int k = 5; k <= k_max; ++k) {
        const double term = static_cast<double>(q_coefficient(k)) * pow_fact;
        const double s = sum + term;
        if (std::fabs(sum) >= std::fabs(term))
            comp += (sum - s) + term;
        else
            comp += (term - s) + sum;
        sum = s;
        pow_fact *= t / (k + 1);
    }
    return sum + comp;
}

double theta(double t) {
    if (3.0 * t > 709.0)
        throw overflow_error("theta: e^(3t) overflows");
    if (t < 0.25)
        return theta_series_sum(t, 60);
    const double e1 = std::exp(t);
    const double e2 = e1 * e1;
    const double e3 = e2 * e1;
    const double t2 = t * t;
    return (36.0 * t2 - 174.0 * t + 132.0) * e3 +
           (396.0 * t2 - 690.0 * t + 36.0) * e2 +
           (396.0 * t2 + 606.0 * t - 468.0) * e1 +
           36.0 * t2 + 258.0 * t + 300.0;
}

std::array<double, 3> quadratic_larger_roots() {
    return {(std::sqrt(21817.0) - 35.0) / 132.0,
            2.0 * (37.0 + std::sqrt(1270.0)) / 33.0,
            (31.0 + std::sqrt(433.0)) / 4.0};
}

} // namespace cmdegkit
