#pragma once

#include <functional>

namespace cmdegkit {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0; // accumulated error estimate
    int intervals = 0;      // intervals in the final partition
};

// Adaptive Gauss-Kronrod (G7, K15) with a global worst-interval-first
// refinement strategy. Stops once the summed error estimate is below
// rel_tol * |value| (with a tiny absolute floor so integrals that are
// exactly zero terminate). Throws quadrature_error when the subdivision
// budget is exhausted before tolerance is met.
QuadResult integrate(const std::function<double(double)>& f,
                     double a, double b, double rel_tol,
                     int max_intervals = 4096);

} // namespace cmdegkit
