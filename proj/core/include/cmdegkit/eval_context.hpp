#pragma once

#include <cmath>
#include <stdexcept>

namespace cmdegkit {

// Shared numeric tuning knobs. All evaluators are pure functions of
// (inputs, ctx); an EvalContext is immutable once validated.
struct EvalContext {
    // switch to the Maclaurin branch of the kernel functions when |s| is
    // below this radius (closed forms are 0/0 at s=0)
    double series_radius = 0.5;
    // minimum argument before the polygamma asymptotic series is trusted;
    // smaller arguments are shifted up by the recurrence
    double shift_threshold = 16.0;
    // number of terms kept in asymptotic expansions (leading term, the
    // half-power correction, then Bernoulli corrections)
    int asym_terms = 12;
    // target relative tolerance for adaptive quadrature
    double quad_rel_tol = 1e-10;
    // truncation horizon T for improper integrals over t
    double horizon = 60.0;

    void validate() const {
        auto bad = [](double v) { return !std::isfinite(v); };
        if (bad(series_radius) || series_radius <= 0.0 || series_radius > 1.0)
            throw std::invalid_argument("EvalContext: series_radius must be in (0, 1]");
        if (bad(shift_threshold) || shift_threshold < 1.0)
            throw std::invalid_argument("EvalContext: shift_threshold must be >= 1");
        if (asym_terms < 3)
            throw std::invalid_argument("EvalContext: asym_terms must be >= 3");
        if (bad(quad_rel_tol) || quad_rel_tol <= 0.0 || quad_rel_tol >= 1.0)
            throw std::invalid_argument("EvalContext: quad_rel_tol must be in (0, 1)");
        if (bad(horizon) || horizon <= 0.0)
            throw std::invalid_argument("EvalContext: horizon must be positive");
    }
};

} // namespace cmdegkit
