#pragma once

#include <functional>

namespace gels {

using ScalarFunction = std::function<double(double)>;

/// An interval [lo, hi] on which f changes sign (or touches zero at an end).
struct Bracket {
    double lo = 0.0;
    double hi = 1.0;
    double f_lo = -1.0;
    double f_hi = 1.0;
};

struct SolverTolerances {
    /// Stop once the bracket is narrower than xtol * max(1, |x|).
    double xtol = 1e-12;
    /// Stop once |f(x)| <= ftol.
    double ftol = 1e-12;
    int max_iter = 200;
};

/// Grows the upper end geometrically, hi_j = lo + 2^j (hi0 - lo), until f
/// changes sign. Throws BracketError after max_doublings failed attempts.
Bracket expand_bracket(const ScalarFunction& f, double lo, double hi0, int max_doublings = 60);

/// Brent's method: inverse quadratic / secant steps guarded by bisection,
/// so the bracket always contains the root and shrinks at least
/// geometrically. Throws ConvergenceError (carrying the last bracket) when
/// max_iter is exhausted.
double solve_bracketed(const ScalarFunction& f, const Bracket& bracket,
                       const SolverTolerances& tol = {});

}  // namespace gels
