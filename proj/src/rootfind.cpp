#include "gels/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "gels/errors.hpp"

namespace gels {

namespace {

bool opposite_or_zero(double a, double b) { return a == 0.0 || b == 0.0 || (a < 0.0) != (b < 0.0); }

}  // namespace

Bracket expand_bracket(const ScalarFunction& f, double lo, double hi0, int max_doublings) {
    if (!(hi0 > lo)) throw DomainError("expand_bracket: need hi0 > lo");
    const double f_lo = f(lo);
    if (std::isnan(f_lo)) throw BracketError("expand_bracket: f(lo) is NaN");
    const double width = hi0 - lo;
    double scale = 1.0;
    for (int j = 0; j <= max_doublings; ++j, scale *= 2.0) {
        const double hi = lo + scale * width;
        const double f_hi = f(hi);
        if (std::isnan(f_hi)) break;
        if (opposite_or_zero(f_lo, f_hi)) return Bracket{lo, hi, f_lo, f_hi};
    }
    throw BracketError("expand_bracket: no sign change above " + std::to_string(lo) +
                       " within " + std::to_string(max_doublings) + " doublings");
}

double solve_bracketed(const ScalarFunction& f, const Bracket& bracket, const SolverTolerances& tol) {
    if (!(bracket.lo < bracket.hi)) throw DomainError("solve_bracketed: need lo < hi");
    if (!(tol.xtol > 0.0) || !(tol.ftol > 0.0)) throw DomainError("solve_bracketed: tolerances must be > 0");
    if (!opposite_or_zero(bracket.f_lo, bracket.f_hi))
        throw BracketError("solve_bracketed: f has the same sign at both ends");
    if (bracket.f_lo == 0.0) return bracket.lo;
    if (bracket.f_hi == 0.0) return bracket.hi;

    // a is the previous iterate, b the best estimate, c the contrapoint (f(b), f(c) differ in sign).
    double a = bracket.lo, fa = bracket.f_lo;
    double b = bracket.hi, fb = bracket.f_hi;
    double c = a, fc = fa;
    double d = b - a, e = d;

    for (int iter = 0; iter < tol.max_iter; ++iter) {
        if ((fb < 0.0) == (fc < 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b, fa = fb;
            b = c, fb = fc;
            c = a, fc = fa;
        }
        const double tol1 = 0.5 * tol.xtol * std::max(1.0, std::abs(b));
        const double half = 0.5 * (c - b);
        if (std::abs(fb) <= tol.ftol || std::abs(half) <= tol1 || fb == 0.0) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * half * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (half > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if (std::isnan(fb)) throw NumericalError("solve_bracketed: f returned NaN");
    }
    throw ConvergenceError("solve_bracketed: max_iter exceeded", std::min(b, c), std::max(b, c));
}

}  // namespace gels
