#include "gels/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gels/errors.hpp"

namespace gels {

namespace {

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

double eval_finite(const Objective& f, const Vector& x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw StencilError("finite-difference stencil hit a non-finite value", to_std(x));
    return v;
}

double step_for(double xj, double h_rel) { return h_rel * std::max(1.0, std::abs(xj)); }

// Cholesky with diagonal loading; returns the Newton direction for g.
Vector loaded_newton_direction(const Matrix& h, const Vector& g) {
    const auto n = h.rows();
    const double scale = std::max(1e-12, h.diagonal().cwiseAbs().maxCoeff());
    double tau = 0.0;
    for (int attempt = 0; attempt < 80; ++attempt) {
        Matrix loaded = h;
        loaded.diagonal().array() += tau;
        Eigen::LLT<Matrix> llt(loaded);
        if (llt.info() == Eigen::Success) {
            Vector dir = llt.solve(-g);
            if (dir.allFinite()) return dir;
        }
        tau = tau == 0.0 ? 1e-8 * scale : 4.0 * tau;
    }
    // Hessian useless; fall back to scaled steepest descent.
    return -g / std::max(1.0, g.norm()) * (1.0 / std::sqrt(static_cast<double>(n)));
}

}  // namespace

Vector numerical_gradient(const Objective& f, const Vector& x, double h_rel) {
    Vector g(x.size());
    Vector probe = x;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const double h = step_for(x[j], h_rel);
        probe[j] = x[j] + h;
        const double up = eval_finite(f, probe);
        probe[j] = x[j] - h;
        const double down = eval_finite(f, probe);
        probe[j] = x[j];
        g[j] = (up - down) / (2.0 * h);
    }
    return g;
}

Matrix numerical_hessian(const Objective& f, const Vector& x, double h_rel) {
    const auto n = x.size();
    Matrix h(n, n);
    const double f0 = eval_finite(f, x);
    Vector probe = x;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double hi = step_for(x[i], h_rel);
        probe[i] = x[i] + hi;
        const double up = eval_finite(f, probe);
        probe[i] = x[i] - hi;
        const double down = eval_finite(f, probe);
        probe[i] = x[i];
        h(i, i) = (up - 2.0 * f0 + down) / (hi * hi);
        for (Eigen::Index j = 0; j < i; ++j) {
            const double hj = step_for(x[j], h_rel);
            auto corner = [&](double si, double sj) {
                probe[i] = x[i] + si * hi;
                probe[j] = x[j] + sj * hj;
                const double v = eval_finite(f, probe);
                probe[i] = x[i];
                probe[j] = x[j];
                return v;
            };
            const double cross = (corner(1, 1) - corner(1, -1) - corner(-1, 1) + corner(-1, -1)) / (4.0 * hi * hj);
            h(i, j) = cross;
            h(j, i) = cross;
        }
    }
    return 0.5 * (h + h.transpose());
}

Matrix hessian_from_gradient(const Gradient& grad, const Vector& x, double h_rel) {
    const auto n = x.size();
    Matrix h(n, n);
    Vector probe = x;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double step = step_for(x[j], h_rel);
        probe[j] = x[j] + step;
        const Vector up = grad(probe);
        probe[j] = x[j] - step;
        const Vector down = grad(probe);
        probe[j] = x[j];
        if (!up.allFinite() || !down.allFinite())
            throw StencilError("gradient stencil hit a non-finite value", to_std(x));
        h.col(j) = (up - down) / (2.0 * step);
    }
    return 0.5 * (h + h.transpose());
}

MinimizeResult minimize(const Objective& f, const Vector& x0, const MinimizeSettings& settings,
                        const Gradient& gradient) {
    MinimizeResult r;
    r.x_min = x0;
    r.f_min = f(x0);
    if (!std::isfinite(r.f_min)) throw DomainError("minimize: objective is not finite at the start point");
    const double gtol = settings.gtol.value_or(1e-8 * std::max(1.0, std::abs(r.f_min)));

    // Finite-difference steps shrink if the stencil reaches an infeasible point.
    auto grad_at = [&](const Vector& x) -> Vector {
        if (gradient) return gradient(x);
        double h = settings.h_rel_gradient;
        for (int attempt = 0;; ++attempt) {
            try {
                return numerical_gradient(f, x, h);
            } catch (const StencilError&) {
                if (attempt >= 6) throw;
                h *= 0.1;
            }
        }
    };
    auto hess_at = [&](const Vector& x) -> Matrix {
        double h = gradient ? settings.h_rel_gradient : settings.h_rel_hessian;
        for (int attempt = 0;; ++attempt) {
            try {
                return gradient ? hessian_from_gradient(gradient, x, h) : numerical_hessian(f, x, h);
            } catch (const StencilError&) {
                if (attempt >= 6) throw;
                h *= 0.1;
            }
        }
    };

    Vector g = grad_at(r.x_min);
    r.gradient_norm = g.norm();
    for (r.iterations = 0; r.iterations < settings.max_iter; ++r.iterations) {
        if (r.gradient_norm <= gtol) break;
        const Matrix h = hess_at(r.x_min);
        Vector dir = loaded_newton_direction(h, g);
        double slope = g.dot(dir);
        if (!(slope < 0.0)) {
            dir = -g;
            slope = -g.squaredNorm();
        }

        double t = 1.0;
        bool accepted = false;
        Vector candidate;
        double f_candidate = 0.0;
        for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
            candidate = r.x_min + t * dir;
            f_candidate = f(candidate);
            if (std::isfinite(f_candidate) && f_candidate <= r.f_min + 1e-4 * t * slope) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;

        const double step = (candidate - r.x_min).norm();
        r.x_min = candidate;
        r.f_min = f_candidate;
        g = grad_at(r.x_min);
        r.gradient_norm = g.norm();
        if (step <= settings.step_tol * std::max(1.0, r.x_min.norm())) {
            ++r.iterations;
            break;
        }
    }
    r.converged = r.gradient_norm <= gtol;
    try {
        r.hessian = hess_at(r.x_min);
    } catch (const StencilError&) {
        r.hessian = Matrix::Constant(x0.size(), x0.size(), std::numeric_limits<double>::quiet_NaN());
    }
    return r;
}

}  // namespace gels
