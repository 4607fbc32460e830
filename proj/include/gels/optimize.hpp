#pragma once

#include <functional>
#include <optional>

#include <Eigen/Dense>

namespace gels {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Objective to minimise. May return +inf to mark an infeasible point.
using Objective = std::function<double(const Vector&)>;
using Gradient = std::function<Vector(const Vector&)>;

struct MinimizeSettings {
    /// Gradient-norm tolerance. Unset means 1e-8 * max(1, |f(x0)|).
    std::optional<double> gtol;
    double step_tol = 1e-12;
    int max_iter = 500;
    double h_rel_gradient = 1e-5;
    double h_rel_hessian = 1e-4;
};

struct MinimizeResult {
    Vector x_min;
    double f_min = 0.0;
    double gradient_norm = 0.0;
    Matrix hessian;  // symmetric, evaluated at x_min
    int iterations = 0;
    bool converged = false;  // implies gradient_norm <= gtol
};

/// Central differences with step h_rel * max(1, |x_j|) per coordinate.
/// Throws StencilError if f is not finite at a stencil point.
Vector numerical_gradient(const Objective& f, const Vector& x, double h_rel = 1e-5);

/// Central second differences, symmetrised as (H + H^T) / 2.
Matrix numerical_hessian(const Objective& f, const Vector& x, double h_rel = 1e-4);

/// Hessian as the central-difference Jacobian of a gradient, symmetrised.
Matrix hessian_from_gradient(const Gradient& grad, const Vector& x, double h_rel = 1e-5);

/// Damped Newton iteration. The Hessian comes from finite differences (of
/// the gradient when one is supplied, of f otherwise); when it is not
/// positive definite a multiple of the identity is added until a Cholesky
/// factorisation succeeds. Steps are backtracked until they satisfy the
/// Armijo condition, so accepted objective values never increase and +inf
/// points are never accepted. Stops when the gradient norm drops below gtol,
/// when a step shrinks below step_tol, or after max_iter iterations.
MinimizeResult minimize(const Objective& f, const Vector& x0, const MinimizeSettings& settings = {},
                        const Gradient& gradient = {});

}  // namespace gels
