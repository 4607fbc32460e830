#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gels/dataset.hpp"
#include "gels/distribution.hpp"

namespace gels {

/// Number of free parameters charged to a GEL-S fit in AIC/SIC. k is
/// selected on a grid and is not counted.
inline constexpr int kGelSFreeParameters = 2;

struct InformationCriteria {
    double aic = 0.0;
    double sic = 0.0;
};

/// aic = 2 n_p - 2 l, sic = n_p ln(n) - 2 l.
InformationCriteria information_criteria(int n_p, double loglik, std::size_t n);

/// Maximum-likelihood fit for one fixed k.
///
/// The optimiser works on (a, gamma) with alpha = a^2, so alpha_hat is
/// raw_a_hat squared. Covariance and standard errors refer to (alpha, gamma);
/// se_raw_a is the delta-method standard error of a itself. Uncertainty
/// fields are NaN when the observed information is not positive definite
/// (for instance when the fit sits on alpha = 0).
struct FitResult {
    int k = 0;
    double alpha_hat = 0.0;
    double gamma_hat = 0.0;
    double raw_a_hat = 0.0;
    double loglik = 0.0;
    Eigen::Matrix2d cov = Eigen::Matrix2d::Constant(std::numeric_limits<double>::quiet_NaN());
    double se_alpha = std::numeric_limits<double>::quiet_NaN();
    double se_gamma = std::numeric_limits<double>::quiet_NaN();
    double se_raw_a = std::numeric_limits<double>::quiet_NaN();
    double aic = 0.0;
    double sic = 0.0;
    bool converged = false;
    int iterations = 0;
    double score_norm = std::numeric_limits<double>::quiet_NaN();
    std::size_t n = 0;
    std::string message;  // failure reason when !converged

    GelSParams params() const { return GelSParams(alpha_hat, k, gamma_hat); }
    bool has_uncertainty() const { return std::isfinite(se_alpha) && std::isfinite(se_gamma); }
};

/// Fits over k_min..k_max. `selected` indexes the converged fit with the
/// largest log-likelihood; ties go to the smaller k.
struct KGridTrace {
    std::vector<FitResult> per_k;
    std::size_t selected = 0;

    const FitResult& best() const { return per_k.at(selected); }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return lo <= v && v <= hi; }
    double half_width() const { return 0.5 * (hi - lo); }
};

struct ConfidenceIntervals {
    double level = 0.95;
    Interval alpha;
    Interval gamma;
};

/// (alpha0 as the raw variable a0, gamma0).
struct FitStart {
    double a0 = 0.0;
    double gamma0 = 1.0;
};

/// -inf when any observation is <= alpha.
double log_likelihood(const GelSParams& params, const Dataset& data);

/// (dl/dalpha, dl/dgamma). Throws DomainError when an observation is <= alpha.
std::array<double, 2> score(const GelSParams& params, const Dataset& data);

/// Score given as a function of (alpha, gamma).
using ScoreFunction = std::function<std::array<double, 2>(double, double)>;

/// Negative Jacobian of a score at (alpha, gamma) by central differences,
/// symmetrised. alpha_step caps the alpha step (pass the distance to the
/// edge of the feasible region).
Eigen::Matrix2d observed_information(const ScoreFunction& score_fn, double alpha, double gamma,
                                     double alpha_step = std::numeric_limits<double>::infinity(),
                                     double h_rel = 1e-5);

/// Observed information of the GEL-S log-likelihood in (alpha, gamma).
Eigen::Matrix2d observed_information(const GelSParams& params, const Dataset& data);

/// Same matrix from second differences of the log-likelihood itself; an
/// independent route used to cross-check the score-based one.
Eigen::Matrix2d observed_information_direct(const GelSParams& params, const Dataset& data);

/// Default start: a0 = sqrt(min(x) / 2), gamma0 = sd of ln(x - a0^2).
FitStart default_start(const Dataset& data);

FitResult fit_given_k(const Dataset& data, int k, std::optional<FitStart> init = std::nullopt);

struct GridOptions {
    int k_min = 0;
    int k_max = 6;
    bool warm_start = true;
};

/// Throws FitFailure when no k converges.
KGridTrace fit(const Dataset& data, const GridOptions& options);

/// Wald intervals estimate +/- z_{(1+level)/2} * se. Throws
/// UncertaintyUnavailable when the fit carries no usable covariance.
ConfidenceIntervals confidence_intervals(const FitResult& fit, double level = 0.95);

}  // namespace gels
