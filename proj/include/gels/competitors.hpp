#pragma once

#include <string>
#include <vector>

#include "gels/dataset.hpp"

namespace gels {

enum class CompetitorFamily { lognormal2, gamma, weibull, gen_exponential };

std::string to_string(CompetitorFamily family);

/// Parameter layout per family:
///   lognormal2       (mu, sigma)
///   gamma            (shape, rate)       f = b^a x^(a-1) e^(-b x) / Gamma(a)
///   weibull          (shape, scale)      F = 1 - exp(-(x/scale)^shape)
///   gen_exponential  (shape, rate)       F = (1 - e^(-rate x))^shape
struct CompetitorFit {
    CompetitorFamily family = CompetitorFamily::lognormal2;
    std::vector<double> params;
    double loglik = 0.0;
    int n_p = 2;
    double aic = 0.0;
    double sic = 0.0;
    bool converged = false;
};

/// Log-likelihood of `family` at `params`; -inf outside the parameter space.
double competitor_loglik(CompetitorFamily family, const std::vector<double>& params, const Dataset& data);

/// Closed-form MLE. Throws DataError when every value is equal.
CompetitorFit fit_lognormal2(const Dataset& data);
CompetitorFit fit_gamma(const Dataset& data);
CompetitorFit fit_weibull(const Dataset& data);
CompetitorFit fit_gen_exponential(const Dataset& data);

CompetitorFit fit_competitor(CompetitorFamily family, const Dataset& data);

/// All four families, in enum order.
std::vector<CompetitorFit> fit_all_competitors(const Dataset& data);

}  // namespace gels
