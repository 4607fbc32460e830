#pragma once

#include <cstdint>
#include <vector>

namespace gels {

/// Parameters of the generalized exponential log-squared (GEL-S) law,
///
///     f(x) = C x^k exp(-(ln(x - alpha))^2 / (2 gamma^2)),   x > alpha,
///
/// with alpha >= 0 the left end of the support, k = 0, 1, 2, ... the degree
/// of the polynomial factor and gamma > 0 the spread of the log-squared
/// exponent. The constructor rejects anything else with DomainError.
class GelSParams {
public:
    GelSParams(double alpha, int k, double gamma);

    double alpha() const noexcept { return alpha_; }
    int k() const noexcept { return k_; }
    double gamma() const noexcept { return gamma_; }

    friend bool operator==(const GelSParams&, const GelSParams&) = default;

private:
    double alpha_;
    int k_;
    double gamma_;
};

struct DistributionSummary {
    double mean = 0.0;
    double variance = 0.0;
    double skewness = 0.0;
    double kurtosis = 0.0;  // not excess: 3 for a normal law
    double mode = 0.0;
    double median = 0.0;
};

/// ln C.
double log_norm_const(const GelSParams& p);

/// -inf for x <= alpha.
double log_pdf(const GelSParams& p, double x);
double pdf(const GelSParams& p, double x);

/// The distribution function is a mixture of log-normal distribution
/// functions, sum_i w_i Phi((ln(x - alpha) - (i+1) gamma^2) / gamma), with the
/// weights taken from series_weights so they sum to one.
double cdf(const GelSParams& p, double x);

/// Upper tail, evaluated directly as sum_i w_i Phi(-z_i) rather than 1 - cdf.
double sf(const GelSParams& p, double x);

/// ln E[X^n] = ln S(n + k) - ln S(k).
double log_moment(const GelSParams& p, int n);

/// E[X^n]. Throws MomentOverflowError if the value does not fit a double.
double moment(const GelSParams& p, int n);

DistributionSummary summary(const GelSParams& p);

/// Unique root of x ln(x - alpha) = k gamma^2 (x - alpha) on [1 + alpha, inf);
/// exactly 1 + alpha when k == 0.
double mode(const GelSParams& p);

/// Unique q with cdf(q) = prob. Throws DomainError unless 0 < prob < 1.
double quantile(const GelSParams& p, double prob);

/// Inverse-transform sample of size n. Deterministic in seed.
std::vector<double> sample(const GelSParams& p, std::size_t n, std::uint64_t seed);

}  // namespace gels
