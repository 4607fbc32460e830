#pragma once

#include <span>
#include <utility>
#include <vector>

namespace gels {

/// Natural log of the binomial-exponential series
///
///     S(alpha, gamma, m) = sum_{i=0}^{m} C(m,i) alpha^(m-i) exp((i+1)^2 gamma^2 / 2)
///
/// which carries the normalising constant, the distribution function and
/// every raw moment. Only the log is ever stored; the raw sum overflows a
/// double well inside the parameter range met in practice.
struct LogSeriesSum {
    double value = 0.0;
    int m = 0;
    double alpha = 0.0;
    double gamma = 1.0;
};

/// Standard normal distribution function, evaluated through erfc so both
/// tails keep full relative precision.
double std_normal_cdf(double z) noexcept;

/// Inverse of std_normal_cdf. Requires 0 < p < 1.
double std_normal_quantile(double p);

/// ln C(n, i). Throws DomainError unless 0 <= i <= n.
double log_binomial(int n, int i);

/// ln sum exp(t_j). Returns -inf when every term is -inf (or the list is empty).
double log_sum_exp(std::span<const double> terms) noexcept;

/// Log-space term i of the series: ln C(m,i) + (m-i) ln alpha + (i+1)^2 gamma^2 / 2.
/// With alpha == 0 only i == m is finite (0^0 == 1).
std::vector<double> log_series_terms(double alpha, double gamma, int m);

LogSeriesSum log_series_sum(double alpha, double gamma, int m);

/// Mixture weights w_i = term_i / S. They sum to one and are what the
/// distribution function is built from.
std::vector<double> series_weights(double alpha, double gamma, int m);

/// (d ln S / d alpha, d ln S / d gamma). At alpha == 0 the alpha partial is
/// the one-sided derivative from the right.
std::pair<double, double> log_series_sum_partials(double alpha, double gamma, int m);

}  // namespace gels
