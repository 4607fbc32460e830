#include "gels/special_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "gels/errors.hpp"

namespace gels {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_series_args(double alpha, double gamma, int m) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw DomainError("series: alpha must be finite and >= 0");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw DomainError("series: gamma must be finite and > 0");
    if (m < 0)
        throw DomainError("series: order must be >= 0");
}

}  // namespace

double std_normal_cdf(double z) noexcept {
    if (std::isnan(z)) return z;
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("std_normal_quantile: p must lie in (0, 1)");
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double log_binomial(int n, int i) {
    if (n < 0 || i < 0 || i > n)
        throw DomainError("log_binomial: need 0 <= i <= n, got n=" + std::to_string(n) +
                          " i=" + std::to_string(i));
    if (i == 0 || i == n) return 0.0;
    // boost's lgamma is reentrant; std::lgamma writes the global signgam.
    using boost::math::lgamma;
    return lgamma(static_cast<double>(n) + 1.0) - lgamma(static_cast<double>(i) + 1.0) -
           lgamma(static_cast<double>(n - i) + 1.0);
}

double log_sum_exp(std::span<const double> terms) noexcept {
    if (terms.empty()) return kNegInf;
    const double top = *std::max_element(terms.begin(), terms.end());
    if (top == kNegInf) return kNegInf;
    if (top == std::numeric_limits<double>::infinity()) return top;
    double acc = 0.0;
    for (double t : terms) acc += std::exp(t - top);
    return top + std::log(acc);
}

std::vector<double> log_series_terms(double alpha, double gamma, int m) {
    check_series_args(alpha, gamma, m);
    const double half_g2 = 0.5 * gamma * gamma;
    const double log_alpha = alpha > 0.0 ? std::log(alpha) : kNegInf;
    std::vector<double> terms(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
        const int power = m - i;
        const double alpha_part = power == 0 ? 0.0 : power * log_alpha;
        const double sq = static_cast<double>(i + 1) * static_cast<double>(i + 1);
        terms[static_cast<std::size_t>(i)] = log_binomial(m, i) + alpha_part + sq * half_g2;
    }
    return terms;
}

LogSeriesSum log_series_sum(double alpha, double gamma, int m) {
    const auto terms = log_series_terms(alpha, gamma, m);
    return LogSeriesSum{log_sum_exp(terms), m, alpha, gamma};
}

std::vector<double> series_weights(double alpha, double gamma, int m) {
    auto terms = log_series_terms(alpha, gamma, m);
    const double total = log_sum_exp(terms);
    for (double& t : terms) t = std::exp(t - total);
    return terms;
}

std::pair<double, double> log_series_sum_partials(double alpha, double gamma, int m) {
    const auto terms = log_series_terms(alpha, gamma, m);
    const double total = log_sum_exp(terms);

    // d/dalpha: C(m,i) (m-i) alpha^(m-i-1) e^{...}; the power-zero term survives alpha == 0.
    std::vector<double> d_alpha(terms.size(), kNegInf);
    const double log_alpha = alpha > 0.0 ? std::log(alpha) : kNegInf;
    const double half_g2 = 0.5 * gamma * gamma;
    for (int i = 0; i < m; ++i) {
        const int power = m - i - 1;
        const double alpha_part = power == 0 ? 0.0 : power * log_alpha;
        const double sq = static_cast<double>(i + 1) * static_cast<double>(i + 1);
        d_alpha[static_cast<std::size_t>(i)] =
            log_binomial(m, i) + std::log(static_cast<double>(m - i)) + alpha_part + sq * half_g2;
    }
    const double dlog_dalpha = m == 0 ? 0.0 : std::exp(log_sum_exp(d_alpha) - total);

    // d/dgamma: gamma * sum_i w_i (i+1)^2.
    double weighted = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double sq = static_cast<double>(i + 1) * static_cast<double>(i + 1);
        weighted += std::exp(terms[static_cast<std::size_t>(i)] - total) * sq;
    }
    return {dlog_dalpha, gamma * weighted};
}

}  // namespace gels
