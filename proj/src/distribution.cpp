#include "gels/distribution.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "gels/errors.hpp"
#include "gels/random.hpp"
#include "gels/rootfind.hpp"
#include "gels/special_math.hpp"

namespace gels {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // ln(2 pi) / 2

// Mixture of normal distribution functions in t = ln(x - alpha); component i
// is centred at (i+1) gamma^2 with spread gamma.
class LogMixture {
public:
    explicit LogMixture(const GelSParams& p)
        : gamma_(p.gamma()), weights_(series_weights(p.alpha(), p.gamma(), p.k())) {}

    double lower(double t) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < weights_.size(); ++i) acc += weights_[i] * std_normal_cdf(z(i, t));
        return acc;
    }

    double upper(double t) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < weights_.size(); ++i) acc += weights_[i] * std_normal_cdf(-z(i, t));
        return acc;
    }

    // Inverse of lower(); the tail closer to prob is solved on the matching side.
    double solve(double prob) const {
        const double g2 = gamma_ * gamma_;
        const double k1 = static_cast<double>(weights_.size());
        const double t_lo = g2 - 40.0 * gamma_;  // every z_i <= -40 here
        const double t_hi0 = k1 * g2 + 6.0 * gamma_;

        ScalarFunction target;
        if (prob <= 0.5) {
            target = [this, prob](double t) { return lower(t) - prob; };
        } else {
            const double tail = 1.0 - prob;
            target = [this, tail](double t) { return tail - upper(t); };
        }
        const Bracket br = expand_bracket(target, t_lo, t_hi0);
        SolverTolerances tol;
        tol.xtol = 4.0 * std::numeric_limits<double>::epsilon();
        tol.ftol = 1e-14 * std::min(prob, 1.0 - prob);
        tol.max_iter = 300;
        return solve_bracketed(target, br, tol);
    }

private:
    double z(std::size_t i, double t) const {
        return (t - static_cast<double>(i + 1) * gamma_ * gamma_) / gamma_;
    }

    double gamma_;
    std::vector<double> weights_;
};

}  // namespace

GelSParams::GelSParams(double alpha, int k, double gamma) : alpha_(alpha), k_(k), gamma_(gamma) {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw DomainError("GEL-S: alpha must be finite and >= 0, got " + std::to_string(alpha));
    if (k < 0) throw DomainError("GEL-S: k must be >= 0, got " + std::to_string(k));
    if (!std::isfinite(gamma) || !(gamma > 0.0))
        throw DomainError("GEL-S: gamma must be finite and > 0, got " + std::to_string(gamma));
}

double log_norm_const(const GelSParams& p) {
    return -(std::log(p.gamma()) + kHalfLogTwoPi + log_series_sum(p.alpha(), p.gamma(), p.k()).value);
}

double log_pdf(const GelSParams& p, double x) {
    if (!(x > p.alpha())) return kNegInf;
    const double t = std::log(x - p.alpha());
    const double poly = p.k() == 0 ? 0.0 : p.k() * std::log(x);
    return log_norm_const(p) + poly - t * t / (2.0 * p.gamma() * p.gamma());
}

double pdf(const GelSParams& p, double x) { return std::exp(log_pdf(p, x)); }

double cdf(const GelSParams& p, double x) {
    if (!(x > p.alpha())) return 0.0;
    if (std::isinf(x)) return 1.0;
    return LogMixture(p).lower(std::log(x - p.alpha()));
}

double sf(const GelSParams& p, double x) {
    if (!(x > p.alpha())) return 1.0;
    if (std::isinf(x)) return 0.0;
    return LogMixture(p).upper(std::log(x - p.alpha()));
}

double log_moment(const GelSParams& p, int n) {
    if (n < 0) throw DomainError("moment: order must be >= 0");
    if (n == 0) return 0.0;
    return log_series_sum(p.alpha(), p.gamma(), n + p.k()).value -
           log_series_sum(p.alpha(), p.gamma(), p.k()).value;
}

double moment(const GelSParams& p, int n) {
    const double lm = log_moment(p, n);
    const double value = std::exp(lm);
    if (!std::isfinite(value))
        throw MomentOverflowError("moment of order " + std::to_string(n) + " overflows (log value " +
                                      std::to_string(lm) + ")",
                                  lm);
    return value;
}

DistributionSummary summary(const GelSParams& p) {
    const double m1 = moment(p, 1);
    const double m2 = moment(p, 2);
    const double m3 = moment(p, 3);
    const double m4 = moment(p, 4);

    DistributionSummary s;
    s.mean = m1;
    s.variance = m2 - m1 * m1;
    const double sd = std::sqrt(s.variance);
    const double sd3 = sd * s.variance;
    s.skewness = (m3 - 3.0 * m1 * s.variance - m1 * m1 * m1) / sd3;
    s.kurtosis = (m4 - 4.0 * m1 * sd3 * s.skewness - 6.0 * m1 * m1 * s.variance - m1 * m1 * m1 * m1) /
                 (s.variance * s.variance);
    s.mode = mode(p);
    s.median = quantile(p, 0.5);
    return s;
}

double mode(const GelSParams& p) {
    const double a = p.alpha();
    if (p.k() == 0) return 1.0 + a;
    const double slope = p.k() * p.gamma() * p.gamma();
    // Negative at 1 + alpha (value -k gamma^2), increasing to +inf.
    const ScalarFunction g = [a, slope](double x) { return x * std::log(x - a) - slope * (x - a); };
    const Bracket br = expand_bracket(g, 1.0 + a, a + std::exp(slope + 1.0));
    SolverTolerances tol;
    tol.ftol = 1e-14;
    return solve_bracketed(g, br, tol);
}

double quantile(const GelSParams& p, double prob) {
    if (!(prob > 0.0 && prob < 1.0))
        throw DomainError("quantile: p must lie in (0, 1), got " + std::to_string(prob));
    return p.alpha() + std::exp(LogMixture(p).solve(prob));
}

std::vector<double> sample(const GelSParams& p, std::size_t n, std::uint64_t seed) {
    const LogMixture mix(p);
    UniformStream uniforms(seed);
    std::vector<double> out(n);
    for (double& v : out) {
        v = p.alpha() + std::exp(mix.solve(uniforms.next()));
        // exp(t) can vanish against a large alpha
        if (!(v > p.alpha())) v = std::nextafter(p.alpha(), std::numeric_limits<double>::infinity());
    }
    return out;
}

}  // namespace gels
