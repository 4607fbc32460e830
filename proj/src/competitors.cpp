#include "gels/competitors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "gels/errors.hpp"
#include "gels/estimation.hpp"
#include "gels/optimize.hpp"

namespace gels {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHalfLogTwoPi = 0.91893853320467274178;

struct Moments {
    double mean = 0.0;
    double var = 0.0;
    double log_mean = 0.0;
    double log_var = 0.0;
};

Moments moments_of(const Dataset& data) {
    Moments m;
    const double n = static_cast<double>(data.size());
    for (double x : data.values()) {
        m.mean += x;
        m.log_mean += std::log(x);
    }
    m.mean /= n;
    m.log_mean /= n;
    for (double x : data.values()) {
        m.var += (x - m.mean) * (x - m.mean);
        const double d = std::log(x) - m.log_mean;
        m.log_var += d * d;
    }
    m.var /= n;
    m.log_var /= n;
    return m;
}

CompetitorFit finish(CompetitorFamily family, std::vector<double> params, double loglik, bool converged,
                     const Dataset& data) {
    CompetitorFit f;
    f.family = family;
    f.params = std::move(params);
    f.loglik = loglik;
    f.n_p = 2;
    const auto ic = information_criteria(f.n_p, loglik, data.size());
    f.aic = ic.aic;
    f.sic = ic.sic;
    f.converged = converged;
    return f;
}

// Both parameters are positive; optimise over their logs.
CompetitorFit fit_positive_pair(CompetitorFamily family, const Dataset& data, double p0, double p1) {
    const Objective objective = [family, &data](const Vector& v) {
        const double ll = competitor_loglik(family, {std::exp(v[0]), std::exp(v[1])}, data);
        return std::isfinite(ll) ? -ll : std::numeric_limits<double>::infinity();
    };
    Vector x0(2);
    x0 << std::log(p0), std::log(p1);
    const auto r = minimize(objective, x0);
    std::vector<double> params{std::exp(r.x_min[0]), std::exp(r.x_min[1])};
    const double ll = competitor_loglik(family, params, data);
    return finish(family, std::move(params), ll, r.converged, data);
}

}  // namespace

std::string to_string(CompetitorFamily family) {
    switch (family) {
        case CompetitorFamily::lognormal2: return "lognormal2";
        case CompetitorFamily::gamma: return "gamma";
        case CompetitorFamily::weibull: return "weibull";
        case CompetitorFamily::gen_exponential: return "gen_exponential";
    }
    return "unknown";
}

double competitor_loglik(CompetitorFamily family, const std::vector<double>& params, const Dataset& data) {
    if (params.size() != 2) throw DomainError("competitor_loglik: expected two parameters");
    const double p = params[0];
    const double q = params[1];
    const double n = static_cast<double>(data.size());
    double acc = 0.0;
    switch (family) {
        case CompetitorFamily::lognormal2: {
            if (!(q > 0.0) || !std::isfinite(p)) return kNegInf;
            for (double x : data.values()) {
                const double d = (std::log(x) - p) / q;
                acc += -0.5 * d * d;
            }
            return acc - data.sum_log() - n * (std::log(q) + kHalfLogTwoPi);
        }
        case CompetitorFamily::gamma: {
            if (!(p > 0.0) || !(q > 0.0)) return kNegInf;
            for (double x : data.values()) acc += x;
            return n * (p * std::log(q) - boost::math::lgamma(p)) + (p - 1.0) * data.sum_log() - q * acc;
        }
        case CompetitorFamily::weibull: {
            if (!(p > 0.0) || !(q > 0.0)) return kNegInf;
            for (double x : data.values()) acc += std::pow(x / q, p);
            return n * (std::log(p) - p * std::log(q)) + (p - 1.0) * data.sum_log() - acc;
        }
        case CompetitorFamily::gen_exponential: {
            if (!(p > 0.0) || !(q > 0.0)) return kNegInf;
            double sum_x = 0.0;
            for (double x : data.values()) {
                sum_x += x;
                acc += std::log(-std::expm1(-q * x));
            }
            return n * (std::log(p) + std::log(q)) - q * sum_x + (p - 1.0) * acc;
        }
    }
    return kNegInf;
}

CompetitorFit fit_lognormal2(const Dataset& data) {
    const Moments m = moments_of(data);
    if (!(m.log_var > 0.0)) throw DataError("log-normal fit: all values are equal");
    std::vector<double> params{m.log_mean, std::sqrt(m.log_var)};
    const double ll = competitor_loglik(CompetitorFamily::lognormal2, params, data);
    return finish(CompetitorFamily::lognormal2, std::move(params), ll, true, data);
}

CompetitorFit fit_gamma(const Dataset& data) {
    const Moments m = moments_of(data);
    if (!(m.var > 0.0)) throw DataError("gamma fit: all values are equal");
    const double shape = m.mean * m.mean / m.var;
    return fit_positive_pair(CompetitorFamily::gamma, data, shape, shape / m.mean);
}

CompetitorFit fit_weibull(const Dataset& data) {
    const Moments m = moments_of(data);
    if (!(m.log_var > 0.0)) throw DataError("Weibull fit: all values are equal");
    // ln X is Gumbel-min with sd pi / (shape sqrt 6).
    const double shape = std::numbers::pi / std::sqrt(6.0 * m.log_var);
    const double scale = std::exp(m.log_mean + 0.5772156649015329 / shape);
    return fit_positive_pair(CompetitorFamily::weibull, data, shape, scale);
}

CompetitorFit fit_gen_exponential(const Dataset& data) {
    const Moments m = moments_of(data);
    if (!(m.var > 0.0)) throw DataError("GE fit: all values are equal");
    const double shape = std::max(0.5, m.mean * m.mean / m.var);
    return fit_positive_pair(CompetitorFamily::gen_exponential, data, shape, shape / m.mean);
}

CompetitorFit fit_competitor(CompetitorFamily family, const Dataset& data) {
    switch (family) {
        case CompetitorFamily::lognormal2: return fit_lognormal2(data);
        case CompetitorFamily::gamma: return fit_gamma(data);
        case CompetitorFamily::weibull: return fit_weibull(data);
        case CompetitorFamily::gen_exponential: return fit_gen_exponential(data);
    }
    throw DomainError("unknown competitor family");
}

std::vector<CompetitorFit> fit_all_competitors(const Dataset& data) {
    std::vector<CompetitorFit> out;
    for (auto family : {CompetitorFamily::lognormal2, CompetitorFamily::gamma, CompetitorFamily::weibull,
                        CompetitorFamily::gen_exponential})
        out.push_back(fit_competitor(family, data));
    return out;
}

}  // namespace gels
