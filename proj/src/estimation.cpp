#include "gels/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gels/errors.hpp"
#include "gels/optimize.hpp"
#include "gels/special_math.hpp"

namespace gels {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHalfLogTwoPi = 0.91893853320467274178;
constexpr double kBarrierMargin = 1e-12;

// Shared by log_likelihood and the optimiser objective so both report
// identical numbers for identical (alpha, gamma).
double loglik_raw(double alpha, int k, double gamma, const Dataset& data) {
    if (!(alpha < data.min())) return kNegInf;
    double sq = 0.0;
    for (double x : data.values()) {
        const double t = std::log(x - alpha);
        sq += t * t;
    }
    const double n = static_cast<double>(data.size());
    const double log_c = -(std::log(gamma) + kHalfLogTwoPi + log_series_sum(alpha, gamma, k).value);
    return n * log_c + k * data.sum_log() - sq / (2.0 * gamma * gamma);
}

std::array<double, 2> score_raw(double alpha, int k, double gamma, const Dataset& data) {
    if (!(alpha < data.min())) throw DomainError("score: alpha must be below every observation");
    double lin = 0.0;
    double sq = 0.0;
    for (double x : data.values()) {
        const double d = x - alpha;
        const double t = std::log(d);
        lin += t / d;
        sq += t * t;
    }
    const double n = static_cast<double>(data.size());
    const auto [ds_dalpha, ds_dgamma] = log_series_sum_partials(alpha, gamma, k);
    const double g2 = gamma * gamma;
    return {-n * ds_dalpha + lin / g2, n * (-1.0 / gamma - ds_dgamma) + sq / (g2 * gamma)};
}

double sample_sd(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
}

double log_gap_sd(const Dataset& data, double alpha) {
    std::vector<double> logs;
    logs.reserve(data.size());
    for (double x : data.values()) logs.push_back(std::log(x - alpha));
    const double sd = sample_sd(logs);
    return sd > 1e-8 ? sd : 1.0;
}

struct Attempt {
    MinimizeResult result;
    double loglik = kNegInf;
};

Attempt run_from(const Dataset& data, int k, const FitStart& start) {
    const double limit = data.min() * (1.0 - kBarrierMargin);
    const Objective objective = [&data, k, limit](const Vector& v) {
        const double a = v[0];
        const double g = v[1];
        if (!(g > 0.0) || !(a * a < limit) || !std::isfinite(g)) return std::numeric_limits<double>::infinity();
        return -loglik_raw(a * a, k, g, data);
    };
    const Gradient gradient = [&data, k, limit](const Vector& v) {
        const double a = v[0];
        const double g = v[1];
        Vector out(2);
        if (!(g > 0.0) || !(a * a < limit)) {
            out.setConstant(std::numeric_limits<double>::quiet_NaN());
            return out;
        }
        const auto s = score_raw(a * a, k, g, data);
        out << -2.0 * a * s[0], -s[1];
        return out;
    };
    Vector x0(2);
    x0 << start.a0, start.gamma0;
    Attempt attempt;
    attempt.result = minimize(objective, x0, MinimizeSettings{}, gradient);
    attempt.loglik = -attempt.result.f_min;
    return attempt;
}

}  // namespace

InformationCriteria information_criteria(int n_p, double loglik, std::size_t n) {
    if (n_p < 1 || n < 1) throw DomainError("information_criteria: need n_p >= 1 and n >= 1");
    return {2.0 * n_p - 2.0 * loglik, n_p * std::log(static_cast<double>(n)) - 2.0 * loglik};
}

double log_likelihood(const GelSParams& params, const Dataset& data) {
    return loglik_raw(params.alpha(), params.k(), params.gamma(), data);
}

std::array<double, 2> score(const GelSParams& params, const Dataset& data) {
    return score_raw(params.alpha(), params.k(), params.gamma(), data);
}

Eigen::Matrix2d observed_information(const ScoreFunction& score_fn, double alpha, double gamma,
                                     double alpha_step, double h_rel) {
    const double ha = std::min(h_rel * std::max(1.0, std::abs(alpha)), alpha_step);
    const double hg = std::min(h_rel * std::max(1.0, std::abs(gamma)), 0.5 * gamma);
    if (!(ha > 0.0)) return Eigen::Matrix2d::Constant(std::numeric_limits<double>::quiet_NaN());
    const auto a_up = score_fn(alpha + ha, gamma);
    const auto a_dn = score_fn(alpha - ha, gamma);
    const auto g_up = score_fn(alpha, gamma + hg);
    const auto g_dn = score_fn(alpha, gamma - hg);
    Eigen::Matrix2d hess;
    hess(0, 0) = (a_up[0] - a_dn[0]) / (2.0 * ha);
    hess(1, 0) = (a_up[1] - a_dn[1]) / (2.0 * ha);
    hess(0, 1) = (g_up[0] - g_dn[0]) / (2.0 * hg);
    hess(1, 1) = (g_up[1] - g_dn[1]) / (2.0 * hg);
    return -0.5 * (hess + hess.transpose());
}

Eigen::Matrix2d observed_information(const GelSParams& params, const Dataset& data) {
    const int k = params.k();
    const ScoreFunction fn = [&data, k](double a, double g) { return score_raw(a, k, g, data); };
    const double room = 0.5 * std::min(params.alpha(), data.min() - params.alpha());
    return observed_information(fn, params.alpha(), params.gamma(), room);
}

Eigen::Matrix2d observed_information_direct(const GelSParams& params, const Dataset& data) {
    const int k = params.k();
    const Objective ll = [&data, k](const Vector& v) { return loglik_raw(v[0], k, v[1], data); };
    Vector at(2);
    at << params.alpha(), params.gamma();
    return -numerical_hessian(ll, at, 1e-4);
}

FitStart default_start(const Dataset& data) {
    const double a0 = std::sqrt(0.5 * data.min());
    return {a0, log_gap_sd(data, a0 * a0)};
}

FitResult fit_given_k(const Dataset& data, int k, std::optional<FitStart> init) {
    if (k < 0) throw DomainError("fit_given_k: k must be >= 0");
    FitResult out;
    out.k = k;
    out.n = data.size();

    // a = 0 is a stationary point of the objective for every data set, so a
    // warm start sitting on it is nudged off before use.
    const double root_min = std::sqrt(data.min());
    std::vector<FitStart> starts;
    if (init) {
        FitStart warm = *init;
        if (std::abs(warm.a0) < 1e-3 * root_min) warm.a0 = 0.1 * root_min;
        if (!(warm.gamma0 > 0.0)) warm.gamma0 = log_gap_sd(data, warm.a0 * warm.a0);
        starts.push_back(warm);
    }
    starts.push_back(default_start(data));
    for (double frac : {0.1, 0.9}) {
        const double a0 = std::sqrt(frac * data.min());
        starts.push_back({a0, log_gap_sd(data, a0 * a0)});
    }

    std::optional<Attempt> best;
    std::string last_error;
    for (const auto& s : starts) {
        try {
            Attempt a = run_from(data, k, s);
            const bool better = !best || (a.result.converged && !best->result.converged) ||
                                (a.result.converged == best->result.converged && a.loglik > best->loglik);
            if (better) best = std::move(a);
        } catch (const Error& e) {
            last_error = e.what();
        }
    }
    if (!best) {
        out.converged = false;
        out.loglik = kNegInf;
        out.message = "every start failed: " + last_error;
        return out;
    }

    const MinimizeResult& r = best->result;
    out.raw_a_hat = std::abs(r.x_min[0]);  // only a^2 enters the model
    out.alpha_hat = out.raw_a_hat * out.raw_a_hat;
    out.gamma_hat = r.x_min[1];
    out.iterations = r.iterations;
    out.converged = r.converged;
    if (!out.converged) out.message = "optimizer stopped before the gradient tolerance was met";

    const GelSParams params(out.alpha_hat, k, out.gamma_hat);
    out.loglik = log_likelihood(params, data);
    const auto crit = information_criteria(kGelSFreeParameters, out.loglik, data.size());
    out.aic = crit.aic;
    out.sic = crit.sic;

    const auto s = score(params, data);
    out.score_norm = std::hypot(2.0 * out.raw_a_hat * s[0], s[1]);

    if (out.alpha_hat > 1e-10 * data.min()) {
        const Eigen::Matrix2d info = observed_information(params, data);
        Eigen::LLT<Eigen::Matrix2d> llt(info);
        if (info.allFinite() && llt.info() == Eigen::Success) {
            out.cov = info.inverse();
            out.se_alpha = std::sqrt(out.cov(0, 0));
            out.se_gamma = std::sqrt(out.cov(1, 1));
            out.se_raw_a = out.se_alpha / (2.0 * std::abs(out.raw_a_hat));
        } else if (out.message.empty()) {
            out.message = "observed information is not positive definite; no standard errors";
        }
    } else if (out.message.empty()) {
        out.message = "alpha estimate on the boundary 0; no standard errors";
    }
    return out;
}

KGridTrace fit(const Dataset& data, const GridOptions& options) {
    if (options.k_min < 0 || options.k_max < options.k_min)
        throw DomainError("fit: need 0 <= k_min <= k_max");
    KGridTrace trace;
    std::optional<FitStart> warm;
    std::vector<std::string> failures;
    std::optional<std::size_t> selected;
    for (int k = options.k_min; k <= options.k_max; ++k) {
        FitResult r;
        try {
            r = fit_given_k(data, k, options.warm_start ? warm : std::nullopt);
        } catch (const Error& e) {
            r.k = k;
            r.n = data.size();
            r.converged = false;
            r.loglik = kNegInf;
            r.message = e.what();
        }
        if (r.converged) {
            warm = FitStart{r.raw_a_hat, r.gamma_hat};
            if (!selected || r.loglik > trace.per_k[*selected].loglik) selected = trace.per_k.size();
        } else {
            failures.push_back("k=" + std::to_string(k) + ": " + r.message);
        }
        trace.per_k.push_back(std::move(r));
    }
    if (!selected) throw FitFailure("no k in the grid produced a converged fit", failures);
    trace.selected = *selected;
    return trace;
}

ConfidenceIntervals confidence_intervals(const FitResult& fit, double level) {
    if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");
    if (!fit.converged) throw UncertaintyUnavailable("fit did not converge");
    if (!fit.has_uncertainty() || !(fit.cov.determinant() > 0.0) || !(fit.cov(0, 0) > 0.0))
        throw UncertaintyUnavailable("covariance is not positive definite");
    const double z = std_normal_quantile(0.5 * (1.0 + level));
    ConfidenceIntervals ci;
    ci.level = level;
    ci.alpha = {fit.alpha_hat - z * fit.se_alpha, fit.alpha_hat + z * fit.se_alpha};
    ci.gamma = {fit.gamma_hat - z * fit.se_gamma, fit.gamma_hat + z * fit.se_gamma};
    return ci;
}

}  // namespace gels
