#include "gels/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gels/errors.hpp"

namespace gels::report {

namespace {

using nlohmann::json;

// JSON has no NaN/inf; they become null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string fmt(const char* spec, double v) {
    if (std::isnan(v)) return "NA";
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// Shortest representation that round-trips.
std::string exact(double v) {
    if (std::isnan(v)) return "NA";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json interval_json(const Interval& i) { return json{{"lo", num(i.lo)}, {"hi", num(i.hi)}}; }

json ci_json(const ConfidenceIntervals& ci) {
    return json{{"level", ci.level}, {"alpha", interval_json(ci.alpha)}, {"gamma", interval_json(ci.gamma)}};
}

std::string ci_cell(double est, const Interval& i, const char* spec) {
    return fmt(spec, est) + " +/- " + fmt(spec, i.half_width());
}

}  // namespace

Format parse_format(const std::string& name) {
    if (name == "text") return Format::text;
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    throw DomainError("unknown format '" + name + "' (expected text, json or csv)");
}

json params_json(const GelSParams& p) { return json{{"alpha", p.alpha()}, {"k", p.k()}, {"gamma", p.gamma()}}; }

json fit_json(const FitResult& f) {
    json cov = nullptr;
    if (f.cov.allFinite())
        cov = json::array({json::array({f.cov(0, 0), f.cov(0, 1)}), json::array({f.cov(1, 0), f.cov(1, 1)})});
    return json{{"k", f.k},
                {"alpha_hat", num(f.alpha_hat)},
                {"raw_a_hat", num(f.raw_a_hat)},
                {"gamma_hat", num(f.gamma_hat)},
                {"loglik", num(f.loglik)},
                {"neg_loglik", num(-f.loglik)},
                {"se_alpha", num(f.se_alpha)},
                {"se_raw_a", num(f.se_raw_a)},
                {"se_gamma", num(f.se_gamma)},
                {"cov", cov},
                {"aic", num(f.aic)},
                {"sic", num(f.sic)},
                {"converged", f.converged},
                {"iterations", f.iterations},
                {"message", f.message}};
}

json trace_json(const Dataset& data, const KGridTrace& trace, double level) {
    json per_k = json::array();
    for (const auto& f : trace.per_k) per_k.push_back(fit_json(f));
    const FitResult& best = trace.best();
    json ci = nullptr;
    try {
        ci = ci_json(confidence_intervals(best, level));
    } catch (const UncertaintyUnavailable&) {
    }
    return json{{"command", "fit"},
                {"dataset", json{{"name", data.name()}, {"source", data.source()}, {"n", data.size()}}},
                {"n_p", kGelSFreeParameters},
                {"per_k", per_k},
                {"selected_k", best.k},
                {"selected", fit_json(best)},
                {"confidence_intervals", ci}};
}

json summary_json(const GelSParams& p, const DistributionSummary& s) {
    return json{{"command", "stats"},
                {"params", params_json(p)},
                {"mean", num(s.mean)},
                {"variance", num(s.variance)},
                {"skewness", num(s.skewness)},
                {"kurtosis", num(s.kurtosis)},
                {"mode", num(s.mode)},
                {"median", num(s.median)}};
}

json quantiles_json(const GelSParams& p, const std::vector<double>& probs, const std::vector<double>& values) {
    json rows = json::array();
    for (std::size_t i = 0; i < probs.size(); ++i) rows.push_back(json{{"p", probs[i]}, {"q", num(values[i])}});
    return json{{"command", "quantile"}, {"params", params_json(p)}, {"quantiles", rows}};
}

json sample_json(const GelSParams& p, std::uint64_t seed, const std::vector<double>& values) {
    return json{{"command", "sample"}, {"params", params_json(p)}, {"seed", seed}, {"n", values.size()},
                {"values", values}};
}

json study_json(const StudyReport& r) {
    json reps = json::array();
    for (const auto& rep : r.replications) {
        json per_k = json::array();
        for (const auto& f : rep.per_k) per_k.push_back(fit_json(f));
        reps.push_back(json{{"index", rep.index},
                            {"seed", rep.seed},
                            {"failed", rep.failed},
                            {"message", rep.message},
                            {"per_k", per_k},
                            {"selected_k", rep.best() ? json(rep.best()->k) : json(nullptr)},
                            {"confidence_intervals", rep.ci ? ci_json(*rep.ci) : json(nullptr)},
                            {"k_recovered", rep.k_recovered},
                            {"alpha_covered", rep.alpha_covered},
                            {"gamma_covered", rep.gamma_covered}});
    }
    const auto& c = r.config;
    return json{{"command", "simulate"},
                {"config", json{{"params", params_json(c.true_params)},
                                {"n", c.n},
                                {"k_min", c.k_min},
                                {"k_max", c.k_max},
                                {"seed", c.seed},
                                {"replications", c.replications},
                                {"level", c.level}}},
                {"completed", r.completed},
                {"k_recovery_rate", r.k_recovery_rate},
                {"alpha_coverage", r.alpha_coverage},
                {"gamma_coverage", r.gamma_coverage},
                {"mean_abs_alpha_error", r.mean_abs_alpha_error},
                {"mean_abs_gamma_error", r.mean_abs_gamma_error},
                {"replications", reps}};
}

json comparison_json(const ModelComparison& c) {
    json rows = json::array();
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        const auto& r = c.rows[i];
        rows.push_back(json{{"model", r.model},
                            {"origin", r.origin},
                            {"n_p", r.n_p},
                            {"loglik", r.loglik ? num(*r.loglik) : json(nullptr)},
                            {"aic", num(r.aic)},
                            {"sic", num(r.sic)},
                            {"published_n_p", r.published_n_p ? json(*r.published_n_p) : json(nullptr)},
                            {"aic_published_n_p", r.aic_published_n_p ? num(*r.aic_published_n_p) : json(nullptr)},
                            {"sic_published_n_p", r.sic_published_n_p ? num(*r.sic_published_n_p) : json(nullptr)},
                            {"best_aic", i == c.best_aic},
                            {"best_sic", i == c.best_sic}});
    }
    return json{{"command", "compare"},
                {"dataset", c.dataset},
                {"n", c.n},
                {"rows", rows},
                {"best_aic", c.rows[c.best_aic].model},
                {"best_sic", c.rows[c.best_sic].model},
                {"best_aic_published_n_p", c.rows[c.best_aic_published].model},
                {"best_sic_published_n_p", c.rows[c.best_sic_published].model},
                {"notes", c.notes}};
}

std::string trace_text(const Dataset& data, const KGridTrace& trace, double level) {
    std::ostringstream os;
    os << "data: " << (data.name().empty() ? "(unnamed)" : data.name()) << "  n = " << data.size() << "\n";
    if (!data.source().empty()) os << "source: " << data.source() << "\n";
    os << "\n   k     alpha_hat         a_hat     gamma_hat            -l   converged\n";
    for (std::size_t i = 0; i < trace.per_k.size(); ++i) {
        const auto& f = trace.per_k[i];
        char line[160];
        std::snprintf(line, sizeof line, "%s%3d  %12s  %12s  %12s  %12s   %s\n", i == trace.selected ? "*" : " ",
                      f.k, fmt("%.6f", f.alpha_hat).c_str(), fmt("%.6f", f.raw_a_hat).c_str(),
                      fmt("%.6f", f.gamma_hat).c_str(), fmt("%.4f", -f.loglik).c_str(), f.converged ? "yes" : "no");
        os << line;
    }
    const FitResult& b = trace.best();
    os << "\nselected k = " << b.k << "\n";
    os << "  alpha_hat = " << fmt("%.4f", b.alpha_hat) << " (" << fmt("%.4f", b.se_alpha) << ")"
       << "   a_hat = " << fmt("%.4f", b.raw_a_hat) << " (" << fmt("%.4f", b.se_raw_a) << ")\n";
    os << "  gamma_hat = " << fmt("%.4f", b.gamma_hat) << " (" << fmt("%.4f", b.se_gamma) << ")\n";
    os << "  -l = " << fmt("%.4f", -b.loglik) << "   AIC = " << fmt("%.2f", b.aic) << "   SIC = " << fmt("%.2f", b.sic)
       << "   (n_p = " << kGelSFreeParameters << ")\n";
    try {
        const auto ci = confidence_intervals(b, level);
        os << "  " << fmt("%g", 100.0 * level) << "% CI  alpha: " << ci_cell(b.alpha_hat, ci.alpha, "%.3f")
           << "   gamma: " << ci_cell(b.gamma_hat, ci.gamma, "%.3f") << "\n";
    } catch (const UncertaintyUnavailable& e) {
        os << "  confidence intervals unavailable: " << (b.message.empty() ? std::string(e.what()) : b.message) << "\n";
    }
    return os.str();
}

std::string summary_text(const GelSParams& p, const DistributionSummary& s) {
    std::ostringstream os;
    os << "GEL-S(alpha = " << p.alpha() << ", k = " << p.k() << ", gamma = " << p.gamma() << ")\n";
    os << "  mean      " << fmt("%.6f", s.mean) << "\n";
    os << "  variance  " << fmt("%.6f", s.variance) << "\n";
    os << "  skewness  " << fmt("%.6f", s.skewness) << "\n";
    os << "  kurtosis  " << fmt("%.6f", s.kurtosis) << "\n";
    os << "  mode      " << fmt("%.6f", s.mode) << "\n";
    os << "  median    " << fmt("%.6f", s.median) << "\n";
    return os.str();
}

std::string quantiles_text(const GelSParams& p, const std::vector<double>& probs, const std::vector<double>& values) {
    std::ostringstream os;
    os << "GEL-S(alpha = " << p.alpha() << ", k = " << p.k() << ", gamma = " << p.gamma() << ")\n";
    for (std::size_t i = 0; i < probs.size(); ++i)
        os << "  q(" << probs[i] << ") = " << fmt("%.6f", values[i]) << "\n";
    return os.str();
}

std::string study_text(const StudyReport& r) {
    std::ostringstream os;
    const auto& c = r.config;
    os << "study: alpha = " << c.true_params.alpha() << ", k = " << c.true_params.k()
       << ", gamma = " << c.true_params.gamma() << ", n = " << c.n << ", seed = " << c.seed
       << ", replications = " << c.replications << "\n";
    const std::size_t shown = std::min<std::size_t>(r.replications.size(), 3);
    for (std::size_t i = 0; i < shown; ++i) {
        const auto& rep = r.replications[i];
        os << "\nreplication " << rep.index << " (seed " << rep.seed << ")\n";
        if (rep.failed) {
            os << "  failed: " << rep.message << "\n";
            continue;
        }
        os << "   k     alpha_hat     gamma_hat    loglik\n";
        for (std::size_t j = 0; j < rep.per_k.size(); ++j) {
            const auto& f = rep.per_k[j];
            char line[128];
            std::snprintf(line, sizeof line, "%s%3d  %12s  %12s  %10s\n", rep.selected && j == *rep.selected ? "*" : " ",
                          f.k, fmt("%.3f", f.alpha_hat).c_str(), fmt("%.3f", f.gamma_hat).c_str(),
                          fmt("%.0f", f.loglik).c_str());
            os << line;
        }
        if (rep.ci) {
            const FitResult* b = rep.best();
            os << "  " << fmt("%g", 100.0 * rep.ci->level) << "% CI  alpha: " << ci_cell(b->alpha_hat, rep.ci->alpha, "%.3f")
               << "   gamma: " << ci_cell(b->gamma_hat, rep.ci->gamma, "%.3f") << "\n";
        }
        os << "  recovered k: " << (rep.k_recovered ? "yes" : "no") << "   alpha in CI: "
           << (rep.alpha_covered ? "yes" : "no") << "   gamma in CI: " << (rep.gamma_covered ? "yes" : "no") << "\n";
    }
    if (r.replications.size() > shown) os << "\n(" << r.replications.size() - shown << " more replications)\n";
    os << "\ncompleted " << r.completed << "/" << r.replications.size() << "   k recovery " << fmt("%.3f", r.k_recovery_rate)
       << "   alpha coverage " << fmt("%.3f", r.alpha_coverage) << "   gamma coverage "
       << fmt("%.3f", r.gamma_coverage) << "\n";
    os << "mean |alpha_hat - alpha| " << fmt("%.4f", r.mean_abs_alpha_error) << "   mean |gamma_hat - gamma| "
       << fmt("%.4f", r.mean_abs_gamma_error) << "\n";
    return os.str();
}

std::string comparison_text(const ModelComparison& c) {
    std::ostringstream os;
    os << "data: " << c.dataset << "  n = " << c.n << "\n\n";
    os << "  model                      origin      n_p        AIC        SIC   AIC(pub n_p)   SIC(pub n_p)\n";
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        const auto& r = c.rows[i];
        std::string flag;
        if (i == c.best_aic) flag += " [best AIC]";
        if (i == c.best_sic) flag += " [best SIC]";
        char line[200];
        std::snprintf(line, sizeof line, "  %-26s %-10s %4d %10s %10s %14s %14s%s\n", r.model.c_str(), r.origin.c_str(),
                      r.n_p, fmt("%.2f", r.aic).c_str(), fmt("%.2f", r.sic).c_str(),
                      r.aic_published_n_p ? fmt("%.2f", *r.aic_published_n_p).c_str() : "-",
                      r.sic_published_n_p ? fmt("%.2f", *r.sic_published_n_p).c_str() : "-", flag.c_str());
        os << line;
    }
    os << "\nbest with published parameter counts: AIC " << c.rows[c.best_aic_published].model << ", SIC "
       << c.rows[c.best_sic_published].model << "\n";
    for (const auto& n : c.notes) os << "note: " << n << "\n";
    return os.str();
}

std::string trace_csv(const KGridTrace& trace) {
    std::ostringstream os;
    os << "k,alpha_hat,raw_a_hat,gamma_hat,loglik,se_alpha,se_gamma,aic,sic,converged,selected\n";
    for (std::size_t i = 0; i < trace.per_k.size(); ++i) {
        const auto& f = trace.per_k[i];
        os << f.k << ',' << exact(f.alpha_hat) << ',' << exact(f.raw_a_hat) << ',' << exact(f.gamma_hat) << ','
           << exact(f.loglik) << ',' << exact(f.se_alpha) << ',' << exact(f.se_gamma) << ',' << exact(f.aic) << ','
           << exact(f.sic) << ',' << (f.converged ? 1 : 0) << ',' << (i == trace.selected ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string summary_csv(const GelSParams& p, const DistributionSummary& s) {
    std::ostringstream os;
    os << "alpha,k,gamma,mean,variance,skewness,kurtosis,mode,median\n";
    os << exact(p.alpha()) << ',' << p.k() << ',' << exact(p.gamma()) << ',' << exact(s.mean) << ','
       << exact(s.variance) << ',' << exact(s.skewness) << ',' << exact(s.kurtosis) << ',' << exact(s.mode) << ','
       << exact(s.median) << '\n';
    return os.str();
}

std::string quantiles_csv(const std::vector<double>& probs, const std::vector<double>& values) {
    std::ostringstream os;
    os << "p,q\n";
    for (std::size_t i = 0; i < probs.size(); ++i) os << exact(probs[i]) << ',' << exact(values[i]) << '\n';
    return os.str();
}

std::string sample_csv(const std::vector<double>& values) {
    std::ostringstream os;
    os << "value\n";
    for (double v : values) os << exact(v) << '\n';
    return os.str();
}

std::string study_csv(const StudyReport& r) {
    std::ostringstream os;
    os << "replication,seed,k,alpha_hat,gamma_hat,loglik,se_alpha,se_gamma,converged,selected\n";
    for (const auto& rep : r.replications)
        for (std::size_t j = 0; j < rep.per_k.size(); ++j) {
            const auto& f = rep.per_k[j];
            os << rep.index << ',' << rep.seed << ',' << f.k << ',' << exact(f.alpha_hat) << ',' << exact(f.gamma_hat)
               << ',' << exact(f.loglik) << ',' << exact(f.se_alpha) << ',' << exact(f.se_gamma) << ','
               << (f.converged ? 1 : 0) << ',' << (rep.selected && j == *rep.selected ? 1 : 0) << '\n';
        }
    return os.str();
}

std::string comparison_csv(const ModelComparison& c) {
    std::ostringstream os;
    os << "model,origin,n_p,loglik,aic,sic,published_n_p,aic_published_n_p,sic_published_n_p,best_aic,best_sic\n";
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
        const auto& r = c.rows[i];
        os << '"' << r.model << "\"," << r.origin << ',' << r.n_p << ',' << (r.loglik ? exact(*r.loglik) : "") << ','
           << exact(r.aic) << ',' << exact(r.sic) << ',' << (r.published_n_p ? std::to_string(*r.published_n_p) : "")
           << ',' << (r.aic_published_n_p ? exact(*r.aic_published_n_p) : "") << ','
           << (r.sic_published_n_p ? exact(*r.sic_published_n_p) : "") << ',' << (i == c.best_aic ? 1 : 0) << ','
           << (i == c.best_sic ? 1 : 0) << '\n';
    }
    return os.str();
}

std::vector<CurvePoint> density_curve(const GelSParams& p, std::size_t points) {
    if (points < 2) throw DomainError("density curve needs at least 2 points");
    const double hi = quantile(p, 0.999);
    const double lo = p.alpha() + 1e-6 * (hi - p.alpha());
    std::vector<CurvePoint> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
        out[i] = {x, pdf(p, x)};
    }
    return out;
}

std::vector<HistogramBin> histogram(const std::vector<double>& values, std::size_t bins) {
    if (bins == 0 || values.empty()) return {};
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const double lo = *mn;
    const double width = (*mx - *mn) > 0.0 ? (*mx - *mn) / static_cast<double>(bins) : 1.0;
    std::vector<HistogramBin> out(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out[b].lo = lo + width * static_cast<double>(b);
        out[b].hi = lo + width * static_cast<double>(b + 1);
    }
    for (double v : values) {
        auto b = static_cast<std::size_t>((v - lo) / width);
        if (b >= bins) b = bins - 1;
        ++out[b].count;
    }
    for (auto& b : out) b.density = static_cast<double>(b.count) / (static_cast<double>(values.size()) * width);
    return out;
}

json curve_json(const GelSParams& p, const std::vector<CurvePoint>& curve, const std::vector<HistogramBin>& hist) {
    json pts = json::array();
    for (const auto& c : curve) pts.push_back(json{{"x", c.x}, {"density", num(c.density)}});
    json bins = json::array();
    for (const auto& b : hist)
        bins.push_back(json{{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}, {"density", b.density}});
    return json{{"command", "pdf-curve"}, {"params", params_json(p)}, {"curve", pts}, {"histogram", bins}};
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
    std::ostringstream os;
    os << "x,density\n";
    for (const auto& c : curve) os << exact(c.x) << ',' << exact(c.density) << '\n';
    return os.str();
}

std::string histogram_csv(const std::vector<HistogramBin>& hist) {
    std::ostringstream os;
    os << "lo,hi,count,density\n";
    for (const auto& b : hist) os << exact(b.lo) << ',' << exact(b.hi) << ',' << b.count << ',' << exact(b.density) << '\n';
    return os.str();
}

}  // namespace gels::report
