// Acceptance suite: one PASS/FAIL line per criterion.
//
//   gels_acceptance            run everything
//   gels_acceptance --only 7   run a single criterion (exit status reflects it)

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "../unit/oracles.hpp"
#include "gels/competitors.hpp"
#include "gels/dataset.hpp"
#include "gels/distribution.hpp"
#include "gels/estimation.hpp"
#include "gels/reference_table.hpp"
#include "gels/simulation.hpp"
#include "gels/special_math.hpp"

using namespace gels;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects failures with a short description of the first few.
class Checker {
public:
    void check(bool ok, const std::string& what) {
        ++total_;
        if (ok) return;
        ++failed_;
        if (failed_ <= 4) failures_ += (failures_.empty() ? "" : "; ") + what;
    }
    void near(double got, double want, double tol, const std::string& what) {
        check(std::abs(got - want) <= tol, what + " = " + fmt(got) + ", want " + fmt(want) + " +/- " + fmt(tol));
    }
    Outcome outcome(const std::string& summary) const {
        Outcome o;
        o.pass = failed_ == 0;
        o.detail = summary;
        if (failed_ > 0) o.detail += " | " + std::to_string(failed_) + "/" + std::to_string(total_) + " failed: " + failures_;
        return o;
    }
    static std::string fmt(double v, int digits = 6) {
        std::ostringstream s;
        s.precision(digits);
        s << v;
        return s.str();
    }

private:
    int total_ = 0;
    int failed_ = 0;
    std::string failures_;
};

std::string data_file(const char* name) { return std::string(GELS_DATA_DIR) + "/" + name; }

struct TableRow {
    double alpha;
    int k;
    double gamma;
};

constexpr std::array<TableRow, 7> kTableParams{{{0.5, 1, 0.5},
                                                {1.0, 1, 0.5},
                                                {1.5, 1, 0.5},
                                                {0.5, 0, 0.5},
                                                {0.5, 2, 0.5},
                                                {0.5, 1, 0.4},
                                                {0.5, 1, 0.6}}};

// mean, variance, skewness, kurtosis
constexpr std::array<std::array<double, 4>, 7> kTable2{{{2.26, 0.92, 1.78, 9.08},
                                                        {2.70, 0.87, 1.80, 9.23},
                                                        {3.16, 0.84, 1.81, 9.33},
                                                        {1.95, 0.60, 1.75, 8.90},
                                                        {2.67, 1.46, 1.80, 9.21},
                                                        {1.93, 0.37, 1.34, 6.33},
                                                        {2.79, 2.41, 2.31, 13.68}}};

constexpr std::array<double, 7> kTable3{1.69, 2.14, 2.61, 1.50, 1.95, 1.62, 1.80};

// q(0.01), q(0.05), q(0.5), q(0.95), q(0.99)
constexpr std::array<double, 5> kTable4Probs{0.01, 0.05, 0.5, 0.95, 0.99};
constexpr std::array<std::array<double, 5>, 7> kTable4{{{0.97, 1.17, 2.05, 4.08, 5.56},
                                                        {1.45, 1.64, 2.49, 4.47, 5.92},
                                                        {1.94, 2.12, 2.95, 4.89, 6.31},
                                                        {0.90, 1.06, 1.78, 3.42, 4.61},
                                                        {1.06, 1.30, 2.40, 4.96, 6.83},
                                                        {1.01, 1.17, 1.87, 3.07, 3.88},
                                                        {0.95, 1.18, 2.40, 5.72, 8.42}}};

GelSParams row_params(const TableRow& r) { return GelSParams(r.alpha, r.k, r.gamma); }

Outcome ac1() {
    Checker c;
    for (std::size_t i = 0; i < kTableParams.size(); ++i) {
        const auto s = summary(row_params(kTableParams[i]));
        const std::string row = "row " + std::to_string(i + 1) + " ";
        c.near(s.mean, kTable2[i][0], 0.005, row + "mean");
        c.near(s.variance, kTable2[i][1], 0.005, row + "variance");
        c.near(s.skewness, kTable2[i][2], 0.005, row + "skewness");
        c.near(s.kurtosis, kTable2[i][3], 0.005, row + "kurtosis");
    }
    return c.outcome("7 x 4 moment summaries within 0.005");
}

Outcome ac2() {
    Checker c;
    for (std::size_t i = 0; i < kTableParams.size(); ++i) {
        const auto p = row_params(kTableParams[i]);
        const double m = mode(p);
        c.near(m, kTable3[i], 0.005, "row " + std::to_string(i + 1) + " mode");
        if (p.k() == 0) c.check(m == 1.0 + p.alpha(), "k = 0 mode is not exactly 1 + alpha");
        else c.check(m > 1.0 + p.alpha(), "k > 0 mode not above 1 + alpha");
    }
    return c.outcome("7 modes within 0.005; x_m = 1+alpha at k=0, > 1+alpha otherwise");
}

Outcome ac3() {
    Checker c;
    for (std::size_t i = 0; i < kTableParams.size(); ++i) {
        const auto p = row_params(kTableParams[i]);
        for (std::size_t j = 0; j < kTable4Probs.size(); ++j) {
            c.near(quantile(p, kTable4Probs[j]), kTable4[i][j], 0.005,
                   "row " + std::to_string(i + 1) + " q(" + Checker::fmt(kTable4Probs[j]) + ")");
        }
    }
    return c.outcome("7 x 5 quantiles within 0.005");
}

Outcome ac4() {
    Checker c;
    const auto grid = gels::testing::parameter_grid();
    double worst_mass = 0.0;
    double worst_moment = 0.0;
    for (const auto& p : grid) {
        const std::string id = "(" + Checker::fmt(p.alpha()) + "," + std::to_string(p.k()) + "," +
                               Checker::fmt(p.gamma()) + ")";
        const double mass = gels::testing::quad_moment(p, 0);
        worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
        c.check(std::abs(mass - 1.0) <= 1e-8, id + " mass " + Checker::fmt(mass, 12));
        for (int n = 1; n <= 4; ++n) {
            const double q = gels::testing::quad_moment(p, n);
            const double rel = std::abs(moment(p, n) - q) / std::abs(q);
            worst_moment = std::max(worst_moment, rel);
            c.check(rel <= 1e-7, id + " moment " + std::to_string(n) + " rel err " + Checker::fmt(rel));
        }
    }
    return c.outcome(std::to_string(grid.size()) + " triples (k up to 27): max |mass-1| " + Checker::fmt(worst_mass, 3) +
                     ", max moment rel err " + Checker::fmt(worst_moment, 3));
}

Outcome ac5() {
    Checker c;
    double worst = 0.0;
    auto rel = [&](double got, double want) {
        const double r = std::abs(got - want) / std::abs(want);
        worst = std::max(worst, r);
        return r;
    };
    for (int k : {0, 1, 3}) {
        for (double g : {0.3, 0.7, 1.2}) {
            const GelSParams p(0.0, k, g);
            const double mu = g * g * (k + 1);
            for (double prob : {0.001, 0.05, 0.3, 0.5, 0.7, 0.95, 0.999}) {
                const double x = std::exp(mu + g * std_normal_quantile(prob));
                const std::string id = "k=" + std::to_string(k) + " gamma=" + Checker::fmt(g);
                c.check(rel(pdf(p, x), gels::testing::lognormal_pdf(x, mu, g)) <= 1e-10, id + " pdf");
                c.check(rel(cdf(p, x), gels::testing::lognormal_cdf(x, mu, g)) <= 1e-10, id + " cdf");
                c.check(rel(quantile(p, prob), x) <= 1e-10, id + " quantile");
            }
        }
    }
    return c.outcome("9 (k, gamma) pairs x 7 points, max rel err " + Checker::fmt(worst, 3));
}

Outcome ac6() {
    Checker c;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> ua(0.0, 2.0), ug(0.3, 1.5), frac(0.05, 0.9);
    std::uniform_int_distribution<int> uk(0, 8);
    double worst_score = 0.0;
    for (int t = 0; t < 100; ++t) {
        const GelSParams truth(ua(rng), uk(rng), ug(rng));
        const Dataset data(sample(truth, 200, rng()));
        const double alpha = frac(rng) * data.min();
        const double gamma = truth.gamma() * (0.7 + 0.6 * frac(rng));
        const int k = truth.k();
        const auto s = score(GelSParams(alpha, k, gamma), data);
        const double ha = 1e-6 * std::max(1e-3, std::min(alpha, data.min() - alpha));
        const double hg = 1e-6 * gamma;
        const double a_lo = std::max(0.0, alpha - ha);
        const double fa = (log_likelihood(GelSParams(alpha + ha, k, gamma), data) -
                           log_likelihood(GelSParams(a_lo, k, gamma), data)) /
                          (alpha + ha - a_lo);
        const double fg = (log_likelihood(GelSParams(alpha, k, gamma + hg), data) -
                           log_likelihood(GelSParams(alpha, k, gamma - hg), data)) /
                          (2 * hg);
        const double ra = std::abs(s[0] - fa) / std::max(1.0, std::abs(fa));
        const double rg = std::abs(s[1] - fg) / std::max(1.0, std::abs(fg));
        worst_score = std::max({worst_score, ra, rg});
        c.check(ra <= 1e-5 && rg <= 1e-5, "case " + std::to_string(t) + " score rel err " + Checker::fmt(std::max(ra, rg)));
    }

    double worst_hess = 0.0;
    const std::array<GelSParams, 4> truths{GelSParams(1.0, 2, 1.0), GelSParams(2.0, 4, 0.5), GelSParams(0.3, 0, 0.8),
                                           GelSParams(0.5, 6, 0.4)};
    for (std::size_t t = 0; t < truths.size(); ++t) {
        const Dataset data(sample(truths[t], 2000, 1000 + t));
        const auto f = fit_given_k(data, truths[t].k());
        c.check(f.converged, "fit " + std::to_string(t) + " did not converge");
        if (!f.converged) continue;
        const auto a = observed_information(f.params(), data);
        const auto b = observed_information_direct(f.params(), data);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                // relative to the row/column scale: the cross term vanishes at a k = 0 optimum
                const double r = std::abs(a(i, j) - b(i, j)) / std::sqrt(std::abs(b(i, i) * b(j, j)));
                worst_hess = std::max(worst_hess, r);
                c.check(r <= 1e-4, "Hessian " + std::to_string(t) + " element rel err " + Checker::fmt(r));
            }
        }
    }
    return c.outcome("100 score cases, max rel err " + Checker::fmt(worst_score, 3) +
                     "; 4 Hessians (score differences vs loglik differences), max rel err " + Checker::fmt(worst_hess, 3));
}

Outcome ac7(unsigned threads) {
    Checker c;
    const auto one = run_study(preset_study("I", 10000, 20190101), threads);
    const auto two = run_study(preset_study("II", 10000, 20190101), threads);
    const auto* b1 = one.replications.at(0).best();
    const auto* b2 = two.replications.at(0).best();
    c.check(b1 != nullptr && b2 != nullptr, "a study failed to select a model");
    if (!b1 || !b2) return c.outcome("");
    c.check(b1->k == 2, "study I selected k = " + std::to_string(b1->k));
    c.check(b1->alpha_hat >= 0.85 && b1->alpha_hat <= 1.15, "study I alpha_hat " + Checker::fmt(b1->alpha_hat));
    c.check(b1->gamma_hat >= 0.97 && b1->gamma_hat <= 1.03, "study I gamma_hat " + Checker::fmt(b1->gamma_hat));
    c.check(b2->k == 4, "study II selected k = " + std::to_string(b2->k));
    c.check(b2->gamma_hat >= 0.48 && b2->gamma_hat <= 0.52, "study II gamma_hat " + Checker::fmt(b2->gamma_hat));
    return c.outcome("study I: k=" + std::to_string(b1->k) + " alpha " + Checker::fmt(b1->alpha_hat, 4) + " gamma " +
                     Checker::fmt(b1->gamma_hat, 4) + " loglik " + Checker::fmt(b1->loglik, 6) + "; study II: k=" +
                     std::to_string(b2->k) + " alpha " + Checker::fmt(b2->alpha_hat, 4) + " gamma " +
                     Checker::fmt(b2->gamma_hat, 4));
}

Outcome ac8(unsigned threads) {
    Checker c;
    auto cfg = preset_study("I", 2000, 8080);
    cfg.replications = 200;
    cfg.k_min = cfg.k_max = 2;
    const auto r = run_study(cfg, threads);
    c.check(r.completed == 200, std::to_string(200 - r.completed) + " replications failed");
    c.check(r.gamma_coverage >= 0.90 && r.gamma_coverage <= 1.00, "gamma coverage " + Checker::fmt(r.gamma_coverage));
    return c.outcome("200 replications, n = 2000, k fixed at 2: gamma coverage " + Checker::fmt(r.gamma_coverage, 4) +
                     ", alpha coverage " + Checker::fmt(r.alpha_coverage, 4));
}

struct Application {
    Dataset data;
    KGridTrace trace;
};

Application fit_application(const char* file) {
    auto data = load_dataset(data_file(file));
    auto trace = fit(data, {0, 30, true});
    return {std::move(data), std::move(trace)};
}

std::string fit_line(const FitResult& f) {
    return "k=" + std::to_string(f.k) + " -l " + Checker::fmt(-f.loglik, 7) + " AIC " + Checker::fmt(f.aic, 7) +
           " SIC " + Checker::fmt(f.sic, 7) + " gamma " + Checker::fmt(f.gamma_hat, 5) + " a " +
           Checker::fmt(f.raw_a_hat, 5);
}

Outcome ac9() {
    Checker c;
    const auto app = fit_application("ball_bearings.txt");
    const auto& best = app.trace.best();
    c.check(best.k == 27, "selected k = " + std::to_string(best.k));
    c.near(-best.loglik, 112.99, 0.05, "-l");
    c.near(best.aic, 229.98, 0.1, "AIC");
    c.near(best.sic, 232.25, 0.1, "SIC");

    const auto tables = load_reference_tables(data_file("reference_criteria.json"));
    const auto cmp = compare_models(app.data, best, fit_all_competitors(app.data), &tables.at("ball_bearings"));
    // competitor criteria are judged with the parameter counts printed next to them
    const auto& gels_row = cmp.rows.front();
    std::string margins;
    for (std::size_t i = 1; i < cmp.rows.size(); ++i) {
        const auto& row = cmp.rows[i];
        const double aic = row.aic_published_n_p.value_or(row.aic);
        const double sic = row.sic_published_n_p.value_or(row.sic);
        c.check(gels_row.aic < aic, "AIC not below " + row.model + " (" + Checker::fmt(aic) + ")");
        c.check(gels_row.sic < sic, "SIC not below " + row.model + " (" + Checker::fmt(sic) + ")");
        if (row.origin == "fitted" && row.aic < gels_row.aic)
            margins += " " + row.model + " AIC " + Checker::fmt(row.aic, 6) + " with n_p=2;";
    }
    std::string detail = fit_line(best) + "; beats " + std::to_string(cmp.rows.size() - 1) +
                         " competitor rows under their printed n_p";
    if (!margins.empty()) detail += " (note:" + margins + ")";
    return c.outcome(detail);
}

Outcome ac10() {
    Checker c;
    const auto app = fit_application("leukaemia.txt");
    const auto& best = app.trace.best();
    c.check(app.data.size() == 33, "dataset size " + std::to_string(app.data.size()));
    c.check(best.k == 0, "selected k = " + std::to_string(best.k));
    c.near(-best.loglik, 153.24, 0.05, "-l");
    c.near(best.gamma_hat, 1.650, 0.01, "gamma_hat");
    c.near(best.aic, 310.49, 0.1, "AIC");
    c.near(best.sic, 313.48, 0.1, "SIC");
    return c.outcome(fit_line(best));
}

Outcome ac11() {
    Checker c;
    const auto app = fit_application("strength_10mm.txt");
    const auto& best = app.trace.best();
    c.check(app.data.size() == 63, "dataset size " + std::to_string(app.data.size()));
    c.check(best.k == 17, "selected k = " + std::to_string(best.k));
    c.near(-best.loglik, 56.20, 0.05, "-l");
    c.near(best.aic, 116.41, 0.1, "AIC");
    c.near(best.sic, 120.70, 0.1, "SIC");
    std::string detail = "selected " + fit_line(best);
    for (const auto& f : app.trace.per_k) {
        if (f.k == 17) detail += "; at k=17: " + fit_line(f);
    }
    return c.outcome(detail);
}

Outcome ac12() {
    Checker c;
    const std::array<GelSParams, 3> triples{GelSParams(1.0, 2, 1.0), GelSParams(2.0, 4, 0.5), GelSParams(0.5, 27, 0.4)};
    const std::size_t n = 10000;
    const double critical = 1.63 / std::sqrt(static_cast<double>(n));
    std::string stats;
    for (std::size_t t = 0; t < triples.size(); ++t) {
        const auto& p = triples[t];
        const auto xs = sample(p, n, 12 + t);
        const double d = gels::testing::ks_statistic(xs, [&](double x) { return cdf(p, x); });
        stats += (stats.empty() ? "" : ", ") + Checker::fmt(d, 3);
        c.check(d < critical, "triple " + std::to_string(t) + " KS " + Checker::fmt(d));
        c.check(std::all_of(xs.begin(), xs.end(), [&](double x) { return x > p.alpha(); }), "sample below alpha");
        c.check(xs == sample(p, n, 12 + t), "same seed gave different samples");
    }
    return c.outcome("KS statistics " + stats + " (critical " + Checker::fmt(critical, 4) + "); seeds reproducible");
}

struct Criterion {
    int id;
    const char* title;
    double limit_seconds;  // 0 = no runtime limit
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    unsigned threads = 0;
    CLI::App app{"GEL-S acceptance suite"};
    app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 12));
    app.add_option("--threads", threads, "worker threads for the simulation criteria (0 = all cores)");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "moments of the seven reference parameter sets", 1.0, ac1},
        {2, "modes of the seven reference parameter sets", 0.0, ac2},
        {3, "quantiles of the seven reference parameter sets", 0.0, ac3},
        {4, "normalization and moments against quadrature", 30.0, ac4},
        {5, "log-normal reduction at alpha = 0", 0.0, ac5},
        {6, "score and observed-information checks", 0.0, ac6},
        {7, "simulation recovery, studies I and II at n = 10000", 120.0, [&] { return ac7(threads); }},
        {8, "gamma interval coverage over 200 replications", 600.0, [&] { return ac8(threads); }},
        {9, "ball bearings: k = 27, criteria, comparison", 0.0, ac9},
        {10, "leukaemia: k = 0 and criteria", 0.0, ac10},
        {11, "strength, 10 mm: k = 17 and criteria", 0.0, ac11},
        {12, "sampling: KS and reproducibility", 0.0, ac12},
    };

    int failures = 0;
    for (const auto& cr : criteria) {
        if (only != 0 && cr.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = cr.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (cr.limit_seconds > 0 && secs > cr.limit_seconds) {
            o.pass = false;
            o.detail += " | runtime " + Checker::fmt(secs, 3) + " s exceeds " + Checker::fmt(cr.limit_seconds) + " s";
        }
        if (!o.pass) ++failures;
        std::printf("AC%-2d %s  %-52s [%7.2f s]  %s\n", cr.id, o.pass ? "PASS" : "FAIL", cr.title, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
