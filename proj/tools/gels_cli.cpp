// Command-line front end for the GEL-S library.
//
// Exit codes: 0 success, 2 usage, 3 data validation, 4 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gels/competitors.hpp"
#include "gels/dataset.hpp"
#include "gels/distribution.hpp"
#include "gels/errors.hpp"
#include "gels/estimation.hpp"
#include "gels/reference_table.hpp"
#include "gels/report.hpp"
#include "gels/simulation.hpp"

#ifndef GELS_DATA_DIR
#define GELS_DATA_DIR "data"
#endif

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct Options {
    std::string format = "text";
    std::string output;

    std::string input;
    std::optional<int> column;
    int kmin = 0;
    int kmax = 30;
    double level = 0.95;

    double alpha = 0.0;
    int k = 0;
    double gamma = 1.0;

    std::vector<double> probs{0.01, 0.05, 0.5, 0.95, 0.99};
    std::size_t n = 1000;
    std::uint64_t seed = 1;

    std::string study;
    int replications = 1;
    unsigned threads = 1;

    std::string reference;
    std::string dataset_key;

    std::size_t points = 200;
    std::size_t bins = 0;
};

unsigned default_threads() {
    if (const char* env = std::getenv("GELS_THREADS")) {
        try {
            return static_cast<unsigned>(std::stoul(env));
        } catch (...) {
        }
    }
    return 1;
}

std::string default_reference() {
    if (const char* env = std::getenv("GELS_REFERENCE")) return env;
    return std::string(GELS_DATA_DIR) + "/reference_criteria.json";
}

void emit(const Options& o, const std::string& body) {
    if (o.output.empty()) {
        std::cout << body;
        if (!body.empty() && body.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw gels::DataError("cannot write " + o.output);
    out << body;
    if (!body.empty() && body.back() != '\n') out << '\n';
}

gels::GelSParams params_of(const Options& o) { return gels::GelSParams(o.alpha, o.k, o.gamma); }

void add_params(CLI::App* cmd, Options& o, bool required = true) {
    auto* a = cmd->add_option("--alpha", o.alpha, "location threshold, >= 0");
    auto* k = cmd->add_option("--k", o.k, "polynomial degree, integer >= 0");
    auto* g = cmd->add_option("--gamma", o.gamma, "log-squared scale, > 0");
    if (required) {
        a->required();
        k->required();
        g->required();
    }
}

void add_io(CLI::App* cmd, Options& o) {
    cmd->add_option("--format", o.format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("-o,--output", o.output, "write to a file instead of stdout");
}

void add_input(CLI::App* cmd, Options& o, bool required) {
    auto* in = cmd->add_option("-i,--input", o.input, "data file: one value per line, '#' comments");
    if (required) in->required();
    cmd->add_option("--column", o.column, "1-based column of a delimited file")->check(CLI::PositiveNumber);
}

void add_grid(CLI::App* cmd, Options& o) {
    cmd->add_option("--kmin", o.kmin, "smallest k on the grid")->check(CLI::NonNegativeNumber);
    cmd->add_option("--kmax", o.kmax, "largest k on the grid")->check(CLI::NonNegativeNumber);
}

gels::Dataset read_input(const Options& o) {
    gels::Dataset d = gels::load_dataset(o.input, o.column);
    if (d.size() < 2) throw gels::DataError(o.input + ": at least two values are required");
    return d;
}

void check_grid(const Options& o) {
    if (o.kmax < o.kmin) throw gels::DomainError("--kmax must be >= --kmin");
}

void check_level(double level) {
    if (!(level > 0.0 && level < 1.0)) throw gels::DomainError("--level must lie in (0, 1)");
}

void run_fit(const Options& o) {
    check_grid(o);
    check_level(o.level);
    const auto data = read_input(o);
    const auto trace = gels::fit(data, {o.kmin, o.kmax, true});
    switch (gels::report::parse_format(o.format)) {
        case gels::report::Format::text: emit(o, gels::report::trace_text(data, trace, o.level)); break;
        case gels::report::Format::json: emit(o, gels::report::trace_json(data, trace, o.level).dump(2)); break;
        case gels::report::Format::csv: emit(o, gels::report::trace_csv(trace)); break;
    }
}

void run_stats(const Options& o) {
    const auto p = params_of(o);
    const auto s = gels::summary(p);
    switch (gels::report::parse_format(o.format)) {
        case gels::report::Format::text: emit(o, gels::report::summary_text(p, s)); break;
        case gels::report::Format::json: emit(o, gels::report::summary_json(p, s).dump(2)); break;
        case gels::report::Format::csv: emit(o, gels::report::summary_csv(p, s)); break;
    }
}

void run_quantile(const Options& o) {
    const auto p = params_of(o);
    std::vector<double> values;
    for (double prob : o.probs) values.push_back(gels::quantile(p, prob));
    switch (gels::report::parse_format(o.format)) {
        case gels::report::Format::text: emit(o, gels::report::quantiles_text(p, o.probs, values)); break;
        case gels::report::Format::json: emit(o, gels::report::quantiles_json(p, o.probs, values).dump(2)); break;
        case gels::report::Format::csv: emit(o, gels::report::quantiles_csv(o.probs, values)); break;
    }
}

void run_sample(const Options& o) {
    const auto p = params_of(o);
    if (o.n < 1) throw gels::DomainError("--n must be >= 1");
    const auto values = gels::sample(p, o.n, o.seed);
    switch (gels::report::parse_format(o.format)) {
        case gels::report::Format::json: emit(o, gels::report::sample_json(p, o.seed, values).dump(2)); break;
        case gels::report::Format::csv: emit(o, gels::report::sample_csv(values)); break;
        case gels::report::Format::text: {
            std::string body;
            for (double v : values) {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.17g\n", v);
                body += buf;
            }
            emit(o, body);
            break;
        }
    }
}

void run_simulate(const Options& o, bool params_given) {
    check_level(o.level);
    gels::StudyConfig config;
    if (!o.study.empty()) {
        config = gels::preset_study(o.study, o.n, o.seed);
    } else if (params_given) {
        config.true_params = params_of(o);
        config.n = o.n;
        config.seed = o.seed;
        config.k_min = 0;
        config.k_max = 6;
    } else {
        throw gels::DomainError("simulate needs --study or --alpha/--k/--gamma");
    }
    config.replications = o.replications;
    config.level = o.level;
    if (o.kmin != 0 || o.kmax != 30) {
        check_grid(o);
        config.k_min = o.kmin;
        config.k_max = o.kmax;
    }
    const auto r = gels::run_study(config, o.threads);
    switch (gels::report::parse_format(o.format)) {
        case gels::report::Format::text: emit(o, gels::report::study_text(r)); break;
        case gels::report::Format::json: emit(o, gels::report::study_json(r).dump(2)); break;
        case gels::report::Format::csv: emit(o, gels::report::study_csv(r)); break;
    }
}

void run_compare(const Options& o) {
    check_grid(o);
    const auto data = read_input(o);
    const auto trace = gels::fit(data, {o.kmin, o.kmax, true});
    const auto competitors = gels::fit_all_competitors(data);

    std::optional<gels::ReferenceTable> reference;
    const std::string ref_path = o.reference.empty() ? default_reference() : o.reference;
    const std::string key = o.dataset_key.empty() ? data.name() : o.dataset_key;
    if (ref_path != "none") {
        try {
            const auto tables = gels::load_reference_tables(ref_path);
            if (auto it = tables.find(key); it != tables.end()) reference = it->second;
        } catch (const gels::DataError& e) {
            if (!o.reference.empty()) throw;  // only an explicitly requested table is fatal
        }
    }
    const auto cmp = gels::compare_models(data, trace.best(), competitors, reference ? &*reference : nullptr);
    switch (gels::report::parse_format(o.format)) {
        case gels::report::Format::text: emit(o, gels::report::comparison_text(cmp)); break;
        case gels::report::Format::json: emit(o, gels::report::comparison_json(cmp).dump(2)); break;
        case gels::report::Format::csv: emit(o, gels::report::comparison_csv(cmp)); break;
    }
}

void run_curve(const Options& o, bool params_given) {
    std::vector<double> values;
    std::optional<gels::GelSParams> p;
    if (!o.input.empty()) {
        check_grid(o);
        const auto data = read_input(o);
        values = data.values();
        if (!params_given) p = gels::fit(data, {o.kmin, o.kmax, true}).best().params();
    }
    if (params_given) p = params_of(o);
    if (!p) throw gels::DomainError("pdf-curve needs --alpha/--k/--gamma or --input");
    const auto curve = gels::report::density_curve(*p, o.points);
    const auto hist = gels::report::histogram(values, values.empty() ? 0 : o.bins);
    switch (gels::report::parse_format(o.format)) {
        case gels::report::Format::json: emit(o, gels::report::curve_json(*p, curve, hist).dump(2)); break;
        case gels::report::Format::text:
        case gels::report::Format::csv: {
            std::string body = gels::report::curve_csv(curve);
            if (!hist.empty()) body += "\n" + gels::report::histogram_csv(hist);
            emit(o, body);
            break;
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    o.threads = default_threads();
    CLI::App app{"GEL-S distribution: statistics, sampling, maximum-likelihood fitting and model comparison"};
    app.require_subcommand(1, 1);

    auto* fit = app.add_subcommand("fit", "fit GEL-S over a k grid and report estimates, CIs, AIC/SIC");
    add_input(fit, o, true);
    add_grid(fit, o);
    fit->add_option("--level", o.level, "confidence level for Wald intervals");
    add_io(fit, o);

    auto* stats = app.add_subcommand("stats", "mean, variance, skewness, kurtosis, mode and median");
    add_params(stats, o);
    add_io(stats, o);

    auto* quant = app.add_subcommand("quantile", "quantiles for a list of probabilities");
    add_params(quant, o);
    quant->add_option("--p", o.probs, "comma-separated probabilities in (0,1)")->delimiter(',');
    add_io(quant, o);

    auto* samp = app.add_subcommand("sample", "inverse-transform random sample");
    add_params(samp, o);
    samp->add_option("--n", o.n, "sample size")->check(CLI::PositiveNumber);
    samp->add_option("--seed", o.seed, "64-bit seed");
    add_io(samp, o);

    auto* sim = app.add_subcommand("simulate", "Monte Carlo parameter-recovery study");
    sim->add_option("--study", o.study, "preset design: I or II")->check(CLI::IsMember({"I", "II", "1", "2"}));
    add_params(sim, o, false);
    sim->add_option("--n", o.n, "sample size per replication")->check(CLI::Range(2ul, 100000000ul));
    sim->add_option("--seed", o.seed, "64-bit seed");
    sim->add_option("--replications", o.replications, "number of replications")->check(CLI::PositiveNumber);
    sim->add_option("--level", o.level, "confidence level");
    sim->add_option("--threads", o.threads, "worker threads (0 = all cores; default from GELS_THREADS)");
    add_grid(sim, o);
    add_io(sim, o);

    auto* cmp = app.add_subcommand("compare", "AIC/SIC table: GEL-S against log-normal, gamma, Weibull and GE");
    add_input(cmp, o, true);
    add_grid(cmp, o);
    cmp->add_option("--reference", o.reference, "published criteria JSON, or 'none'");
    cmp->add_option("--dataset-key", o.dataset_key, "key in the reference file (default: the data set name)");
    add_io(cmp, o);

    auto* curve = app.add_subcommand("pdf-curve", "density curve (and histogram) for external plotting");
    add_params(curve, o, false);
    add_input(curve, o, false);
    add_grid(curve, o);
    curve->add_option("--points", o.points, "curve points")->check(CLI::Range(2ul, 1000000ul));
    curve->add_option("--bins", o.bins, "histogram bins for --input data");
    add_io(curve, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    auto given = [](CLI::App* cmd) {
        return cmd->count("--alpha") + cmd->count("--k") + cmd->count("--gamma");
    };

    try {
        if (*fit) run_fit(o);
        else if (*stats) run_stats(o);
        else if (*quant) run_quantile(o);
        else if (*samp) run_sample(o);
        else if (*sim) {
            const auto g = given(sim);
            if (g != 0 && g != 3) throw gels::DomainError("give all of --alpha, --k, --gamma or none");
            run_simulate(o, g == 3);
        } else if (*cmp) run_compare(o);
        else if (*curve) {
            const auto g = given(curve);
            if (g != 0 && g != 3) throw gels::DomainError("give all of --alpha, --k, --gamma or none");
            run_curve(o, g == 3);
        }
    } catch (const gels::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const gels::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const gels::FitFailure& e) {
        std::cerr << "fit failed: " << e.what() << "\n";
        for (const auto& m : e.per_k()) std::cerr << "  " << m << "\n";
        return kExitNumerical;
    } catch (const gels::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
