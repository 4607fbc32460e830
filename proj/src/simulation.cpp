#include "gels/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "gels/errors.hpp"
#include "gels/random.hpp"

namespace gels {

namespace {

ReplicationReport run_replication(const StudyConfig& config, std::size_t index) {
    ReplicationReport rep;
    rep.index = index;
    rep.seed = derive_seed(config.seed, index);
    const auto& truth = config.true_params;
    try {
        Dataset data(sample(truth, config.n, rep.seed), "replication " + std::to_string(index), "simulated");
        GridOptions grid;
        grid.k_min = config.k_min;
        grid.k_max = config.k_max;
        KGridTrace trace = fit(data, grid);
        rep.per_k = std::move(trace.per_k);
        rep.selected = trace.selected;
        const FitResult& best = rep.per_k[trace.selected];
        rep.k_recovered = best.k == truth.k();
        try {
            rep.ci = confidence_intervals(best, config.level);
            rep.alpha_covered = rep.ci->alpha.contains(truth.alpha());
            rep.gamma_covered = rep.ci->gamma.contains(truth.gamma());
        } catch (const UncertaintyUnavailable& e) {
            rep.message = e.what();
        }
    } catch (const FitFailure& e) {
        rep.failed = true;
        rep.message = e.what();
        for (const auto& m : e.per_k()) rep.message += "; " + m;
    } catch (const Error& e) {
        rep.failed = true;
        rep.message = e.what();
    }
    return rep;
}

}  // namespace

StudyConfig preset_study(const std::string& name, std::size_t n, std::uint64_t seed) {
    StudyConfig c;
    if (name == "I" || name == "1") c.true_params = GelSParams(1.0, 2, 1.0);
    else if (name == "II" || name == "2") c.true_params = GelSParams(2.0, 4, 0.5);
    else throw DomainError("unknown study '" + name + "' (expected I or II)");
    c.n = n;
    c.seed = seed;
    c.k_min = 0;
    c.k_max = 6;
    return c;
}

StudyReport run_study(const StudyConfig& config, unsigned threads) {
    if (config.n < 2) throw DomainError("run_study: n must be >= 2");
    if (config.replications < 1) throw DomainError("run_study: replications must be >= 1");
    if (config.k_min < 0 || config.k_max < config.k_min) throw DomainError("run_study: invalid k grid");

    StudyReport report;
    report.config = config;
    const auto reps = static_cast<std::size_t>(config.replications);
    report.replications.resize(reps);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < reps; i = next++) report.replications[i] = run_replication(config, i);
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    for (const auto& r : report.replications) {
        const FitResult* best = r.best();
        if (!best) continue;
        ++report.completed;
        report.k_recovery_rate += r.k_recovered ? 1.0 : 0.0;
        report.mean_abs_alpha_error += std::abs(best->alpha_hat - config.true_params.alpha());
        report.mean_abs_gamma_error += std::abs(best->gamma_hat - config.true_params.gamma());
        report.alpha_coverage += r.alpha_covered ? 1.0 : 0.0;
        report.gamma_coverage += r.gamma_covered ? 1.0 : 0.0;
    }
    if (report.completed > 0) {
        const double c = static_cast<double>(report.completed);
        report.k_recovery_rate /= c;
        report.mean_abs_alpha_error /= c;
        report.mean_abs_gamma_error /= c;
        report.alpha_coverage /= c;
        report.gamma_coverage /= c;
    }
    return report;
}

}  // namespace gels
