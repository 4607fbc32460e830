#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gels/distribution.hpp"
#include "gels/estimation.hpp"

namespace gels {

struct StudyConfig {
    GelSParams true_params{1.0, 2, 1.0};
    std::size_t n = 1000;
    int k_min = 0;
    int k_max = 6;
    std::uint64_t seed = 20190101;
    int replications = 1;
    double level = 0.95;
};

/// The two parameter-recovery designs: "I" is (1.0, 2, 1.0) and "II" is
/// (2.0, 4, 0.5), both fitted over k = 0..6.
StudyConfig preset_study(const std::string& name, std::size_t n, std::uint64_t seed);

struct ReplicationReport {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::vector<FitResult> per_k;
    bool failed = false;  // no k converged
    std::string message;
    std::optional<std::size_t> selected;
    std::optional<ConfidenceIntervals> ci;
    bool k_recovered = false;
    bool alpha_covered = false;
    bool gamma_covered = false;

    const FitResult* best() const { return selected ? &per_k[*selected] : nullptr; }
};

struct StudyReport {
    StudyConfig config;
    std::vector<ReplicationReport> replications;

    // Fractions over the replications that produced a selected fit; a
    // replication without usable intervals counts as not covering.
    std::size_t completed = 0;
    double k_recovery_rate = 0.0;
    double alpha_coverage = 0.0;
    double gamma_coverage = 0.0;
    double mean_abs_alpha_error = 0.0;
    double mean_abs_gamma_error = 0.0;
};

/// Replication r draws its sample with derive_seed(seed, r), so the report
/// does not depend on `threads`. threads == 0 uses the hardware concurrency.
StudyReport run_study(const StudyConfig& config, unsigned threads = 1);

}  // namespace gels
