#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gels/competitors.hpp"
#include "gels/estimation.hpp"

namespace gels {

/// A published AIC/SIC row for a model that is not refitted here.
struct ReferenceRow {
    std::string model;
    int n_p = 0;
    double aic = 0.0;
    double sic = 0.0;

    /// Log-likelihood implied by the printed AIC: (2 n_p - aic) / 2.
    double implied_loglik() const { return 0.5 * (2.0 * n_p - aic); }
};

struct ReferenceTable {
    std::string dataset;
    std::size_t n = 0;
    std::string note;
    std::vector<ReferenceRow> rows;

    const ReferenceRow* find(const std::string& model) const;
};

/// Parses data/reference_criteria.json (schema in docs/schema). Throws
/// DataError on I/O or format problems.
std::map<std::string, ReferenceTable> load_reference_tables(const std::filesystem::path& path);

/// Names a fitted family goes by in the published tables.
std::vector<std::string> reference_aliases(CompetitorFamily family);

struct ComparisonRow {
    std::string model;
    std::string origin;  // "fitted" or "reference"
    int n_p = 0;
    std::optional<double> loglik;
    double aic = 0.0;
    double sic = 0.0;
    /// For fitted competitors with a published row: the parameter count that
    /// row uses, and AIC/SIC recomputed from our log-likelihood with it.
    std::optional<int> published_n_p;
    std::optional<double> aic_published_n_p;
    std::optional<double> sic_published_n_p;
};

/// GEL-S, the fitted competitors and any reference rows, with the best rows
/// under each criterion. "published" variants rank fitted competitors by
/// their AIC/SIC recomputed with the published parameter count.
struct ModelComparison {
    std::string dataset;
    std::size_t n = 0;
    std::vector<ComparisonRow> rows;
    std::size_t best_aic = 0;
    std::size_t best_sic = 0;
    std::size_t best_aic_published = 0;
    std::size_t best_sic_published = 0;
    std::vector<std::string> notes;
};

/// Reference rows for GEL-S and for families that were refitted are not
/// duplicated, except the published log-normal row which is kept (as
/// "Log-normal (published)") because its source value differs from the
/// closed-form refit.
ModelComparison compare_models(const Dataset& data, const FitResult& gels_fit,
                               const std::vector<CompetitorFit>& competitors,
                               const ReferenceTable* reference = nullptr);

}  // namespace gels
