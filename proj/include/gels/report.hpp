#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gels/distribution.hpp"
#include "gels/estimation.hpp"
#include "gels/reference_table.hpp"
#include "gels/simulation.hpp"

// Text, JSON and CSV renderings of results. JSON layouts are described by
// the schemas under docs/schema; CSV outputs always start with a fixed
// header row.
namespace gels::report {

enum class Format { text, json, csv };

Format parse_format(const std::string& name);

nlohmann::json params_json(const GelSParams& p);
nlohmann::json fit_json(const FitResult& f);
nlohmann::json trace_json(const Dataset& data, const KGridTrace& trace, double level);
nlohmann::json summary_json(const GelSParams& p, const DistributionSummary& s);
nlohmann::json quantiles_json(const GelSParams& p, const std::vector<double>& probs,
                              const std::vector<double>& values);
nlohmann::json sample_json(const GelSParams& p, std::uint64_t seed, const std::vector<double>& values);
nlohmann::json study_json(const StudyReport& r);
nlohmann::json comparison_json(const ModelComparison& c);

std::string trace_text(const Dataset& data, const KGridTrace& trace, double level);
std::string summary_text(const GelSParams& p, const DistributionSummary& s);
std::string quantiles_text(const GelSParams& p, const std::vector<double>& probs, const std::vector<double>& values);
std::string study_text(const StudyReport& r);
std::string comparison_text(const ModelComparison& c);

std::string trace_csv(const KGridTrace& trace);
std::string summary_csv(const GelSParams& p, const DistributionSummary& s);
std::string quantiles_csv(const std::vector<double>& probs, const std::vector<double>& values);
std::string sample_csv(const std::vector<double>& values);
std::string study_csv(const StudyReport& r);
std::string comparison_csv(const ModelComparison& c);

/// Density curve over [alpha + eps, q(0.999)] plus optional histogram counts.
struct CurvePoint {
    double x = 0.0;
    double density = 0.0;
};

struct HistogramBin {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
    double density = 0.0;  // count / (n * width)
};

std::vector<CurvePoint> density_curve(const GelSParams& p, std::size_t points);
/// Equal-width bins spanning [min, max] of the data.
std::vector<HistogramBin> histogram(const std::vector<double>& values, std::size_t bins);

nlohmann::json curve_json(const GelSParams& p, const std::vector<CurvePoint>& curve,
                          const std::vector<HistogramBin>& hist);
std::string curve_csv(const std::vector<CurvePoint>& curve);
std::string histogram_csv(const std::vector<HistogramBin>& hist);

}  // namespace gels::report
