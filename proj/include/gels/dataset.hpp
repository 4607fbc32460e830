#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gels {

/// A validated positive sample. Construction fails with DataError on an
/// empty list or on any value that is non-finite or <= 0.
class Dataset {
public:
    explicit Dataset(std::vector<double> values, std::string name = "", std::string source = "");

    const std::vector<double>& values() const noexcept { return values_; }
    const std::string& name() const noexcept { return name_; }
    const std::string& source() const noexcept { return source_; }
    std::size_t size() const noexcept { return values_.size(); }
    double min() const noexcept { return min_; }
    double sum_log() const noexcept { return sum_log_; }

private:
    std::vector<double> values_;
    std::string name_;
    std::string source_;
    double min_;
    double sum_log_;
};

/// Reads a plain-text sample: one value per line, or the 1-based `column`
/// of comma/tab/space separated rows. Blank lines and lines starting with
/// '#' are skipped, except for header directives of the form
///
///     # name: <text>
///     # source: <text>
///     # n: <count>
///
/// A declared count must match the number of values read. Throws DataError
/// on unreadable files, unparsable fields, count mismatches and invalid
/// values.
Dataset load_dataset(const std::filesystem::path& path, std::optional<int> column = std::nullopt);

}  // namespace gels
