#include "gels/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "gels/errors.hpp"

namespace gels {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',' || c == '\t' || c == ' ' || c == ';') {
            if (!current.empty()) fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    if (!current.empty()) fields.push_back(current);
    return fields;
}

double parse_number(const std::string& field, const std::string& where) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    if (!field.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) throw DataError(where + ": cannot parse '" + field + "' as a number");
    return value;
}

}  // namespace

Dataset::Dataset(std::vector<double> values, std::string name, std::string source)
    : values_(std::move(values)), name_(std::move(name)), source_(std::move(source)) {
    if (values_.empty()) throw DataError("dataset is empty");
    min_ = std::numeric_limits<double>::infinity();
    sum_log_ = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (!std::isfinite(v)) throw DataError("value #" + std::to_string(i + 1) + " is not finite");
        if (!(v > 0.0)) throw DataError("value #" + std::to_string(i + 1) + " is not positive");
        min_ = std::min(min_, v);
        sum_log_ += std::log(v);
    }
}

Dataset load_dataset(const std::filesystem::path& path, std::optional<int> column) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    if (column && *column < 1) throw DataError("column index is 1-based");

    std::vector<double> values;
    std::string name = path.stem().string();
    std::string source;
    std::optional<long> declared;
    std::string line;
    int line_no = 0;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '#') {
            const std::string body = trim(std::string_view(t).substr(1));
            const auto colon = body.find(':');
            if (colon == std::string::npos) continue;
            const std::string key = trim(std::string_view(body).substr(0, colon));
            const std::string value = trim(std::string_view(body).substr(colon + 1));
            if (key == "name") name = value;
            else if (key == "source") source = source.empty() ? value : source + " " + value;
            else if (key == "n") declared = static_cast<long>(parse_number(value, path.string() + ": header n"));
            continue;
        }
        const auto fields = split_fields(trim(std::string_view(t).substr(0, t.find('#'))));
        const std::string where = path.string() + ":" + std::to_string(line_no);
        const std::size_t idx = column ? static_cast<std::size_t>(*column - 1) : 0;
        if (!column && fields.size() != 1)
            throw DataError(where + ": expected one value per line (use a column selector for tables)");
        if (idx >= fields.size()) throw DataError(where + ": no column " + std::to_string(idx + 1));
        if (column && values.empty() && !header_skipped) {
            // a delimited table may open with a header row
            try {
                values.push_back(parse_number(fields[idx], where));
            } catch (const DataError&) {
                header_skipped = true;
            }
            continue;
        }
        values.push_back(parse_number(fields[idx], where));
    }
    if (declared && *declared != static_cast<long>(values.size()))
        throw DataError(path.string() + ": header declares n = " + std::to_string(*declared) + " but " +
                        std::to_string(values.size()) + " values were read");
    return Dataset(std::move(values), std::move(name), std::move(source));
}

}  // namespace gels
