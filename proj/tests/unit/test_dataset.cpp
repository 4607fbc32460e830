#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include "gels/dataset.hpp"
#include "gels/errors.hpp"

using namespace gels;
namespace fs = std::filesystem;

namespace {
fs::path write_temp(const std::string& name, const std::string& body) {
    const fs::path p = fs::temp_directory_path() / ("gels_test_" + name);
    std::ofstream(p) << body;
    return p;
}
std::string data_file(const char* name) { return std::string(GELS_DATA_DIR) + "/" + name; }
}  // namespace

TEST_CASE("bundled datasets load with their declared counts") {
    CHECK(load_dataset(data_file("ball_bearings.txt")).size() == 23);
    CHECK(load_dataset(data_file("leukaemia.txt")).size() == 33);
    CHECK(load_dataset(data_file("strength_10mm.txt")).size() == 63);
    const auto bb = load_dataset(data_file("ball_bearings.txt"));
    CHECK(bb.name() == "ball_bearings");
    CHECK_FALSE(bb.source().empty());
    CHECK(bb.min() == doctest::Approx(17.88));
}

TEST_CASE("one value per line with comments") {
    const auto p = write_temp("plain.txt", "# a comment\n1.5\n\n2.5  # trailing\n3e0\n");
    const auto d = load_dataset(p);
    CHECK(d.size() == 3);
    CHECK(d.values()[2] == 3.0);
}

TEST_CASE("column selection") {
    const auto p = write_temp("cols.csv", "id,time,flag\n1,2.5,0\n2,4.0,1\n");
    const auto d = load_dataset(p, 2);
    CHECK(d.size() == 2);
    CHECK(d.values()[1] == 4.0);
    CHECK_THROWS_AS(load_dataset(p, 5), DataError);
}

TEST_CASE("validation failures") {
    CHECK_THROWS_AS(load_dataset("/nonexistent/file.txt"), DataError);
    CHECK_THROWS_AS(load_dataset(write_temp("neg.txt", "1\n-2\n")), DataError);
    CHECK_THROWS_AS(load_dataset(write_temp("zero.txt", "1\n0\n")), DataError);
    CHECK_THROWS_AS(load_dataset(write_temp("text.txt", "1\nabc\n")), DataError);
    CHECK_THROWS_AS(load_dataset(write_temp("empty.txt", "# nothing\n")), DataError);
    CHECK_THROWS_AS(load_dataset(write_temp("count.txt", "# n: 3\n1\n2\n")), DataError);
    CHECK_THROWS_AS(Dataset({1.0, std::nan("")}), DataError);
    CHECK_THROWS_AS(Dataset({}), DataError);
}
