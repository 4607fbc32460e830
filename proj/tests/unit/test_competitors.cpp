#include <cmath>
#include <random>
#include <string>

#include <doctest.h>

#include "gels/competitors.hpp"
#include "gels/dataset.hpp"
#include "gels/errors.hpp"
#include "gels/estimation.hpp"
#include "gels/reference_table.hpp"

using namespace gels;

namespace {
std::string data_file(const char* name) { return std::string(GELS_DATA_DIR) + "/" + name; }
}  // namespace

TEST_CASE("log-normal closed form") {
    CHECK_THROWS_AS(fit_lognormal2(Dataset({std::exp(1.0), std::exp(1.0), std::exp(1.0)})), DataError);

    const auto bb = load_dataset(data_file("ball_bearings.txt"));
    const auto r = fit_lognormal2(bb);
    CHECK(std::abs(r.aic - 230.20) < 0.1);
    CHECK(std::abs(r.sic - 232.47) < 0.1);

    std::mt19937_64 rng(8);
    std::lognormal_distribution<double> ln(0.4, 0.9);
    std::vector<double> xs(100000);
    for (double& x : xs) x = ln(rng);
    const auto big = fit_lognormal2(Dataset(xs));
    const double se_mu = 0.9 / std::sqrt(1e5);
    CHECK(std::abs(big.params[0] - 0.4) < 3 * se_mu);
    CHECK(std::abs(big.params[1] - 0.9) < 3 * 0.9 / std::sqrt(2e5));
}

TEST_CASE("log-normal on GEL-S samples at alpha = 0") {
    const GelSParams p(0.0, 3, 0.6);
    const auto r = fit_lognormal2(Dataset(sample(p, 50000, 21)));
    CHECK(std::abs(r.params[0] - 0.36 * 4) < 0.02);
    CHECK(std::abs(r.params[1] - 0.6) < 0.01);
}

TEST_CASE("fitted competitors are local maxima") {
    const auto bb = load_dataset(data_file("ball_bearings.txt"));
    std::mt19937_64 rng(31);
    std::normal_distribution<double> jitter(0.0, 0.02);
    for (auto fam : {CompetitorFamily::lognormal2, CompetitorFamily::gamma, CompetitorFamily::weibull,
                     CompetitorFamily::gen_exponential}) {
        const auto r = fit_competitor(fam, bb);
        CAPTURE(to_string(fam));
        REQUIRE(r.converged);
        CHECK(r.loglik == doctest::Approx(competitor_loglik(fam, r.params, bb)).epsilon(1e-12));
        for (int t = 0; t < 100; ++t) {
            auto q = r.params;
            for (double& v : q) v *= std::exp(jitter(rng));
            CHECK(competitor_loglik(fam, q, bb) <= r.loglik + 1e-9);
        }
        CHECK(r.sic >= r.aic);
    }
}

TEST_CASE("frozen ball-bearing values of the refitted families") {
    const auto bb = load_dataset(data_file("ball_bearings.txt"));
    CHECK(std::abs(fit_gamma(bb).aic - 230.06) < 0.01);
    CHECK(std::abs(fit_weibull(bb).aic - 231.38) < 0.01);
    CHECK(std::abs(fit_gen_exponential(bb).aic - 229.95) < 0.01);
}

TEST_CASE("exponential data gives Weibull shape 1") {
    std::mt19937_64 rng(77);
    std::exponential_distribution<double> ex(0.5);
    std::vector<double> xs(100000);
    for (double& x : xs) x = ex(rng);
    const auto r = fit_weibull(Dataset(xs));
    REQUIRE(r.converged);
    CHECK(std::abs(r.params[0] - 1.0) < 0.02);
}

TEST_CASE("reference tables") {
    const auto tables = load_reference_tables(data_file("reference_criteria.json"));
    REQUIRE(tables.count("ball_bearings") == 1);
    const auto& bb = tables.at("ball_bearings");
    CHECK(bb.n == 23);
    const auto* gels_row = bb.find("GEL-S");
    REQUIRE(gels_row != nullptr);
    CHECK(gels_row->aic == 229.98);
    CHECK(std::abs(gels_row->implied_loglik() + 112.99) < 0.01);
    CHECK_THROWS_AS(load_reference_tables("/nonexistent/reference.json"), DataError);
}

TEST_CASE("model comparison on ball bearings") {
    const auto d = load_dataset(data_file("ball_bearings.txt"));
    const auto trace = fit(d, {0, 30, true});
    const auto tables = load_reference_tables(data_file("reference_criteria.json"));
    const auto cmp = compare_models(d, trace.best(), fit_all_competitors(d), &tables.at("ball_bearings"));
    CHECK(cmp.rows.front().model.find("GEL-S") != std::string::npos);
    CHECK(cmp.rows[cmp.best_aic_published].model.find("GEL-S") != std::string::npos);
    CHECK(cmp.rows[cmp.best_sic_published].model.find("GEL-S") != std::string::npos);
    CHECK_FALSE(cmp.notes.empty());
}
