#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "stickymass/analytics.hpp"
#include "stickymass/distributions.hpp"
#include "stickymass/harness.hpp"

using namespace stickymass;

namespace {
ExperimentSpec tiny_spec() {
    ExperimentSpec spec;
    spec.dist_spec = "explicit:0.5,0.5";
    spec.alphas = {0.5};
    spec.ns = {10};
    spec.trials = 100;
    spec.seed = 3;
    spec.mode = AlphaMode::both;
    return spec;
}
}  // namespace

TEST_CASE("experiment produces a complete row") {
    auto report = run_mse_experiment(tiny_spec(), 1);
    REQUIRE(report.rows.size() == 1);
    const auto& row = report.rows[0];
    CHECK(row.alpha == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(row.n == 10);
    CHECK(row.trials == 100);
    REQUIRE(row.mse_known.has_value());
    REQUIRE(row.mse_estimated.has_value());
    REQUIRE(row.mean_alpha_hat.has_value());
    CHECK(*row.mse_known >= 0.0);
    CHECK(*row.mse_estimated >= 0.0);
    CHECK(*row.mean_alpha_hat >= 0.0);
    CHECK(*row.mean_alpha_hat <= 0.9);
}

TEST_CASE("alpha modes control which columns appear") {
    auto spec = tiny_spec();
    spec.mode = AlphaMode::known;
    auto known = run_mse_experiment(spec, 1);
    CHECK(known.rows[0].mse_known.has_value());
    CHECK(!known.rows[0].mse_estimated.has_value());
    CHECK(!known.rows[0].mean_alpha_hat.has_value());

    spec.mode = AlphaMode::estimated;
    auto est = run_mse_experiment(spec, 1);
    CHECK(!est.rows[0].mse_known.has_value());
    CHECK(est.rows[0].mse_estimated.has_value());
}

TEST_CASE("grid cells are sorted and deduplicated") {
    auto spec = tiny_spec();
    spec.alphas = {0.75, 0.5, 0.5};
    spec.ns = {20, 10};
    auto report = run_mse_experiment(spec, 1);
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[0].alpha == doctest::Approx(0.5));
    CHECK(report.rows[0].n == 10);
    CHECK(report.rows[1].n == 20);
    CHECK(report.rows[2].alpha == doctest::Approx(0.75));
    CHECK(report.rows[3].n == 20);
}

TEST_CASE("report is byte-identical across thread counts") {
    auto spec = tiny_spec();
    spec.trials = 500;
    spec.with_exact = true;
    auto one = csv_string(run_mse_experiment(spec, 1));
    auto four = csv_string(run_mse_experiment(spec, 4));
    auto three = csv_string(run_mse_experiment(spec, 3));
    CHECK(one == four);
    CHECK(one == three);

    spec.seed = 4;
    CHECK(csv_string(run_mse_experiment(spec, 1)) != one);
}

TEST_CASE("closed-form column is attached on request") {
    auto spec = tiny_spec();
    spec.with_exact = true;
    auto report = run_mse_experiment(spec, 1);
    REQUIRE(report.rows[0].exact_mse.has_value());
    auto d = DistSpec::parse(spec.dist_spec).materialize(10);
    CHECK(*report.rows[0].exact_mse == doctest::Approx(exact_mse(d, 0.5, 10)).epsilon(1e-15));
}

TEST_CASE("CSV round-trips bit for bit") {
    auto spec = tiny_spec();
    spec.with_exact = true;
    spec.alphas = {0.3, 0.9};
    auto report = run_mse_experiment(spec, 2);

    std::stringstream ss(csv_string(report));
    auto back = parse_csv(ss);
    REQUIRE(back.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& a = report.rows[i];
        const auto& b = back.rows[i];
        CHECK(a.alpha == b.alpha);
        CHECK(a.n == b.n);
        CHECK(a.trials == b.trials);
        CHECK(a.mse_known == b.mse_known);
        CHECK(a.se_known == b.se_known);
        CHECK(a.mse_estimated == b.mse_estimated);
        CHECK(a.se_estimated == b.se_estimated);
        CHECK(a.mean_alpha_hat == b.mean_alpha_hat);
        CHECK(a.exact_mse == b.exact_mse);
    }

    std::stringstream bad("nope\n");
    CHECK_THROWS_AS(parse_csv(bad), std::invalid_argument);
    std::stringstream short_row(
        "alpha,n,trials,mse_known,se_known,mse_estimated,se_estimated,mean_alpha_hat,exact_mse\n"
        "0.5,10,100\n");
    CHECK_THROWS_AS(parse_csv(short_row), std::invalid_argument);
}

TEST_CASE("monte carlo MSE brackets the closed form") {
    ExperimentSpec spec;
    spec.dist_spec = "powerlaw:20,0";
    spec.alphas = {0.5};
    spec.ns = {50};
    spec.trials = 4000;
    spec.seed = 11;
    spec.mode = AlphaMode::known;
    spec.with_exact = true;
    auto report = run_mse_experiment(spec, 2);
    const auto& row = report.rows[0];
    REQUIRE(row.mse_known.has_value());
    REQUIRE(row.se_known.has_value());
    REQUIRE(row.exact_mse.has_value());
    CHECK(std::abs(*row.mse_known - *row.exact_mse) <= 3.0 * *row.se_known);
}

TEST_CASE("figure grids have the right shape") {
    auto report = figdata("fig1", 1, 1, 1);
    REQUIRE(report.rows.size() == 21);
    CHECK(report.rows[0].alpha == doctest::Approx(0.5));
    CHECK(report.rows[0].n == 100);
    CHECK(report.rows[6].n == 6400);
    CHECK(report.rows[20].alpha == doctest::Approx(0.95));
    for (const auto& row : report.rows) {
        CHECK(row.mse_known.has_value());
        CHECK(row.mse_estimated.has_value());
    }
    CHECK_THROWS_AS(figdata("fig3", 1, 1, 1), std::invalid_argument);
}
