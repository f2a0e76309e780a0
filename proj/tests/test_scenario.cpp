#include <doctest.h>

#include <cmath>
#include <random>

#include "greenfolio/errors.hpp"
#include "greenfolio/scenario.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace greenfolio;
using scenario::ScenarioConfig;
using scenario::ScenarioSpec;

namespace {

struct History {
    LossSeries losses;
    IntensitySeries intensity;
    MarketSeries market;
};

History synthetic_history() {
    History h;
    std::mt19937 rng(55);
    std::lognormal_distribution<double> loss(std::log(9.0), 0.5);
    for (int y = 2004; y <= 2023; ++y) h.losses.entries[y] = std::min(loss(rng), 24.0);
    double intensity = 0.40;
    for (int y = 1999; y <= 2023; ++y) {
        h.intensity.entries[y] = intensity;
        intensity -= 0.005;
    }
    h.market = testutil::make_market(1998, 2023, 0.10);
    return h;
}

factor::FactorModelFit synthetic_fit(double alpha, double b1, double b2, double b3) {
    factor::FactorModelFit fit;
    fit.alpha = alpha;
    fit.beta_market = b1;
    fit.beta_pf = b2;
    fit.beta_tf = b3;
    fit.n_obs = 25;
    fit.dof = 21;
    return fit;
}

}  // namespace

TEST_CASE("default scenarios carry the published constants") {
    auto h = synthetic_history();
    auto specs = scenario::build_default_scenarios(h.losses, h.intensity, h.market, {});
    REQUIRE(specs.size() == 4);
    CHECK(specs[0].name == "reference");
    CHECK(specs[0].tf_decrement == 0.006);
    CHECK(specs[1].tf_decrement == 0.008);
    CHECK(specs[2].tf_decrement == 0.0095);
    CHECK(specs[3].tf_decrement == 0.0105);
    REQUIRE(specs[3].years[1].pf_absolute.has_value());
    CHECK(*specs[3].years[1].pf_absolute == doctest::Approx(25.0));
    REQUIRE(specs[3].years[1].market_return.has_value());
    CHECK(*specs[3].years[1].market_return == doctest::Approx(-0.075));
    // mild: median then 70th percentile twice
    CHECK(*specs[1].years[0].pf_percentile == doctest::Approx(0.50));
    CHECK(*specs[1].years[1].pf_percentile == doctest::Approx(0.70));
    // high: (0.70, 0.85, 0.80)
    CHECK(*specs[2].years[0].pf_percentile == doctest::Approx(0.70));
    CHECK(*specs[2].years[1].pf_percentile == doctest::Approx(0.85));
    CHECK(*specs[2].years[2].pf_percentile == doctest::Approx(0.80));
}

TEST_CASE("insufficient history is rejected by name") {
    auto h = synthetic_history();
    LossSeries short_losses;
    for (int y = 2019; y <= 2023; ++y) short_losses.entries[y] = 8.0;
    CHECK_THROWS_WITH_AS(
        scenario::build_default_scenarios(short_losses, h.intensity, h.market, {}),
        doctest::Contains("losses"), ValidationError);
}

TEST_CASE("baseline_market_rate") {
    SUBCASE("flat index gives zero") {
        auto m = testutil::make_market(2000, 2023, 0.0);
        CHECK(scenario::baseline_market_rate(m) == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("constant growth returns that growth") {
        auto m = testutil::make_market(2000, 2023, 0.10);
        CHECK(scenario::baseline_market_rate(m) == doctest::Approx(0.10).epsilon(1e-12));
    }
    SUBCASE("random series matches the three-CAGR oracle") {
        MarketSeries m;
        std::mt19937 rng(77);
        std::uniform_real_distribution<double> g(-0.1, 0.3);
        double level = 500.0;
        for (int y = 1999; y <= 2023; ++y) {
            m.index_levels[y] = level;
            level *= 1.0 + g(rng);
        }
        double expect = 0.0;
        for (int horizon : {10, 15, 20})
            expect += std::pow(m.index_levels.at(2023) / m.index_levels.at(2023 - horizon),
                               1.0 / horizon) -
                      1.0;
        expect /= 3.0;
        CHECK(scenario::baseline_market_rate(m) == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("too little history errors") {
        auto m = testutil::make_market(2010, 2023, 0.1);
        CHECK_THROWS_AS(scenario::baseline_market_rate(m), ValidationError);
    }
}

TEST_CASE("project_tf") {
    auto tf = scenario::project_tf(0.20, 0.006);
    CHECK(tf[0] == doctest::Approx(0.194).epsilon(1e-12));
    CHECK(tf[1] == doctest::Approx(0.188).epsilon(1e-12));
    CHECK(tf[2] == doctest::Approx(0.182).epsilon(1e-12));
    CHECK_THROWS_AS(scenario::project_tf(0.20, 0.0), ValidationError);
    CHECK_THROWS_AS(scenario::project_tf(0.02, 0.0105), ValidationError);
}

TEST_CASE("project_portfolio_return") {
    const double r_f = 0.0695;
    SUBCASE("all-zero coefficients return the risk-free rate") {
        CHECK(scenario::project_portfolio_return(synthetic_fit(0, 0, 0, 0), 0.12, 10, 0.02,
                                                 r_f) == doctest::Approx(r_f));
    }
    SUBCASE("hand-computed example") {
        auto fit = synthetic_fit(0.01, 0.9, -0.002, -3.0);
        CHECK(scenario::project_portfolio_return(fit, 0.12, 10, 0.02, r_f) ==
              doctest::Approx(0.04495).epsilon(1e-12));
    }
    SUBCASE("finite-difference slopes equal the betas") {
        auto fit = synthetic_fit(0.013, 0.85, -0.0017, -2.4);
        const double base = scenario::project_portfolio_return(fit, 0.10, 12.0, 0.25, r_f);
        const double h = 0.5;
        double d_mkt =
            (scenario::project_portfolio_return(fit, 0.10 + h, 12.0, 0.25, r_f) - base) / h;
        double d_pf =
            (scenario::project_portfolio_return(fit, 0.10, 12.0 + h, 0.25, r_f) - base) / h;
        double d_tf =
            (scenario::project_portfolio_return(fit, 0.10, 12.0, 0.25 + h, r_f) - base) / h;
        CHECK(std::abs(d_mkt - fit.beta_market) < 1e-10);
        CHECK(std::abs(d_pf - fit.beta_pf) < 1e-10);
        CHECK(std::abs(d_tf - fit.beta_tf) < 1e-10);
    }
}

TEST_CASE("cumulative_return") {
    CHECK(scenario::cumulative_return({0, 0, 0}) == doctest::Approx(0.0));
    CHECK(scenario::cumulative_return({0.10, 0.10, 0.10}) ==
          doctest::Approx(0.331).epsilon(1e-12));  // 1.1^3 - 1 by hand
    CHECK(scenario::cumulative_return({0.5, -0.5}) == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(scenario::cumulative_return({0.0423}) ==
          doctest::Approx(0.0423).epsilon(1e-14));  // single year
    CHECK(scenario::cumulative_return({0.1, -0.2, 0.3}) ==
          doctest::Approx(scenario::cumulative_return({0.3, 0.1, -0.2})).epsilon(1e-14));
    CHECK_THROWS_AS(scenario::cumulative_return({0.1, -1.0}), ValidationError);
}

TEST_CASE("ex_ante_sharpe") {
    const double r_f = 0.0695;
    CHECK(scenario::ex_ante_sharpe({r_f, r_f, r_f}, 0.2, r_f) == doctest::Approx(0.0));
    CHECK(scenario::ex_ante_sharpe({0.12, 0.10, 0.14}, 0.18, r_f) ==
          doctest::Approx(0.2806).epsilon(1e-3));
    CHECK(scenario::ex_ante_sharpe({0.12, 0.10, 0.14}, 0.36, r_f) ==
          doctest::Approx(0.5 * scenario::ex_ante_sharpe({0.12, 0.10, 0.14}, 0.18, r_f))
              .epsilon(1e-12));
    CHECK_THROWS_AS(scenario::ex_ante_sharpe({0.1, 0.1, 0.1}, 0.0, r_f), ValidationError);
}

TEST_CASE("run_scenarios") {
    auto h = synthetic_history();
    const double r_f = 0.0695;
    ScenarioConfig cfg;
    auto specs = scenario::build_default_scenarios(h.losses, h.intensity, h.market, cfg);
    auto inputs = scenario::prepare_inputs(h.losses, h.intensity, h.market, cfg);

    SUBCASE("zero-coefficient fit degenerates to the risk-free rate") {
        auto proj = scenario::run_scenarios(synthetic_fit(0, 0, 0, 0), specs, inputs, r_f,
                                            0.2, 0.2);
        for (double r : proj[0].portfolio_return) CHECK(r == doctest::Approx(r_f));
    }
    SUBCASE("four projections with strictly decreasing positive TF") {
        auto proj = scenario::run_scenarios(synthetic_fit(0.01, 0.8, -0.002, -1.0), specs,
                                            inputs, r_f, 0.2, 0.2);
        REQUIRE(proj.size() == 4);
        for (const auto& p : proj) {
            CHECK(p.tf[0] > p.tf[1]);
            CHECK(p.tf[1] > p.tf[2]);
            CHECK(p.tf[2] > 0.0);
            for (double pf : p.pf) CHECK(pf >= 0.0);
        }
    }
    SUBCASE("gap widens across scenarios, matching the independent oracle") {
        auto fit = synthetic_fit(0.01, 0.6, -1e-4, -0.05);
        auto proj = scenario::run_scenarios(fit, specs, inputs, r_f, 0.2, 0.2);
        std::array<double, 4> gaps{};
        for (size_t s = 0; s < 4; ++s)
            gaps[s] = proj[s].cumulative_3y_portfolio - proj[s].cumulative_3y_market;
        auto expect = oracle::default_scenario_gaps({0.01, 0.6, -1e-4, -0.05},
                                                    inputs.trailing_losses,
                                                    inputs.baseline_market,
                                                    inputs.last_intensity, r_f);
        for (size_t s = 0; s < 4; ++s) CHECK(gaps[s] == doctest::Approx(expect[s]).epsilon(1e-12));
        CHECK(gaps[1] >= gaps[0]);
        CHECK(gaps[2] >= gaps[1]);
        CHECK(gaps[3] >= gaps[2]);
    }
    SUBCASE("raising PF never raises the projected return when beta_pf < 0") {
        auto fit = synthetic_fit(0.01, 0.8, -0.002, -1.0);
        for (double pf : {0.0, 5.0, 10.0, 20.0, 40.0}) {
            double lo = scenario::project_portfolio_return(fit, 0.1, pf, 0.3, r_f);
            double hi = scenario::project_portfolio_return(fit, 0.1, pf + 1.0, 0.3, r_f);
            CHECK(hi <= lo);
        }
    }
}

TEST_CASE("scenario spec validation") {
    ScenarioSpec spec;
    spec.name = "custom";
    spec.tf_decrement = 0.007;
    for (auto& y : spec.years) y.pf_percentile = 0.5;

    SUBCASE("valid spec passes") { CHECK_NOTHROW(spec.validate()); }
    SUBCASE("zero decrement fails") {
        spec.tf_decrement = 0.0;
        CHECK_THROWS_AS(spec.validate(), ValidationError);
    }
    SUBCASE("both pf rules set fails") {
        spec.years[1].pf_absolute = 12.0;
        CHECK_THROWS_AS(spec.validate(), ValidationError);
    }
    SUBCASE("percentile out of range fails") {
        spec.years[2].pf_percentile = 1.2;
        CHECK_THROWS_AS(spec.validate(), ValidationError);
    }
}

TEST_CASE("scenario config loading") {
    auto dir = testutil::temp_dir("scenario_cfg");
    SUBCASE("knob overrides") {
        auto p = testutil::write_file(dir, "s.json",
                                      R"({"high_y2_market_reduction": 0.04,
                                          "stress_y3_pf_percentile": 0.9})");
        auto loaded = scenario::load_scenario_config(p.string());
        CHECK(loaded.config.high_y2_market_reduction == doctest::Approx(0.04));
        CHECK(loaded.config.stress_y3_pf_percentile == doctest::Approx(0.9));
        CHECK(loaded.config.pf_window_years == 10);
        CHECK(loaded.custom_scenarios.empty());
    }
    SUBCASE("full custom scenario") {
        auto p = testutil::write_file(
            dir, "s.json",
            R"({"scenarios":[{"name":"custom","tf_decrement":0.007,"years":[
                 {"pf_percentile":0.5},
                 {"market_return":-0.02,"pf_absolute_usd_bn":12.0},
                 {"pf_percentile":0.7}]}]})");
        auto loaded = scenario::load_scenario_config(p.string());
        REQUIRE(loaded.custom_scenarios.size() == 1);
        CHECK(*loaded.custom_scenarios[0].years[1].pf_absolute == doctest::Approx(12.0));
        CHECK_FALSE(loaded.custom_scenarios[0].years[0].market_return.has_value());
    }
    SUBCASE("malformed json is a config error") {
        auto p = testutil::write_file(dir, "s.json", "{not json");
        CHECK_THROWS_AS(scenario::load_scenario_config(p.string()), ConfigError);
    }
}
