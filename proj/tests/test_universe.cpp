#include <doctest.h>

#include "greenfolio/errors.hpp"
#include "greenfolio/universe.hpp"
#include "helpers.hpp"

using namespace greenfolio;
using universe::ScreeningConfig;

namespace {

std::vector<AssetRecord> candidate_pool() {
    std::vector<AssetRecord> assets;
    unsigned seed = 100;
    for (int i = 0; i < 20; ++i)
        assets.push_back(testutil::make_asset("LRG" + std::to_string(i), CapClass::Large,
                                              40.0 + i * 2, 1999, 2023, seed++));
    for (int i = 0; i < 9; ++i)
        assets.push_back(testutil::make_asset("MID" + std::to_string(i), CapClass::Mid,
                                              45.0 + i * 3, 1999, 2023, seed++));
    for (int i = 0; i < 6; ++i)
        assets.push_back(testutil::make_asset("SML" + std::to_string(i), CapClass::Small,
                                              50.0 + i * 4, 1999, 2023, seed++));
    return assets;
}

}  // namespace

TEST_CASE("env filter is an exclusive lower bound at 35") {
    auto market = testutil::make_market(1999, 2023, 0.08);
    std::vector<AssetRecord> assets = {
        testutil::make_asset("A30", CapClass::Large, 30, 1999, 2023, 1),
        testutil::make_asset("A35", CapClass::Large, 35, 1999, 2023, 2),
        testutil::make_asset("A36", CapClass::Large, 36, 1999, 2023, 3),
        testutil::make_asset("A80", CapClass::Large, 80, 1999, 2023, 4),
    };
    ScreeningConfig cfg;
    cfg.quota = {{CapClass::Large, 2}, {CapClass::Mid, 0}, {CapClass::Small, 0}};
    auto sel = universe::screen(assets, cfg, market, {1999, 2023});
    REQUIRE(sel.size() == 2);
    for (const auto& rec : sel) CHECK(rec.env_score > 35.0);
}

TEST_CASE("default quota totals 25") {
    ScreeningConfig cfg;
    int total = 0;
    for (const auto& [cls, n] : cfg.quota) total += n;
    CHECK(total == 25);
}

TEST_CASE("screen fills the quota per class deterministically") {
    auto market = testutil::make_market(1999, 2023, 0.08);
    auto assets = candidate_pool();
    ScreeningConfig cfg;  // default 15/6/4
    auto sel1 = universe::screen(assets, cfg, market, {1999, 2023});
    auto sel2 = universe::screen(assets, cfg, market, {1999, 2023});
    REQUIRE(sel1.size() == 25);
    REQUIRE(sel2.size() == 25);
    for (size_t i = 0; i < sel1.size(); ++i) CHECK(sel1[i].ticker == sel2[i].ticker);

    auto summary = universe::universe_summary(sel1);
    CHECK(summary.count_per_class.at(CapClass::Large) == 15);
    CHECK(summary.count_per_class.at(CapClass::Mid) == 6);
    CHECK(summary.count_per_class.at(CapClass::Small) == 4);
}

TEST_CASE("quota shortfall is an error naming the class") {
    auto market = testutil::make_market(1999, 2023, 0.08);
    std::vector<AssetRecord> assets = {
        testutil::make_asset("L1", CapClass::Large, 50, 1999, 2023, 1),
        testutil::make_asset("L2", CapClass::Large, 55, 1999, 2023, 2),
    };
    ScreeningConfig cfg;
    cfg.quota = {{CapClass::Large, 3}, {CapClass::Mid, 0}, {CapClass::Small, 0}};
    CHECK_THROWS_WITH_AS(universe::screen(assets, cfg, market, {1999, 2023}),
                         doctest::Contains("shortfall for class large"), ValidationError);
}

TEST_CASE("screening below the env floor counts toward shortfall") {
    auto market = testutil::make_market(1999, 2023, 0.08);
    std::vector<AssetRecord> assets = {
        testutil::make_asset("L1", CapClass::Large, 20, 1999, 2023, 1),
        testutil::make_asset("L2", CapClass::Large, 55, 1999, 2023, 2),
    };
    ScreeningConfig cfg;
    cfg.quota = {{CapClass::Large, 2}, {CapClass::Mid, 0}, {CapClass::Small, 0}};
    CHECK_THROWS_AS(universe::screen(assets, cfg, market, {1999, 2023}), ValidationError);
}

TEST_CASE("composite rank ties break on env score then ticker") {
    auto market = testutil::make_market(1999, 2023, 0.0);
    // Identical price paths -> identical metrics -> pure tie-break ordering.
    auto a = testutil::make_asset("BBB", CapClass::Large, 60, 1999, 2023, 7);
    auto b = a;
    b.ticker = "AAA";
    b.env_score = 60;
    auto c = a;
    c.ticker = "CCC";
    c.env_score = 70;
    ScreeningConfig cfg;
    cfg.quota = {{CapClass::Large, 3}, {CapClass::Mid, 0}, {CapClass::Small, 0}};
    auto sel = universe::screen({a, b, c}, cfg, market, {1999, 2023});
    REQUIRE(sel.size() == 3);
    CHECK(sel[0].ticker == "CCC");  // higher env score wins the tie
    CHECK(sel[1].ticker == "AAA");  // then lexicographic ticker
    CHECK(sel[2].ticker == "BBB");
}

TEST_CASE("universe_summary") {
    auto one = testutil::make_asset("X", CapClass::Mid, 60, 2000, 2005, 3);
    auto s1 = universe::universe_summary({one});
    CHECK(s1.mean_env_score == doctest::Approx(60.0));
    CHECK(s1.total == 1);

    auto two = testutil::make_asset("Y", CapClass::Large, 50, 2000, 2005, 4);
    auto s2 = universe::universe_summary({one, two});
    CHECK(s2.mean_env_score == doctest::Approx(55.0));

    CHECK_THROWS_AS(universe::universe_summary({}), ValidationError);
}
