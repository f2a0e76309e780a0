#pragma once

#include <map>
#include <string>
#include <vector>

#include "greenfolio/types.hpp"

namespace greenfolio::universe {

enum class RankingMetric { LongCagr, ShortCagr, ExcessOverMarket };

RankingMetric ranking_metric_from_string(const std::string& s);
std::string to_string(RankingMetric m);

struct ScreeningConfig {
    double min_env_score = 35.0;  // exclusive lower bound
    std::map<CapClass, int> quota = {
        {CapClass::Large, 15}, {CapClass::Mid, 6}, {CapClass::Small, 4}};
    std::vector<RankingMetric> ranking_metrics = {
        RankingMetric::LongCagr, RankingMetric::ShortCagr, RankingMetric::ExcessOverMarket};
    int short_cagr_years = 3;
};

/// Environmental-score filter plus per-cap-class quota selection.
/// Within each class, survivors are ordered by the average of their
/// per-metric ranks; ties break on higher env_score, then ticker. Output is
/// ordered (large, mid, small), best rank first.
std::vector<AssetRecord> screen(const std::vector<AssetRecord>& assets,
                                const ScreeningConfig& config, const MarketSeries& market,
                                YearSpan span);

struct UniverseSummary {
    std::map<CapClass, int> count_per_class;
    double mean_env_score = 0.0;
    int total = 0;
};

UniverseSummary universe_summary(const std::vector<AssetRecord>& selected);

}  // namespace greenfolio::universe
