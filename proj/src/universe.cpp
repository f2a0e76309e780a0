#include "greenfolio/universe.hpp"

#include <algorithm>
#include <numeric>

#include "greenfolio/analytics.hpp"
#include "greenfolio/errors.hpp"

namespace greenfolio::universe {

RankingMetric ranking_metric_from_string(const std::string& s) {
    if (s == "long_cagr") return RankingMetric::LongCagr;
    if (s == "short_cagr") return RankingMetric::ShortCagr;
    if (s == "excess_over_market") return RankingMetric::ExcessOverMarket;
    throw ConfigError("unknown ranking metric '" + s + "'");
}

std::string to_string(RankingMetric m) {
    switch (m) {
        case RankingMetric::LongCagr: return "long_cagr";
        case RankingMetric::ShortCagr: return "short_cagr";
        case RankingMetric::ExcessOverMarket: return "excess_over_market";
    }
    return "long_cagr";
}

namespace {

double metric_value(const AssetRecord& rec, RankingMetric metric, YearSpan span,
                    int short_years, double market_long_cagr) {
    const int long_years = span.size() - 1;
    switch (metric) {
        case RankingMetric::LongCagr:
            return analytics::cagr(rec.prices.at(span.start), rec.prices.at(span.end), long_years);
        case RankingMetric::ShortCagr: {
            int start = span.end - short_years;
            if (start < span.start) start = span.start;
            return analytics::cagr(rec.prices.at(start), rec.prices.at(span.end),
                                   span.end - start);
        }
        case RankingMetric::ExcessOverMarket:
            return analytics::excess_over_market(
                analytics::cagr(rec.prices.at(span.start), rec.prices.at(span.end), long_years),
                market_long_cagr);
    }
    return 0.0;
}

}  // namespace

std::vector<AssetRecord> screen(const std::vector<AssetRecord>& assets,
                                const ScreeningConfig& config, const MarketSeries& market,
                                YearSpan span) {
    if (config.min_env_score < 0.0 || config.min_env_score > 100.0)
        throw ConfigError("min_env_score outside [0,100]");
    if (config.ranking_metrics.empty()) throw ConfigError("ranking_metrics must be non-empty");
    if (span.size() < 2) throw ValidationError("screen: span too short");
    if (!market.covers(span.start, span.end))
        throw ValidationError("screen: market does not cover span");

    const double market_long_cagr = analytics::cagr(
        market.index_levels.at(span.start), market.index_levels.at(span.end), span.size() - 1);

    std::vector<AssetRecord> selected;
    for (CapClass cls : {CapClass::Large, CapClass::Mid, CapClass::Small}) {
        std::vector<size_t> candidates;
        for (size_t i = 0; i < assets.size(); ++i)
            if (assets[i].cap_class == cls && assets[i].env_score > config.min_env_score)
                candidates.push_back(i);

        auto it = config.quota.find(cls);
        const int want = it == config.quota.end() ? 0 : it->second;
        if (want < 0) throw ConfigError("negative quota for class " + to_string(cls));
        if (static_cast<int>(candidates.size()) < want)
            throw ValidationError("quota shortfall for class " + to_string(cls) + ": need " +
                                  std::to_string(want) + ", have " +
                                  std::to_string(candidates.size()));
        if (want == 0) continue;

        // Composite rank: average of the within-class ranks per metric
        // (rank 0 = best metric value).
        std::vector<double> composite(candidates.size(), 0.0);
        for (RankingMetric metric : config.ranking_metrics) {
            std::vector<double> values(candidates.size());
            for (size_t k = 0; k < candidates.size(); ++k)
                values[k] = metric_value(assets[candidates[k]], metric, span,
                                         config.short_cagr_years, market_long_cagr);
            std::vector<size_t> order(candidates.size());
            std::iota(order.begin(), order.end(), size_t{0});
            std::stable_sort(order.begin(), order.end(),
                             [&](size_t a, size_t b) { return values[a] > values[b]; });
            // Equal metric values share the average of their positions, so the
            // ranking never depends on input order.
            for (size_t lo = 0; lo < order.size();) {
                size_t hi = lo + 1;
                while (hi < order.size() && values[order[hi]] == values[order[lo]]) ++hi;
                const double rank = 0.5 * static_cast<double>(lo + hi - 1);
                for (size_t k = lo; k < hi; ++k) composite[order[k]] += rank;
                lo = hi;
            }
        }
        for (double& c : composite) c /= static_cast<double>(config.ranking_metrics.size());

        std::vector<size_t> order(candidates.size());
        std::iota(order.begin(), order.end(), size_t{0});
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (composite[a] != composite[b]) return composite[a] < composite[b];
            const auto& ra = assets[candidates[a]];
            const auto& rb = assets[candidates[b]];
            if (ra.env_score != rb.env_score) return ra.env_score > rb.env_score;
            return ra.ticker < rb.ticker;
        });
        for (int k = 0; k < want; ++k) selected.push_back(assets[candidates[order[k]]]);
    }
    return selected;
}

UniverseSummary universe_summary(const std::vector<AssetRecord>& selected) {
    if (selected.empty()) throw ValidationError("universe_summary: empty selection");
    UniverseSummary s;
    s.total = static_cast<int>(selected.size());
    double sum = 0.0;
    for (const auto& rec : selected) {
        ++s.count_per_class[rec.cap_class];
        sum += rec.env_score;
    }
    s.mean_env_score = sum / static_cast<double>(selected.size());
    return s;
}

}  // namespace greenfolio::universe
