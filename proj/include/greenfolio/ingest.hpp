#pragma once

#include <string>
#include <vector>

#include "greenfolio/types.hpp"

namespace greenfolio::ingest {

/// Parse assets.csv (long format: ticker,name,cap_class,env_score,year,close).
/// Rows for the same ticker must agree on name, cap_class and env_score;
/// duplicate (ticker, year) rows are rejected. Every record is validated
/// before return, so the result is either fully valid or an exception.
std::vector<AssetRecord> load_assets(const std::string& path);

/// Inverse of load_assets, used for fixtures and round-trip checks.
void write_assets(const std::string& path, const std::vector<AssetRecord>& assets);

LossSeries load_losses(const std::string& path);
IntensitySeries load_intensity(const std::string& path);
MarketSeries load_market(const std::string& path);

struct FactorInputs {
    LossSeries losses;
    IntensitySeries intensity;
    MarketSeries market;
};

FactorInputs load_factor_series(const std::string& path_losses, const std::string& path_intensity,
                                const std::string& path_market);

/// Subset of `assets` covering every year in `span`, in input order, plus the
/// tickers that had to be dropped. Errors if the market does not cover the
/// span or no asset does.
struct AlignmentResult {
    std::vector<AssetRecord> retained;
    std::vector<std::string> dropped;  // tickers with gaps, reported not silently lost
};

AlignmentResult align_years(const std::vector<AssetRecord>& assets, const MarketSeries& market,
                            YearSpan span);

}  // namespace greenfolio::ingest
