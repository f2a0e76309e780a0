#include "greenfolio/types.hpp"

#include "greenfolio/errors.hpp"

namespace greenfolio {

std::string to_string(CapClass c) {
    switch (c) {
        case CapClass::Large: return "large";
        case CapClass::Mid: return "mid";
        case CapClass::Small: return "small";
    }
    return "large";
}

CapClass cap_class_from_string(const std::string& s) {
    if (s == "large") return CapClass::Large;
    if (s == "mid") return CapClass::Mid;
    if (s == "small") return CapClass::Small;
    throw ValidationError("unknown cap_class '" + s + "' (expected large|mid|small)");
}

void AssetRecord::validate() const {
    if (env_score < 0.0 || env_score > 100.0)
        throw ValidationError("asset " + ticker + ": env_score " + std::to_string(env_score) +
                              " outside [0,100]");
    if (prices.empty()) throw ValidationError("asset " + ticker + ": no price observations");
    int expected = prices.begin()->first;
    for (const auto& [year, price] : prices) {
        if (price <= 0.0)
            throw ValidationError("asset " + ticker + ": non-positive price in year " +
                                  std::to_string(year));
        if (year != expected)
            throw ValidationError("asset " + ticker + ": price years not contiguous (gap before " +
                                  std::to_string(year) + ")");
        ++expected;
    }
}

bool AssetRecord::covers(int start_year, int end_year) const {
    return !prices.empty() && first_year() <= start_year && last_year() >= end_year;
}

void LossSeries::validate() const {
    for (const auto& [year, damage] : entries)
        if (damage < 0.0)
            throw ValidationError("losses: negative damage in year " + std::to_string(year));
}

void IntensitySeries::validate() const {
    for (const auto& [year, intensity] : entries)
        if (intensity <= 0.0)
            throw ValidationError("intensity: non-positive value in year " + std::to_string(year));
}

void MarketSeries::validate() const {
    if (index_levels.empty()) throw ValidationError("market: no index observations");
    int expected = index_levels.begin()->first;
    for (const auto& [year, level] : index_levels) {
        if (level <= 0.0)
            throw ValidationError("market: non-positive index level in year " +
                                  std::to_string(year));
        if (year != expected)
            throw ValidationError("market: index years not contiguous (gap before " +
                                  std::to_string(year) + ")");
        ++expected;
    }
}

bool MarketSeries::covers(int start_year, int end_year) const {
    return !index_levels.empty() && index_levels.begin()->first <= start_year &&
           index_levels.rbegin()->first >= end_year;
}

}  // namespace greenfolio
