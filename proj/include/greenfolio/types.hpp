#pragma once

#include <map>
#include <string>
#include <vector>

namespace greenfolio {

enum class CapClass { Large, Mid, Small };

std::string to_string(CapClass c);
CapClass cap_class_from_string(const std::string& s);

/// One asset: identifier, cap class, environmental score and its annual
/// year-end close series. Years must be contiguous, prices positive,
/// env_score in [0,100]. `validate()` enforces all three.
struct AssetRecord {
    std::string ticker;
    std::string name;
    CapClass cap_class = CapClass::Large;
    double env_score = 0.0;
    std::map<int, double> prices;  // calendar year -> year-end close

    void validate() const;
    int first_year() const { return prices.begin()->first; }
    int last_year() const { return prices.rbegin()->first; }
    bool covers(int start_year, int end_year) const;
};

/// Annual total economic damage from natural disasters, USD billions.
struct LossSeries {
    std::map<int, double> entries;  // year -> damage (>= 0)

    void validate() const;
};

/// CO2 emissions intensity of GDP, tCO2 per 1000 USD.
struct IntensitySeries {
    std::map<int, double> entries;  // year -> intensity (> 0)

    void validate() const;
};

/// Market index annual levels (contiguous years, positive).
struct MarketSeries {
    std::map<int, double> index_levels;  // year -> level

    void validate() const;
    bool covers(int start_year, int end_year) const;
};

/// Inclusive calendar-year range.
struct YearSpan {
    int start = 0;
    int end = 0;

    int size() const { return end - start + 1; }
    bool empty() const { return end < start; }
};

}  // namespace greenfolio
