#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "greenfolio/types.hpp"

namespace testutil {

inline std::filesystem::path temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("greenfolio_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path write_file(const std::filesystem::path& dir, const std::string& name,
                                        const std::string& content) {
    auto p = dir / name;
    std::ofstream(p) << content;
    return p;
}

// Asset with a deterministic pseudo-random positive price path.
inline greenfolio::AssetRecord make_asset(const std::string& ticker, greenfolio::CapClass cls,
                                          double env_score, int start_year, int end_year,
                                          unsigned seed) {
    greenfolio::AssetRecord rec;
    rec.ticker = ticker;
    rec.name = ticker + " Co";
    rec.cap_class = cls;
    rec.env_score = env_score;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> growth(-0.15, 0.35);
    double price = 100.0 + (seed % 37);
    for (int y = start_year; y <= end_year; ++y) {
        rec.prices[y] = price;
        price *= 1.0 + growth(rng);
    }
    return rec;
}

inline greenfolio::MarketSeries make_market(int start_year, int end_year, double annual_growth,
                                            double level = 1000.0) {
    greenfolio::MarketSeries m;
    for (int y = start_year; y <= end_year; ++y) {
        m.index_levels[y] = level;
        level *= 1.0 + annual_growth;
    }
    return m;
}

}  // namespace testutil
