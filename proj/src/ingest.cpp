#include "greenfolio/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_map>

#include "greenfolio/errors.hpp"

namespace greenfolio::ingest {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

struct CsvFile {
    std::string path;
    std::vector<std::vector<std::string>> rows;  // data rows, header stripped
};

CsvFile read_csv(const std::string& path, const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header)
        throw ValidationError(path + ": expected header '" + expected_header + "', got '" + line +
                              "'");
    CsvFile csv{path, {}};
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        csv.rows.push_back(split_csv_line(line));
    }
    return csv;
}

double parse_real(const CsvFile& csv, size_t row, const std::string& field) {
    try {
        size_t pos = 0;
        double v = std::stod(field, &pos);
        if (pos != field.size() || !std::isfinite(v)) throw std::invalid_argument(field);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(csv.path + ": row " + std::to_string(row + 2) +
                              ": cannot parse number '" + field + "'");
    }
}

int parse_year(const CsvFile& csv, size_t row, const std::string& field) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw ValidationError(csv.path + ": row " + std::to_string(row + 2) +
                              ": cannot parse year '" + field + "'");
    return v;
}

void expect_fields(const CsvFile& csv, size_t row, size_t n) {
    if (csv.rows[row].size() != n)
        throw ValidationError(csv.path + ": row " + std::to_string(row + 2) + ": expected " +
                              std::to_string(n) + " fields, got " +
                              std::to_string(csv.rows[row].size()));
}

// Shared loader for the three year->value factor files.
template <typename Check>
std::map<int, double> load_year_value(const std::string& path, const std::string& header,
                                      Check check) {
    CsvFile csv = read_csv(path, header);
    std::map<int, double> out;
    for (size_t i = 0; i < csv.rows.size(); ++i) {
        expect_fields(csv, i, 2);
        int year = parse_year(csv, i, csv.rows[i][0]);
        double value = parse_real(csv, i, csv.rows[i][1]);
        check(path, year, value);
        if (!out.emplace(year, value).second)
            throw ValidationError(path + ": duplicate year " + std::to_string(year));
    }
    if (out.empty()) throw ValidationError(path + ": no data rows");
    return out;
}

}  // namespace

std::vector<AssetRecord> load_assets(const std::string& path) {
    CsvFile csv = read_csv(path, "ticker,name,cap_class,env_score,year,close");
    std::vector<AssetRecord> assets;
    std::unordered_map<std::string, size_t> index;
    for (size_t i = 0; i < csv.rows.size(); ++i) {
        expect_fields(csv, i, 6);
        const auto& row = csv.rows[i];
        const std::string& ticker = row[0];
        if (ticker.empty())
            throw ValidationError(path + ": row " + std::to_string(i + 2) + ": empty ticker");
        double env_score = parse_real(csv, i, row[3]);
        if (env_score < 0.0 || env_score > 100.0)
            throw ValidationError(path + ": row " + std::to_string(i + 2) + ": env_score " +
                                  row[3] + " outside [0,100]");
        int year = parse_year(csv, i, row[4]);
        double close = parse_real(csv, i, row[5]);

        auto it = index.find(ticker);
        if (it == index.end()) {
            index.emplace(ticker, assets.size());
            AssetRecord rec;
            rec.ticker = ticker;
            rec.name = row[1];
            try {
                rec.cap_class = cap_class_from_string(row[2]);
            } catch (const ValidationError& e) {
                throw ValidationError(path + ": row " + std::to_string(i + 2) + ": " + e.what());
            }
            rec.env_score = env_score;
            rec.prices.emplace(year, close);
            assets.push_back(std::move(rec));
        } else {
            AssetRecord& rec = assets[it->second];
            if (rec.name != row[1] || to_string(rec.cap_class) != row[2] ||
                rec.env_score != env_score)
                throw ValidationError(path + ": row " + std::to_string(i + 2) +
                                      ": inconsistent metadata for ticker " + ticker);
            if (!rec.prices.emplace(year, close).second)
                throw ValidationError(path + ": duplicate ticker " + ticker + " for year " +
                                      std::to_string(year));
        }
    }
    for (const auto& rec : assets) rec.validate();
    if (assets.empty()) throw ValidationError(path + ": no data rows");
    return assets;
}

void write_assets(const std::string& path, const std::vector<AssetRecord>& assets) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << "ticker,name,cap_class,env_score,year,close\n";
    out << std::setprecision(17);
    for (const auto& rec : assets)
        for (const auto& [year, close] : rec.prices)
            out << rec.ticker << ',' << rec.name << ',' << to_string(rec.cap_class) << ','
                << rec.env_score << ',' << year << ',' << close << '\n';
}

LossSeries load_losses(const std::string& path) {
    LossSeries s;
    s.entries = load_year_value(path, "year,damage_usd_bn", [](const std::string& p, int year,
                                                               double v) {
        if (v < 0.0)
            throw ValidationError(p + ": negative damage in year " + std::to_string(year));
    });
    return s;
}

IntensitySeries load_intensity(const std::string& path) {
    IntensitySeries s;
    s.entries = load_year_value(path, "year,tco2_per_kusd", [](const std::string& p, int year,
                                                               double v) {
        if (v <= 0.0)
            throw ValidationError(p + ": non-positive intensity in year " + std::to_string(year));
    });
    return s;
}

MarketSeries load_market(const std::string& path) {
    MarketSeries s;
    s.index_levels = load_year_value(path, "year,index_level", [](const std::string& p, int year,
                                                                  double v) {
        if (v <= 0.0)
            throw ValidationError(p + ": non-positive index level in year " +
                                  std::to_string(year));
    });
    s.validate();  // contiguity
    return s;
}

FactorInputs load_factor_series(const std::string& path_losses, const std::string& path_intensity,
                                const std::string& path_market) {
    return FactorInputs{load_losses(path_losses), load_intensity(path_intensity),
                        load_market(path_market)};
}

AlignmentResult align_years(const std::vector<AssetRecord>& assets, const MarketSeries& market,
                            YearSpan span) {
    if (span.empty()) throw ValidationError("align_years: empty span");
    if (!market.covers(span.start, span.end))
        throw ValidationError("market index does not cover span " + std::to_string(span.start) +
                              "-" + std::to_string(span.end));
    AlignmentResult result;
    for (const auto& rec : assets) {
        if (rec.covers(span.start, span.end))
            result.retained.push_back(rec);
        else
            result.dropped.push_back(rec.ticker);
    }
    if (result.retained.empty())
        throw ValidationError("no asset covers span " + std::to_string(span.start) + "-" +
                              std::to_string(span.end));
    return result;
}

}  // namespace greenfolio::ingest
