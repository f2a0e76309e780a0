#include "greenfolio/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "greenfolio/errors.hpp"

namespace greenfolio::analytics {

ReturnPanel build_return_panel(const std::vector<AssetRecord>& assets, const MarketSeries& market,
                               YearSpan span) {
    if (span.size() < 2) throw ValidationError("return panel needs a span of at least 2 years");
    if (assets.empty()) throw ValidationError("return panel needs at least one asset");
    if (!market.covers(span.start, span.end))
        throw ValidationError("market index does not cover requested span");

    ReturnPanel panel;
    const int n_years = span.size() - 1;
    panel.years.reserve(n_years);
    for (int y = span.start + 1; y <= span.end; ++y) panel.years.push_back(y);

    panel.asset_returns.resize(n_years, static_cast<Eigen::Index>(assets.size()));
    for (size_t j = 0; j < assets.size(); ++j) {
        const auto& rec = assets[j];
        if (!rec.covers(span.start, span.end))
            throw ValidationError("asset " + rec.ticker + " does not cover requested span");
        panel.tickers.push_back(rec.ticker);
        for (int t = 0; t < n_years; ++t) {
            int year = span.start + 1 + t;
            panel.asset_returns(t, static_cast<Eigen::Index>(j)) =
                rec.prices.at(year) / rec.prices.at(year - 1) - 1.0;
        }
    }
    panel.market_returns.resize(n_years);
    for (int t = 0; t < n_years; ++t) {
        int year = span.start + 1 + t;
        panel.market_returns(t) =
            market.index_levels.at(year) / market.index_levels.at(year - 1) - 1.0;
    }
    return panel;
}

std::map<int, double> simple_returns(const std::map<int, double>& series) {
    if (series.size() < 2)
        throw ValidationError("simple_returns needs at least 2 observations");
    std::map<int, double> out;
    auto prev = series.begin();
    for (auto it = std::next(prev); it != series.end(); ++it, ++prev) {
        if (it->first != prev->first + 1)
            throw ValidationError("simple_returns: years not contiguous at " +
                                  std::to_string(it->first));
        out.emplace(it->first, it->second / prev->second - 1.0);
    }
    return out;
}

double cagr(double start_price, double end_price, int years) {
    if (start_price <= 0.0 || end_price <= 0.0)
        throw ValidationError("cagr: prices must be positive");
    if (years < 1) throw ValidationError("cagr: years must be >= 1");
    return std::pow(end_price / start_price, 1.0 / years) - 1.0;
}

Eigen::VectorXd mean_vector(const ReturnPanel& panel) {
    if (panel.asset_returns.rows() < 1) throw ValidationError("mean_vector: empty panel");
    return panel.asset_returns.colwise().mean();
}

Eigen::MatrixXd covariance_matrix(const ReturnPanel& panel) {
    const Eigen::Index n = panel.asset_returns.rows();
    if (n < 2) throw ValidationError("covariance_matrix needs at least 2 years");
    Eigen::MatrixXd centered =
        panel.asset_returns.rowwise() - panel.asset_returns.colwise().mean();
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
    // Symmetrize bitwise; the product is only symmetric up to rounding.
    cov = ((cov + cov.transpose()) * 0.5).eval();
    return cov;
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw ValidationError("percentile: empty input");
    if (p < 0.0 || p > 1.0) throw ValidationError("percentile: p outside [0,1]");
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const size_t lo = static_cast<size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double sample_stddev(const std::vector<double>& values) {
    if (values.size() < 2) throw ValidationError("sample_stddev needs at least 2 observations");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace greenfolio::analytics
