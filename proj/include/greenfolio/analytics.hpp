#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "greenfolio/types.hpp"

namespace greenfolio::analytics {

/// Aligned per-year simple returns for a set of assets plus the market index.
/// Row t of `asset_returns` holds the returns realized in years[t].
struct ReturnPanel {
    std::vector<int> years;
    std::vector<std::string> tickers;
    Eigen::MatrixXd asset_returns;   // years.size() x tickers.size()
    Eigen::VectorXd market_returns;  // years.size()
};

/// Build the aligned panel over `span` (return years span.start+1 .. span.end).
/// Assets must already cover the span; see ingest::align_years.
ReturnPanel build_return_panel(const std::vector<AssetRecord>& assets, const MarketSeries& market,
                               YearSpan span);

/// Simple annual returns: r(y) = price(y)/price(y-1) - 1.
std::map<int, double> simple_returns(const std::map<int, double>& series);

/// Compound annual growth rate (end/start)^(1/years) - 1.
double cagr(double start_price, double end_price, int years);

/// Arithmetic mean of each asset column.
Eigen::VectorXd mean_vector(const ReturnPanel& panel);

/// Sample covariance (denominator n-1), exactly symmetric by construction.
Eigen::MatrixXd covariance_matrix(const ReturnPanel& panel);

/// Linear-interpolation percentile: h = p*(n-1) over the sorted values.
double percentile(std::vector<double> values, double p);

inline double excess_over_market(double asset_cagr, double market_cagr) {
    return asset_cagr - market_cagr;
}

/// Sample standard deviation (n-1) of a return series.
double sample_stddev(const std::vector<double>& values);

}  // namespace greenfolio::analytics
