#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "greenfolio/hull.hpp"
#include "greenfolio/types.hpp"

namespace greenfolio::frontier {

constexpr double kDefaultRiskFree = 0.0695;  // one-year sovereign bond yield
constexpr int kDefaultSampleCount = 20000;

/// A long-only weight vector with its (expected return, volatility,
/// environmental score) triple.
struct PortfolioSample {
    Eigen::VectorXd weights;
    double mu = 0.0;
    double sigma = 0.0;
    double es = 0.0;
};

enum class SamplingMode {
    NormalizedUniform,  // iid U(0,1) draws divided by their sum
    FlatSimplex         // Dirichlet(1,...,1), for sensitivity checks
};

/// Deterministic random weight vectors: `count` vectors of `n_assets`
/// non-negative weights summing to 1.
std::vector<Eigen::VectorXd> sample_weights(int n_assets, int count, std::uint64_t seed,
                                            SamplingMode mode = SamplingMode::NormalizedUniform);

struct MetricTriple {
    double mu;
    double sigma;
    double es;
};

/// mu = m.w, sigma = sqrt(w'Cw), es = es.w.
MetricTriple portfolio_metrics(const Eigen::VectorXd& weights, const Eigen::VectorXd& means,
                               const Eigen::MatrixXd& covariance,
                               const Eigen::VectorXd& env_scores);

/// (mu - r_f) * es
double green_excess_return(double mu, double es, double r_f);

/// ((mu - r_f) / sigma) * es — the Sharpe ratio scaled by the portfolio
/// environmental score.
double green_sharpe(double mu, double sigma, double es, double r_f);

/// Argmax of green_sharpe; ties break on lower sigma, then lower index.
/// Returns the index into `samples`.
std::size_t select_optimal(const std::vector<PortfolioSample>& samples, double r_f);

/// One year of a buy-and-hold valuation.
struct ValuationSnapshot {
    int year = 0;
    Eigen::VectorXd units;   // x_i, fixed over the whole backtest
    Eigen::VectorXd prices;  // S_i(year)
    double value = 0.0;      // sum x_i * S_i(year)
};

/// Buy-and-hold backtest: units bought at the span's start year, held fixed.
std::vector<ValuationSnapshot> backtest(const Eigen::VectorXd& weights,
                                        const std::vector<AssetRecord>& assets, YearSpan span,
                                        double initial_value = 100.0);

}  // namespace greenfolio::frontier
