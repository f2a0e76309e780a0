#include "greenfolio/frontier.hpp"

#include <cmath>
#include <random>

#include "greenfolio/errors.hpp"

namespace greenfolio::frontier {

std::vector<Eigen::VectorXd> sample_weights(int n_assets, int count, std::uint64_t seed,
                                            SamplingMode mode) {
    if (n_assets < 1) throw ValidationError("sample_weights: n_assets must be >= 1");
    if (count < 1) throw ValidationError("sample_weights: count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<Eigen::VectorXd> out;
    out.reserve(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
        Eigen::VectorXd w(n_assets);
        for (int i = 0; i < n_assets; ++i) {
            double u = unif(rng);
            while (u <= 0.0) u = unif(rng);  // guard the open interval
            w(i) = mode == SamplingMode::FlatSimplex ? -std::log(u) : u;
        }
        out.push_back(w / w.sum());
    }
    return out;
}

MetricTriple portfolio_metrics(const Eigen::VectorXd& weights, const Eigen::VectorXd& means,
                               const Eigen::MatrixXd& covariance,
                               const Eigen::VectorXd& env_scores) {
    const Eigen::Index n = weights.size();
    if (means.size() != n || env_scores.size() != n || covariance.rows() != n ||
        covariance.cols() != n)
        throw ValidationError("portfolio_metrics: dimension mismatch");
    const double variance = weights.dot(covariance * weights);
    if (variance < -1e-12)
        throw NumericalError("portfolio_metrics: negative portfolio variance (C not PSD)");
    return MetricTriple{means.dot(weights), std::sqrt(std::max(variance, 0.0)),
                        env_scores.dot(weights)};
}

double green_excess_return(double mu, double es, double r_f) {
    if (es < 0.0 || es > 100.0)
        throw ValidationError("green_excess_return: es outside [0,100]");
    return (mu - r_f) * es;
}

double green_sharpe(double mu, double sigma, double es, double r_f) {
    if (sigma <= 0.0) throw NumericalError("green_sharpe: sigma must be > 0");
    return ((mu - r_f) / sigma) * es;
}

std::size_t select_optimal(const std::vector<PortfolioSample>& samples, double r_f) {
    if (samples.empty()) throw ValidationError("select_optimal: empty sample set");
    std::size_t best = 0;
    double best_metric = green_sharpe(samples[0].mu, samples[0].sigma, samples[0].es, r_f);
    for (std::size_t i = 1; i < samples.size(); ++i) {
        double m = green_sharpe(samples[i].mu, samples[i].sigma, samples[i].es, r_f);
        if (m > best_metric || (m == best_metric && samples[i].sigma < samples[best].sigma)) {
            best = i;
            best_metric = m;
        }
    }
    return best;
}

std::vector<ValuationSnapshot> backtest(const Eigen::VectorXd& weights,
                                        const std::vector<AssetRecord>& assets, YearSpan span,
                                        double initial_value) {
    if (initial_value <= 0.0) throw ValidationError("backtest: initial_value must be > 0");
    if (weights.size() != static_cast<Eigen::Index>(assets.size()))
        throw ValidationError("backtest: weights/assets size mismatch");
    if (span.empty()) throw ValidationError("backtest: empty span");
    for (const auto& rec : assets)
        if (!rec.covers(span.start, span.end))
            throw ValidationError("backtest: asset " + rec.ticker + " missing years in span");

    const Eigen::Index n = weights.size();
    Eigen::VectorXd start_prices(n);
    for (Eigen::Index i = 0; i < n; ++i)
        start_prices(i) = assets[static_cast<size_t>(i)].prices.at(span.start);
    const Eigen::VectorXd units =
        (weights * initial_value).cwiseQuotient(start_prices);

    std::vector<ValuationSnapshot> out;
    out.reserve(static_cast<size_t>(span.size()));
    for (int year = span.start; year <= span.end; ++year) {
        ValuationSnapshot snap;
        snap.year = year;
        snap.units = units;
        snap.prices.resize(n);
        for (Eigen::Index i = 0; i < n; ++i)
            snap.prices(i) = assets[static_cast<size_t>(i)].prices.at(year);
        // At the start year the valuation is the invested amount by
        // construction; pin it to avoid rounding drift in the first row.
        snap.value = year == span.start ? initial_value : units.dot(snap.prices);
        out.push_back(std::move(snap));
    }
    return out;
}

}  // namespace greenfolio::frontier
