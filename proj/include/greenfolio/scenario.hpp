#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "greenfolio/factor.hpp"
#include "greenfolio/types.hpp"

namespace greenfolio::scenario {

/// Per-year predictor rules. An unset market_return means "baseline rate";
/// exactly one of pf_percentile / pf_absolute must be set (percentile over
/// the trailing losses window, absolute in USD bn).
struct YearRule {
    std::optional<double> market_return;
    std::optional<double> pf_percentile;
    std::optional<double> pf_absolute;
};

struct ScenarioSpec {
    std::string name;
    double tf_decrement = 0.0;  // tCO2 per 1000 USD, subtracted per year
    std::array<YearRule, 3> years;

    void validate() const;
};

/// Knobs the source material leaves numerically open, with shipped defaults.
struct ScenarioConfig {
    int pf_window_years = 10;                 // trailing losses window
    double high_y2_market_reduction = 0.05;   // high scenario Y2: baseline - x
    double stress_y3_market_premium = 0.02;   // stress Y3 bounce: baseline + x
    double stress_y3_pf_percentile = 0.85;    // "above 80th percentile"
};

/// Parse a JSON scenario config; absent keys keep their defaults. An
/// optional "scenarios" array fully replaces the default four specs.
struct LoadedScenarioConfig {
    ScenarioConfig config;
    std::vector<ScenarioSpec> custom_scenarios;  // empty -> use defaults
};

LoadedScenarioConfig load_scenario_config(const std::string& path);

/// History digested for resolution: baseline market rate, trailing losses
/// window and the last observed intensity.
struct ScenarioInputs {
    double baseline_market = 0.0;
    std::vector<double> trailing_losses;
    double last_intensity = 0.0;
    int last_data_year = 0;
};

ScenarioInputs prepare_inputs(const LossSeries& losses, const IntensitySeries& intensity,
                              const MarketSeries& market, const ScenarioConfig& config);

/// The four default scenarios (reference, mild, high, stress).
std::vector<ScenarioSpec> build_default_scenarios(const LossSeries& losses,
                                                  const IntensitySeries& intensity,
                                                  const MarketSeries& market,
                                                  const ScenarioConfig& config);

/// Mean of the trailing 10y/15y/20y index CAGRs ending at the latest year.
double baseline_market_rate(const MarketSeries& market);

/// [L-d, L-2d, L-3d]; errors if any level would be non-positive.
std::array<double, 3> project_tf(double last_intensity, double decrement);

/// r_f + alpha + b1 (r_m - r_f) + b2 PF + b3 TF.
double project_portfolio_return(const factor::FactorModelFit& fit, double market_return,
                                double pf_value, double tf_value, double r_f);

/// Prod(1 + r_t) - 1.
double cumulative_return(const std::vector<double>& yearly);

/// (mean(projected) - r_f) / historical_sigma.
double ex_ante_sharpe(const std::array<double, 3>& projected_yearly, double historical_sigma,
                      double r_f);

struct ScenarioProjection {
    std::string name;
    std::array<int, 3> years{};  // calendar years (last data year + 1..3)
    std::array<double, 3> market_return{};
    std::array<double, 3> pf{};
    std::array<double, 3> tf{};
    std::array<double, 3> portfolio_return{};
    double cumulative_3y_portfolio = 0.0;
    double cumulative_3y_market = 0.0;
    double ex_ante_sharpe_portfolio = 0.0;
    double ex_ante_sharpe_market = 0.0;
};

/// Evaluate every scenario: portfolio returns through the fitted model,
/// market returns straight from the spec rules.
std::vector<ScenarioProjection> run_scenarios(const factor::FactorModelFit& fit,
                                              const std::vector<ScenarioSpec>& specs,
                                              const ScenarioInputs& inputs, double r_f,
                                              double historical_sigma_portfolio,
                                              double historical_sigma_market);

}  // namespace greenfolio::scenario
