#include "greenfolio/scenario.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "greenfolio/analytics.hpp"
#include "greenfolio/errors.hpp"

namespace greenfolio::scenario {

void ScenarioSpec::validate() const {
    if (tf_decrement <= 0.0)
        throw ValidationError("scenario " + name + ": tf_decrement must be > 0");
    for (const auto& y : years) {
        const bool has_pct = y.pf_percentile.has_value();
        const bool has_abs = y.pf_absolute.has_value();
        if (has_pct == has_abs)
            throw ValidationError("scenario " + name +
                                  ": exactly one of pf_percentile / pf_absolute per year");
        if (has_pct && (*y.pf_percentile < 0.0 || *y.pf_percentile > 1.0))
            throw ValidationError("scenario " + name + ": pf_percentile outside [0,1]");
        if (has_abs && *y.pf_absolute < 0.0)
            throw ValidationError("scenario " + name + ": pf_absolute must be >= 0");
    }
}

LoadedScenarioConfig load_scenario_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario config: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("scenario config " + path + ": " + e.what());
    }
    LoadedScenarioConfig out;
    auto& cfg = out.config;
    try {
        cfg.pf_window_years = doc.value("pf_window_years", cfg.pf_window_years);
        cfg.high_y2_market_reduction =
            doc.value("high_y2_market_reduction", cfg.high_y2_market_reduction);
        cfg.stress_y3_market_premium =
            doc.value("stress_y3_market_premium", cfg.stress_y3_market_premium);
        cfg.stress_y3_pf_percentile =
            doc.value("stress_y3_pf_percentile", cfg.stress_y3_pf_percentile);
        if (doc.contains("scenarios")) {
            for (const auto& s : doc.at("scenarios")) {
                ScenarioSpec spec;
                spec.name = s.at("name").get<std::string>();
                spec.tf_decrement = s.at("tf_decrement").get<double>();
                const auto& years = s.at("years");
                if (years.size() != 3)
                    throw ConfigError("scenario " + spec.name + ": expected exactly 3 years");
                for (size_t i = 0; i < 3; ++i) {
                    const auto& y = years[i];
                    if (y.contains("market_return"))
                        spec.years[i].market_return = y.at("market_return").get<double>();
                    if (y.contains("pf_percentile"))
                        spec.years[i].pf_percentile = y.at("pf_percentile").get<double>();
                    if (y.contains("pf_absolute_usd_bn"))
                        spec.years[i].pf_absolute = y.at("pf_absolute_usd_bn").get<double>();
                }
                spec.validate();
                out.custom_scenarios.push_back(std::move(spec));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("scenario config " + path + ": " + e.what());
    }
    if (cfg.pf_window_years < 1) throw ConfigError("pf_window_years must be >= 1");
    if (cfg.stress_y3_pf_percentile <= 0.80)
        throw ConfigError("stress_y3_pf_percentile must exceed 0.80");
    return out;
}

double baseline_market_rate(const MarketSeries& market) {
    if (static_cast<int>(market.index_levels.size()) < 21)
        throw ValidationError("baseline_market_rate needs at least 21 yearly index levels");
    const int last = market.index_levels.rbegin()->first;
    const double end = market.index_levels.at(last);
    double sum = 0.0;
    for (int horizon : {10, 15, 20})
        sum += analytics::cagr(market.index_levels.at(last - horizon), end, horizon);
    return sum / 3.0;
}

ScenarioInputs prepare_inputs(const LossSeries& losses, const IntensitySeries& intensity,
                              const MarketSeries& market, const ScenarioConfig& config) {
    if (static_cast<int>(losses.entries.size()) < config.pf_window_years)
        throw ValidationError("scenario inputs: need at least " +
                              std::to_string(config.pf_window_years) + " years of losses, have " +
                              std::to_string(losses.entries.size()));
    if (intensity.entries.empty()) throw ValidationError("scenario inputs: no intensity data");

    ScenarioInputs in;
    in.baseline_market = baseline_market_rate(market);
    auto it = losses.entries.rbegin();
    for (int k = 0; k < config.pf_window_years; ++k, ++it)
        in.trailing_losses.push_back(it->second);
    in.last_intensity = intensity.entries.rbegin()->second;
    in.last_data_year = std::max(market.index_levels.rbegin()->first,
                                 intensity.entries.rbegin()->first);
    return in;
}

std::vector<ScenarioSpec> build_default_scenarios(const LossSeries& losses,
                                                  const IntensitySeries& intensity,
                                                  const MarketSeries& market,
                                                  const ScenarioConfig& config) {
    // Validates history depth; the returned inputs themselves are recomputed
    // by run_scenarios callers via prepare_inputs.
    const ScenarioInputs inputs = prepare_inputs(losses, intensity, market, config);
    const double baseline = inputs.baseline_market;

    auto pct = [](double p) {
        YearRule r;
        r.pf_percentile = p;
        return r;
    };

    std::vector<ScenarioSpec> specs(4);

    specs[0].name = "reference";
    specs[0].tf_decrement = 0.006;
    for (auto& y : specs[0].years) y = pct(0.50);

    specs[1].name = "mild";
    specs[1].tf_decrement = 0.008;
    specs[1].years = {pct(0.50), pct(0.70), pct(0.70)};

    specs[2].name = "high";
    specs[2].tf_decrement = 0.0095;
    specs[2].years = {pct(0.70), pct(0.85), pct(0.80)};
    specs[2].years[1].market_return = baseline - config.high_y2_market_reduction;

    specs[3].name = "stress";
    specs[3].tf_decrement = 0.0105;
    specs[3].years = {pct(0.75), YearRule{}, pct(config.stress_y3_pf_percentile)};
    specs[3].years[1].pf_absolute = 25.0;  // extreme physical-risk event, USD bn
    specs[3].years[1].market_return = -0.075;
    specs[3].years[2].market_return = baseline + config.stress_y3_market_premium;

    for (const auto& s : specs) s.validate();
    return specs;
}

std::array<double, 3> project_tf(double last_intensity, double decrement) {
    if (decrement <= 0.0) throw ValidationError("project_tf: decrement must be > 0");
    std::array<double, 3> out{};
    for (int k = 0; k < 3; ++k) {
        out[static_cast<size_t>(k)] = last_intensity - decrement * (k + 1);
        if (out[static_cast<size_t>(k)] <= 0.0)
            throw ValidationError("project_tf: intensity would go non-positive by year " +
                                  std::to_string(k + 1));
    }
    return out;
}

double project_portfolio_return(const factor::FactorModelFit& fit, double market_return,
                                double pf_value, double tf_value, double r_f) {
    return r_f + fit.alpha + fit.beta_market * (market_return - r_f) + fit.beta_pf * pf_value +
           fit.beta_tf * tf_value;
}

double cumulative_return(const std::vector<double>& yearly) {
    double acc = 1.0;
    for (double r : yearly) {
        if (r <= -1.0) throw ValidationError("cumulative_return: yearly return <= -100%");
        acc *= 1.0 + r;
    }
    return acc - 1.0;
}

double ex_ante_sharpe(const std::array<double, 3>& projected_yearly, double historical_sigma,
                      double r_f) {
    if (historical_sigma <= 0.0)
        throw ValidationError("ex_ante_sharpe: historical sigma must be > 0");
    const double mean =
        (projected_yearly[0] + projected_yearly[1] + projected_yearly[2]) / 3.0;
    return (mean - r_f) / historical_sigma;
}

std::vector<ScenarioProjection> run_scenarios(const factor::FactorModelFit& fit,
                                              const std::vector<ScenarioSpec>& specs,
                                              const ScenarioInputs& inputs, double r_f,
                                              double historical_sigma_portfolio,
                                              double historical_sigma_market) {
    std::vector<ScenarioProjection> out;
    out.reserve(specs.size());
    for (const auto& spec : specs) {
        spec.validate();
        ScenarioProjection proj;
        proj.name = spec.name;
        proj.tf = project_tf(inputs.last_intensity, spec.tf_decrement);
        for (size_t k = 0; k < 3; ++k) {
            const auto& rule = spec.years[k];
            proj.years[k] = inputs.last_data_year + static_cast<int>(k) + 1;
            proj.market_return[k] = rule.market_return.value_or(inputs.baseline_market);
            proj.pf[k] = rule.pf_absolute
                             ? *rule.pf_absolute
                             : analytics::percentile(inputs.trailing_losses, *rule.pf_percentile);
            proj.portfolio_return[k] = project_portfolio_return(
                fit, proj.market_return[k], proj.pf[k], proj.tf[k], r_f);
        }
        proj.cumulative_3y_portfolio = cumulative_return(
            {proj.portfolio_return[0], proj.portfolio_return[1], proj.portfolio_return[2]});
        proj.cumulative_3y_market = cumulative_return(
            {proj.market_return[0], proj.market_return[1], proj.market_return[2]});
        proj.ex_ante_sharpe_portfolio =
            ex_ante_sharpe(proj.portfolio_return, historical_sigma_portfolio, r_f);
        proj.ex_ante_sharpe_market =
            ex_ante_sharpe(proj.market_return, historical_sigma_market, r_f);
        out.push_back(std::move(proj));
    }
    return out;
}

}  // namespace greenfolio::scenario
