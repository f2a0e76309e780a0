#include "greenfolio/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "greenfolio/analytics.hpp"
#include "greenfolio/errors.hpp"
#include "greenfolio/factor.hpp"
#include "greenfolio/frontier.hpp"
#include "greenfolio/ingest.hpp"

namespace greenfolio::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

namespace {

// Round-trip through the canonical text form so JSON output carries the
// same 10-significant-digit values as the CSVs.
double json_num(double v) { return std::stod(fmt_num(v)); }

void RunConfig_require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

}  // namespace

void RunConfig::validate() const {
    RunConfig_require(!assets_path.empty(), "config: inputs.assets missing");
    RunConfig_require(!losses_path.empty(), "config: inputs.losses missing");
    RunConfig_require(!intensity_path.empty(), "config: inputs.intensity missing");
    RunConfig_require(!market_path.empty(), "config: inputs.market missing");
    RunConfig_require(sample_count >= 1, "config: samples must be >= 1");
    RunConfig_require(r_f > -1.0 && r_f < 1.0, "config: rf outside (-1, 1)");
    RunConfig_require(seed.has_value(), "config: seed is required (reproducibility contract)");
    RunConfig_require(initial_value > 0.0, "config: initial_value must be > 0");
    if (span) RunConfig_require(!span->empty(), "config: span.end before span.start");
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) { return (base / p).string(); };

    RunConfig cfg;
    try {
        const auto& inputs = doc.at("inputs");
        cfg.assets_path = resolve(inputs.at("assets").get<std::string>());
        cfg.losses_path = resolve(inputs.at("losses").get<std::string>());
        cfg.intensity_path = resolve(inputs.at("intensity").get<std::string>());
        cfg.market_path = resolve(inputs.at("market").get<std::string>());
        cfg.r_f = doc.value("rf", cfg.r_f);
        cfg.sample_count = doc.value("samples", cfg.sample_count);
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
        cfg.initial_value = doc.value("initial_value", cfg.initial_value);
        cfg.flat_simplex = doc.value("flat_simplex", cfg.flat_simplex);
        if (doc.contains("span"))
            cfg.span = YearSpan{doc.at("span").at("start").get<int>(),
                                doc.at("span").at("end").get<int>()};
        if (doc.contains("screening")) {
            const auto& s = doc.at("screening");
            cfg.screening.min_env_score =
                s.value("min_env_score", cfg.screening.min_env_score);
            cfg.screening.short_cagr_years =
                s.value("short_cagr_years", cfg.screening.short_cagr_years);
            if (s.contains("quota")) {
                cfg.screening.quota.clear();
                for (const auto& [key, value] : s.at("quota").items())
                    cfg.screening.quota[cap_class_from_string(key)] = value.get<int>();
            }
            if (s.contains("metrics")) {
                cfg.screening.ranking_metrics.clear();
                for (const auto& m : s.at("metrics"))
                    cfg.screening.ranking_metrics.push_back(
                        universe::ranking_metric_from_string(m.get<std::string>()));
            }
        }
        if (doc.contains("scenario_config"))
            cfg.scenario_config_path = resolve(doc.at("scenario_config").get<std::string>());
        if (doc.contains("out")) cfg.out_dir = resolve(doc.at("out").get<std::string>());
    } catch (const json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    return cfg;
}

namespace {

// Everything a full run produces, computed lazily stage by stage.
struct PipelineState {
    std::vector<AssetRecord> universe;
    ingest::FactorInputs factors;
    YearSpan span{};
    analytics::ReturnPanel panel;
    Eigen::VectorXd means;
    Eigen::MatrixXd covariance;
    Eigen::VectorXd env_scores;
    std::vector<frontier::PortfolioSample> samples;
    std::optional<frontier::FrontierHull> hull;
    std::size_t optimal_index = 0;
    std::vector<frontier::ValuationSnapshot> valuations;
    std::map<int, double> portfolio_returns;
    std::map<int, double> market_returns;
    std::optional<factor::FactorModelFit> fit;
    scenario::ScenarioConfig scenario_config;
    std::vector<scenario::ScenarioSpec> scenario_specs;
    std::vector<scenario::ScenarioProjection> projections;
    universe::UniverseSummary summary;
};

template <typename Fn>
void stage_guard(const std::string& name, Fn&& fn) {
    try {
        fn();
    } catch (const ConfigError& e) {
        throw StageError(name, e.what(), 2);
    } catch (const ValidationError& e) {
        throw StageError(name, e.what(), 3);
    } catch (const NumericalError& e) {
        throw StageError(name, e.what(), 4);
    }
}

void do_ingest(const RunConfig& cfg, PipelineState& st) {
    auto assets = ingest::load_assets(cfg.assets_path);
    st.factors = ingest::load_factor_series(cfg.losses_path, cfg.intensity_path, cfg.market_path);
    st.span = cfg.span.value_or(YearSpan{st.factors.market.index_levels.begin()->first,
                                         st.factors.market.index_levels.rbegin()->first});
    auto aligned = ingest::align_years(assets, st.factors.market, st.span);
    for (const auto& t : aligned.dropped)
        std::cerr << "note: asset " << t << " dropped (does not cover span "
                  << st.span.start << "-" << st.span.end << ")\n";
    st.universe = std::move(aligned.retained);
}

void do_screen(const RunConfig& cfg, PipelineState& st) {
    st.universe = universe::screen(st.universe, cfg.screening, st.factors.market, st.span);
    st.summary = universe::universe_summary(st.universe);
    st.panel = analytics::build_return_panel(st.universe, st.factors.market, st.span);
    st.means = analytics::mean_vector(st.panel);
    st.covariance = analytics::covariance_matrix(st.panel);
    st.env_scores.resize(static_cast<Eigen::Index>(st.universe.size()));
    for (size_t i = 0; i < st.universe.size(); ++i)
        st.env_scores(static_cast<Eigen::Index>(i)) = st.universe[i].env_score;
}

void do_frontier(const RunConfig& cfg, PipelineState& st) {
    const auto mode = cfg.flat_simplex ? frontier::SamplingMode::FlatSimplex
                                       : frontier::SamplingMode::NormalizedUniform;
    auto weights = frontier::sample_weights(static_cast<int>(st.universe.size()),
                                            cfg.sample_count, *cfg.seed, mode);
    st.samples.clear();
    st.samples.reserve(weights.size());
    std::vector<Eigen::Vector3d> triples;
    triples.reserve(weights.size());
    for (auto& w : weights) {
        auto m = frontier::portfolio_metrics(w, st.means, st.covariance, st.env_scores);
        st.samples.push_back({std::move(w), m.mu, m.sigma, m.es});
        triples.emplace_back(m.mu, m.sigma, m.es);
    }
    if (triples.size() >= 4) st.hull = frontier::build_hull(triples);
}

void do_optimize(const RunConfig& cfg, PipelineState& st) {
    st.optimal_index = frontier::select_optimal(st.samples, cfg.r_f);
}

void do_backtest(const RunConfig& cfg, PipelineState& st) {
    st.valuations = frontier::backtest(st.samples[st.optimal_index].weights, st.universe,
                                       st.span, cfg.initial_value);
    for (size_t i = 1; i < st.valuations.size(); ++i)
        st.portfolio_returns[st.valuations[i].year] =
            st.valuations[i].value / st.valuations[i - 1].value - 1.0;
    st.market_returns = analytics::simple_returns(st.factors.market.index_levels);
}

void do_regress(const RunConfig& cfg, PipelineState& st) {
    auto data = factor::assemble_design(st.portfolio_returns, st.market_returns,
                                        st.factors.losses, st.factors.intensity, cfg.r_f);
    st.fit = factor::ols_fit(data.response, data.design);
}

void do_scenario(const RunConfig& cfg, PipelineState& st) {
    std::vector<scenario::ScenarioSpec> custom;
    if (cfg.scenario_config_path) {
        auto loaded = scenario::load_scenario_config(*cfg.scenario_config_path);
        st.scenario_config = loaded.config;
        custom = std::move(loaded.custom_scenarios);
    }
    st.scenario_specs =
        custom.empty()
            ? scenario::build_default_scenarios(st.factors.losses, st.factors.intensity,
                                                st.factors.market, st.scenario_config)
            : std::move(custom);
    auto inputs = scenario::prepare_inputs(st.factors.losses, st.factors.intensity,
                                           st.factors.market, st.scenario_config);
    std::vector<double> pr, mr;
    for (const auto& [y, r] : st.portfolio_returns) pr.push_back(r);
    for (int t = 0; t < st.panel.market_returns.size(); ++t)
        mr.push_back(st.panel.market_returns(t));
    st.projections = scenario::run_scenarios(*st.fit, st.scenario_specs, inputs, cfg.r_f,
                                             analytics::sample_stddev(pr),
                                             analytics::sample_stddev(mr));
}

// ---- output writers -------------------------------------------------------

class OutputTracker {
public:
    explicit OutputTracker(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

    std::ofstream open(const std::string& name) {
        fs::path p = dir_ / name;
        std::ofstream out(p);
        if (!out) throw ValidationError("cannot write output file: " + p.string());
        written_.push_back(p);
        return out;
    }

    void remove_all() noexcept {
        std::error_code ec;
        for (const auto& p : written_) fs::remove(p, ec);
    }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

void write_samples_csv(OutputTracker& out, const PipelineState& st, double r_f) {
    auto f = out.open("samples.csv");
    f << "index,mu,sigma,es,green_sharpe";
    for (const auto& t : st.panel.tickers) f << ",w_" << t;
    f << '\n';
    for (size_t i = 0; i < st.samples.size(); ++i) {
        const auto& s = st.samples[i];
        f << i << ',' << fmt_num(s.mu) << ',' << fmt_num(s.sigma) << ',' << fmt_num(s.es) << ','
          << fmt_num(frontier::green_sharpe(s.mu, s.sigma, s.es, r_f));
        for (Eigen::Index j = 0; j < s.weights.size(); ++j) f << ',' << fmt_num(s.weights(j));
        f << '\n';
    }
}

void write_hull_json(OutputTracker& out, const PipelineState& st) {
    json doc;
    doc["vertices"] = st.hull->vertices;
    json facets = json::array();
    for (const auto& fc : st.hull->facets) {
        json facet;
        facet["vertices"] = fc.vertices;
        facet["normal"] = {json_num(fc.normal(0)), json_num(fc.normal(1)),
                           json_num(fc.normal(2))};
        facet["offset"] = json_num(fc.offset);
        facets.push_back(facet);
    }
    doc["facets"] = facets;
    out.open("hull.json") << doc.dump(2) << '\n';
}

void write_optimal_json(OutputTracker& out, const PipelineState& st, double r_f) {
    const auto& s = st.samples[st.optimal_index];
    json doc;
    doc["index"] = st.optimal_index;
    doc["mu"] = json_num(s.mu);
    doc["sigma"] = json_num(s.sigma);
    doc["es"] = json_num(s.es);
    doc["green_excess_return"] = json_num(frontier::green_excess_return(s.mu, s.es, r_f));
    doc["green_sharpe"] = json_num(frontier::green_sharpe(s.mu, s.sigma, s.es, r_f));
    json weights;
    for (size_t j = 0; j < st.panel.tickers.size(); ++j)
        weights[st.panel.tickers[j]] = json_num(s.weights(static_cast<Eigen::Index>(j)));
    doc["weights"] = weights;
    out.open("optimal.json") << doc.dump(2) << '\n';
}

void write_backtest_csv(OutputTracker& out, const PipelineState& st) {
    auto f = out.open("backtest.csv");
    f << "year,value,return,market_return\n";
    for (const auto& snap : st.valuations) {
        f << snap.year << ',' << fmt_num(snap.value) << ',';
        auto pr = st.portfolio_returns.find(snap.year);
        if (pr != st.portfolio_returns.end()) f << fmt_num(pr->second);
        f << ',';
        auto mr = st.market_returns.find(snap.year);
        if (mr != st.market_returns.end()) f << fmt_num(mr->second);
        f << '\n';
    }
}

void write_fit_json(OutputTracker& out, const PipelineState& st) {
    const auto& fit = *st.fit;
    static constexpr const char* kNames[4] = {"const", "ind", "pf", "tf"};
    const double coefs[4] = {fit.alpha, fit.beta_market, fit.beta_pf, fit.beta_tf};
    json doc;
    for (int j = 0; j < 4; ++j) {
        json c;
        c["coef"] = json_num(coefs[j]);
        c["std_err"] = json_num(fit.std_errors(j));
        c["t"] = json_num(fit.t_stats(j));
        c["p"] = json_num(fit.p_values(j));
        doc[kNames[j]] = c;
    }
    doc["r_squared"] = json_num(fit.r_squared);
    doc["n_obs"] = fit.n_obs;
    doc["dof"] = fit.dof;
    out.open("fit.json") << doc.dump(2) << '\n';
}

void write_projections_csv(OutputTracker& out, const PipelineState& st) {
    auto f = out.open("projections.csv");
    f << "scenario,year_offset,market_return,pf,tf,portfolio_return\n";
    for (const auto& p : st.projections)
        for (size_t k = 0; k < 3; ++k)
            f << p.name << ',' << k + 1 << ',' << fmt_num(p.market_return[k]) << ','
              << fmt_num(p.pf[k]) << ',' << fmt_num(p.tf[k]) << ','
              << fmt_num(p.portfolio_return[k]) << '\n';
    f << '\n';
    f << "scenario,cum3y_portfolio,cum3y_market,sharpe_portfolio,sharpe_market\n";
    for (const auto& p : st.projections)
        f << p.name << ',' << fmt_num(p.cumulative_3y_portfolio) << ','
          << fmt_num(p.cumulative_3y_market) << ',' << fmt_num(p.ex_ante_sharpe_portfolio) << ','
          << fmt_num(p.ex_ante_sharpe_market) << '\n';
}

void write_manifest_json(OutputTracker& out, const RunConfig& cfg) {
    json doc;
    doc["toolkit_version"] = kToolkitVersion;
    doc["seed"] = *cfg.seed;
    json echo;
    echo["rf"] = json_num(cfg.r_f);
    echo["samples"] = cfg.sample_count;
    echo["initial_value"] = json_num(cfg.initial_value);
    echo["flat_simplex"] = cfg.flat_simplex;
    echo["min_env_score"] = json_num(cfg.screening.min_env_score);
    json quota;
    for (const auto& [cls, n] : cfg.screening.quota) quota[to_string(cls)] = n;
    echo["quota"] = quota;
    json metrics = json::array();
    for (auto m : cfg.screening.ranking_metrics) metrics.push_back(universe::to_string(m));
    echo["metrics"] = metrics;
    echo["inputs"] = {{"assets", cfg.assets_path},
                      {"losses", cfg.losses_path},
                      {"intensity", cfg.intensity_path},
                      {"market", cfg.market_path}};
    doc["config"] = echo;
    out.open("manifest.json") << doc.dump(2) << '\n';
}

void write_report(OutputTracker& out, const PipelineState& st, const RunConfig& cfg) {
    auto f = out.open("report.txt");
    f << "Green portfolio analytics report (toolkit " << kToolkitVersion << ")\n";
    f << "=================================================\n\n";
    f << "Universe: " << st.summary.total << " assets, mean env score "
      << fmt_num(st.summary.mean_env_score) << "\n";
    for (const auto& [cls, n] : st.summary.count_per_class)
        f << "  " << to_string(cls) << ": " << n << "\n";

    const auto& opt = st.samples[st.optimal_index];
    f << "\nOptimal green portfolio (sample " << st.optimal_index << ")\n";
    f << "  mu = " << fmt_num(opt.mu) << ", sigma = " << fmt_num(opt.sigma)
      << ", es = " << fmt_num(opt.es) << "\n";
    f << "  green sharpe = "
      << fmt_num(frontier::green_sharpe(opt.mu, opt.sigma, opt.es, cfg.r_f)) << "\n";
    f << "  weights:\n";
    for (size_t j = 0; j < st.panel.tickers.size(); ++j)
        f << "    " << st.panel.tickers[j] << " = "
          << fmt_num(opt.weights(static_cast<Eigen::Index>(j))) << "\n";

    f << "\nBacktest " << st.span.start << "-" << st.span.end << " (initial "
      << fmt_num(cfg.initial_value) << ")\n";
    f << "  final value " << fmt_num(st.valuations.back().value) << "\n";
    f << "  portfolio CAGR "
      << fmt_num(analytics::cagr(cfg.initial_value, st.valuations.back().value,
                                 st.span.size() - 1))
      << ", market CAGR "
      << fmt_num(analytics::cagr(st.factors.market.index_levels.at(st.span.start),
                                 st.factors.market.index_levels.at(st.span.end),
                                 st.span.size() - 1))
      << "\n";

    const auto& fit = *st.fit;
    static constexpr const char* kNames[4] = {"const", "ind", "pf", "tf"};
    const double coefs[4] = {fit.alpha, fit.beta_market, fit.beta_pf, fit.beta_tf};
    f << "\nFactor model fit (n=" << fit.n_obs << ", dof=" << fit.dof
      << ", R^2=" << fmt_num(fit.r_squared) << ")\n";
    f << "  term        coef          std_err       t             p\n";
    for (int j = 0; j < 4; ++j) {
        char line[160];
        std::snprintf(line, sizeof(line), "  %-8s %13s %13s %13s %13s\n", kNames[j],
                      fmt_num(coefs[j]).c_str(), fmt_num(fit.std_errors(j)).c_str(),
                      fmt_num(fit.t_stats(j)).c_str(), fmt_num(fit.p_values(j)).c_str());
        f << line;
    }

    f << "\nScenario projections (3-year horizon)\n";
    for (const auto& p : st.projections) {
        f << "  " << p.name << ": cum3y portfolio " << fmt_num(p.cumulative_3y_portfolio)
          << ", cum3y market " << fmt_num(p.cumulative_3y_market) << ", sharpe portfolio "
          << fmt_num(p.ex_ante_sharpe_portfolio) << ", sharpe market "
          << fmt_num(p.ex_ante_sharpe_market) << "\n";
    }
}

}  // namespace

void run_stage(const RunConfig& config, Stage stage) {
    config.validate();
    PipelineState st;

    auto reached = [&](Stage s) {
        return stage == Stage::All || static_cast<int>(stage) >= static_cast<int>(s);
    };

    stage_guard("ingest", [&] { do_ingest(config, st); });
    if (!reached(Stage::Screen)) {
        std::cout << "ingest ok: " << st.universe.size() << " assets aligned over "
                  << st.span.start << "-" << st.span.end << '\n';
        return;
    }
    stage_guard("screen", [&] { do_screen(config, st); });
    if (reached(Stage::Frontier)) stage_guard("frontier", [&] { do_frontier(config, st); });
    if (reached(Stage::Optimize)) stage_guard("optimize", [&] { do_optimize(config, st); });
    if (reached(Stage::Backtest)) stage_guard("backtest", [&] { do_backtest(config, st); });
    if (reached(Stage::Regress)) stage_guard("regress", [&] { do_regress(config, st); });
    if (reached(Stage::Scenario)) stage_guard("scenario", [&] { do_scenario(config, st); });

    OutputTracker out(config.out_dir);
    try {
        const bool all = stage == Stage::All;
        if (all || stage == Stage::Frontier) {
            write_samples_csv(out, st, config.r_f);
            if (st.hull) write_hull_json(out, st);
        }
        if (all || stage == Stage::Optimize) write_optimal_json(out, st, config.r_f);
        if (all || stage == Stage::Backtest) write_backtest_csv(out, st);
        if (all || stage == Stage::Regress) write_fit_json(out, st);
        if (all || stage == Stage::Scenario) write_projections_csv(out, st);
        if (all || stage == Stage::Report) write_report(out, st, config);
        if (all) write_manifest_json(out, config);
        if (stage == Stage::Screen) {
            std::cout << "universe: " << st.summary.total << " assets, mean env score "
                      << fmt_num(st.summary.mean_env_score) << '\n';
        }
    } catch (...) {
        out.remove_all();
        throw;
    }
}

}  // namespace greenfolio::pipeline
