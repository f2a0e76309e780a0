// greenfolio: green-portfolio analytics pipeline CLI.
//
// Exit codes: 0 success, 2 config error, 3 data validation error,
// 4 numerical error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "greenfolio/errors.hpp"
#include "greenfolio/pipeline.hpp"

namespace {

using greenfolio::pipeline::RunConfig;
using greenfolio::pipeline::Stage;

struct CliOverrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<double> rf;
    std::optional<std::string> out;
};

RunConfig effective_config(const CliOverrides& cli) {
    RunConfig cfg = greenfolio::pipeline::load_run_config(cli.config_path);
    if (cli.seed) cfg.seed = *cli.seed;
    if (cli.samples) cfg.sample_count = *cli.samples;
    if (cli.rf) cfg.r_f = *cli.rf;
    if (cli.out) cfg.out_dir = *cli.out;
    return cfg;
}

int execute(const CliOverrides& cli, Stage stage) {
    try {
        greenfolio::pipeline::run_stage(effective_config(cli), stage);
        return 0;
    } catch (const greenfolio::pipeline::StageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code;
    } catch (const greenfolio::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const greenfolio::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const greenfolio::NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Environment-score-augmented portfolio analytics toolkit"};
    app.require_subcommand(1);

    CliOverrides cli;
    Stage stage = Stage::All;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", cli.config_path, "Run config JSON")->required();
        sub->add_option("--seed", cli.seed, "Override RNG seed");
        sub->add_option("--samples", cli.samples, "Override Monte Carlo sample count");
        sub->add_option("--rf", cli.rf, "Override risk-free rate");
        sub->add_option("--out", cli.out, "Override output directory");
    };

    const std::pair<const char*, Stage> stages[] = {
        {"run", Stage::All},
        {"ingest", Stage::Ingest},
        {"screen", Stage::Screen},
        {"frontier", Stage::Frontier},
        {"optimize", Stage::Optimize},
        {"backtest", Stage::Backtest},
        {"regress", Stage::Regress},
        {"scenario", Stage::Scenario},
        {"report", Stage::Report},
    };
    const char* descriptions[] = {
        "Run the full pipeline and write every output file",
        "Load and validate all input files",
        "Screen the asset universe and print a summary",
        "Sample portfolios and build the green efficient frontier",
        "Select the optimal green portfolio",
        "Buy-and-hold backtest of the optimal portfolio",
        "Fit the climate-extended CAPM",
        "Project scenarios and the stress case",
        "Write the aggregated human-readable report",
    };
    int idx = 0;
    for (const auto& [name, s] : stages) {
        CLI::App* sub = app.add_subcommand(name, descriptions[idx++]);
        add_common(sub);
        sub->callback([&cli, &stage, s] { stage = s; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return execute(cli, stage);
}
