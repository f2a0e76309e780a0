#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>

#include "greenfolio/scenario.hpp"
#include "greenfolio/types.hpp"
#include "greenfolio/universe.hpp"

namespace greenfolio::pipeline {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct RunConfig {
    std::string assets_path;
    std::string losses_path;
    std::string intensity_path;
    std::string market_path;
    double r_f = 0.0695;
    int sample_count = 20000;
    std::optional<std::uint64_t> seed;  // mandatory; no wall-clock default
    double initial_value = 100.0;
    bool flat_simplex = false;
    std::optional<YearSpan> span;  // default: full market coverage
    universe::ScreeningConfig screening;
    std::optional<std::string> scenario_config_path;
    std::string out_dir = ".";

    void validate() const;
};

/// Parse the run config JSON. Paths in the file are resolved relative to
/// the file's directory.
RunConfig load_run_config(const std::string& path);

enum class Stage { Ingest, Screen, Frontier, Optimize, Backtest, Regress, Scenario, Report, All };

/// Failure of a named stage, carrying the CLI exit code
/// (2 config, 3 data validation, 4 numerical).
struct StageError : std::exception {
    std::string stage;
    std::string cause;
    int exit_code;
    std::string message;
    StageError(std::string s, std::string c, int code)
        : stage(std::move(s)), cause(std::move(c)), exit_code(code),
          message("stage " + stage + ": " + cause) {}
    const char* what() const noexcept override { return message.c_str(); }
};

/// Execute the pipeline up to and including `stage`, writing only that
/// stage's output files (Stage::All writes everything plus manifest.json).
/// On failure every file written by this invocation is removed before the
/// exception propagates.
void run_stage(const RunConfig& config, Stage stage);

inline void run_pipeline(const RunConfig& config) { run_stage(config, Stage::All); }

/// Fixed-format numeric rendering used by every CSV/JSON writer:
/// 10 significant digits, '.' decimal separator.
std::string fmt_num(double v);

}  // namespace greenfolio::pipeline
