#pragma once

#include "kuramoto/analysis.hpp"
#include "kuramoto/cli/metadata.hpp"
#include "kuramoto/cli/run_config.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kuramoto::cli {

/// Process exit codes; every outcome maps to exactly one.
enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 1,
    kExitConditionFailure = 2,
    kExitDivergence = 3,
    kExitResolution = 4,
};

struct CommandOptions {
    bool allow_disconnected = false;
    bool force_dt = false;
    std::optional<double> threshold;      ///< overrides analysis.threshold
    std::optional<TimeWindow> window;     ///< plot restriction
    std::optional<unsigned> workers;      ///< overrides sweep.workers
    std::vector<std::string> columns;     ///< plot selection; empty means the default panels
    std::filesystem::path out_dir = ".";
};

/// Simulation plus post-processing, shared by simulate, certify and sweep.
struct RunOutcome {
    ResolvedRun run;
    ConditionReport conditions;
    Trajectory trajectory;
    DiagnosticsSeries series;
    RunSummary summary;
    bool diverged = false;
};

/// Resolves, simulates and summarises. A divergence is caught and reported through
/// `diverged` with the partial trajectory kept. Throws ArgumentError / StepBudgetError
/// on unusable input, including a disconnected graph unless `allow_disconnected`.
[[nodiscard]] RunOutcome execute_run(const RunConfig& cfg, const CommandOptions& opts);

int cmd_check(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
/// `input` is a JSON config or a run CSV with its .meta file alongside.
int cmd_certify(const std::string& input, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_plot(const std::string& csv_path, const CommandOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace kuramoto::cli
