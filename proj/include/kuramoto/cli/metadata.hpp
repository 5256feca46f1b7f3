#pragma once

#include "kuramoto/analysis.hpp"
#include "kuramoto/cli/run_config.hpp"
#include "kuramoto/energy.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace kuramoto::cli {

/// Finite numbers stay numbers; infinities and NaN become the strings "inf", "-inf", "nan".
[[nodiscard]] nlohmann::json number_json(double x);

[[nodiscard]] nlohmann::json to_json(const ConditionCheck& check);
[[nodiscard]] nlohmann::json to_json(const ConditionReport& report);
[[nodiscard]] nlohmann::json to_json(const CertificateReport& report);

/// Post-processing of a completed (or partial) simulation.
struct RunSummary {
    std::string status = "completed";  ///< "completed" or "diverged"
    std::size_t samples = 0;
    double t_final = 0.0;
    double d_theta_final = 0.0;
    double d_omega_final = 0.0;
    double max_d_theta = 0.0;
    std::optional<double> t_star;
    std::optional<double> fitted_rate;
    std::optional<TimeWindow> fit_window;
    std::string fit_note;
};

/// Metadata of one simulation: resolved config (reloadable by parse_run_config),
/// provenance of auto values, condition report, and the run summary.
[[nodiscard]] nlohmann::json run_metadata(const ResolvedRun& run, const ConditionReport& conditions,
                                          const RunSummary& summary);

/// Recovers the resolved configuration embedded by run_metadata.
[[nodiscard]] RunConfig config_from_metadata(const nlohmann::json& meta);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);
[[nodiscard]] nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace kuramoto::cli
