#pragma once

#include "kuramoto/analysis.hpp"
#include "kuramoto/integrator.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace kuramoto::cli {

/// t, theta_1..theta_n, omega_1..omega_n, D_theta, D_omega, Q, P, A, B, E1, E2
[[nodiscard]] std::vector<std::string> run_csv_header(std::size_t n);

/// 17 significant digits, so strtod recovers the exact double.
[[nodiscard]] std::string format_double(double x);

/// One row per recorded state. `series` must come from diagnostics() on `traj`.
void write_run_csv(std::ostream& out, const Trajectory& traj, const DiagnosticsSeries& series);

/// Column-oriented numeric table.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns;

    [[nodiscard]] std::size_t rows() const noexcept { return columns.empty() ? 0 : columns.front().size(); }
    /// Index of the named column; throws ConfigError if absent.
    [[nodiscard]] std::size_t index_of(const std::string& name) const;
    [[nodiscard]] const std::vector<double>& column(const std::string& name) const { return columns[index_of(name)]; }
};

/// Throws ConfigError on an empty input, ragged rows or non-numeric cells.
[[nodiscard]] CsvTable read_csv(std::istream& in);

/// Rebuilds the recorded states from the t/theta/omega columns.
/// Throws ConfigError when the header does not match run_csv_header(params.size()).
[[nodiscard]] Trajectory trajectory_from_table(const CsvTable& table, const ModelParams& params);

}  // namespace kuramoto::cli
