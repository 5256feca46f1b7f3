#include "kuramoto/cli/csv_io.hpp"

#include "kuramoto/cli/run_config.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace kuramoto::cli {

std::vector<std::string> run_csv_header(std::size_t n) {
    std::vector<std::string> h{"t"};
    for (std::size_t i = 1; i <= n; ++i) h.push_back("theta_" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) h.push_back("omega_" + std::to_string(i));
    for (const char* name : {"D_theta", "D_omega", "Q", "P", "A", "B", "E1", "E2"}) h.emplace_back(name);
    return h;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_run_csv(std::ostream& out, const Trajectory& traj, const DiagnosticsSeries& series) {
    if (series.size() != traj.size()) throw ArgumentError("diagnostics do not match the trajectory");
    const auto header = run_csv_header(traj.params.size());
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';

    std::string line;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const State& s = traj.states[k];
        line = format_double(s.t);
        const auto put = [&line](double v) {
            line += ',';
            line += format_double(v);
        };
        for (double v : s.theta) put(v);
        for (double v : s.omega) put(v);
        for (const auto* col : {&series.d_theta, &series.d_omega, &series.q, &series.p, &series.a, &series.b,
                                &series.e1, &series.e2}) {
            put((*col)[k]);
        }
        out << line << '\n';
    }
}

std::size_t CsvTable::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw ConfigError("unknown column '" + name + "'");
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("CSV is empty");
    strip_cr(line);
    table.header = split(line);
    if (table.header.empty()) throw ConfigError("CSV header is empty");
    table.columns.resize(table.header.size());

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != table.header.size()) {
            throw ConfigError("CSV line " + std::to_string(line_no) + ": expected " +
                              std::to_string(table.header.size()) + " cells, found " + std::to_string(cells.size()));
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const char* begin = cells[c].c_str();
            char* end = nullptr;
            errno = 0;
            const double v = std::strtod(begin, &end);
            if (end == begin || *end != '\0') {
                throw ConfigError("CSV line " + std::to_string(line_no) + ", column '" + table.header[c] +
                                  "': not a number");
            }
            table.columns[c].push_back(v);
        }
    }
    return table;
}

Trajectory trajectory_from_table(const CsvTable& table, const ModelParams& params) {
    const std::size_t n = params.size();
    const auto expected = run_csv_header(n);
    if (table.header != expected) {
        throw ConfigError("CSV header does not match the run schema for n = " + std::to_string(n));
    }
    Trajectory traj;
    traj.params = params;
    traj.states.resize(table.rows());
    for (std::size_t k = 0; k < table.rows(); ++k) {
        State& s = traj.states[k];
        s.t = table.columns[0][k];
        s.theta.resize(n);
        s.omega.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            s.theta[i] = table.columns[1 + i][k];
            s.omega[i] = table.columns[1 + n + i][k];
        }
    }
    return traj;
}

}  // namespace kuramoto::cli
