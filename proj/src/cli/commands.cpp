#include "kuramoto/cli/commands.hpp"

#include "kuramoto/cli/csv_io.hpp"
#include "kuramoto/cli/svg_plot.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

namespace kuramoto::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const char* const kDisconnectedMessage =
    "the coupling graph is not strongly connected, so the synchronization hypothesis fails; "
    "pass --allow-disconnected to simulate anyway";

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

RunSummary summarize(const Trajectory& traj, const DiagnosticsSeries& series, const TheoryConfig& theory,
                     const std::optional<TimeWindow>& requested_window) {
    RunSummary s;
    s.samples = traj.size();
    if (traj.size() == 0) return s;
    s.t_final = series.t.back();
    s.d_theta_final = series.d_theta.back();
    s.d_omega_final = series.d_omega.back();
    s.max_d_theta = *std::max_element(series.d_theta.begin(), series.d_theta.end());
    s.t_star = detect_t_star(series, theory);

    std::optional<TimeWindow> window = requested_window;
    if (!window && s.t_star) window = TimeWindow{*s.t_star, s.t_final};
    if (!window) {
        s.fit_note = "no t_star detected, so no default fit window";
        return s;
    }
    s.fit_window = window;
    try {
        s.fitted_rate = fit_decay_rate(series.t, series.d_omega, *window);
    } catch (const std::exception& e) {
        s.fit_note = e.what();
    }
    return s;
}

RunOutcome finish(ResolvedRun run, ConditionReport conditions, Trajectory traj, bool diverged,
                  const std::optional<TimeWindow>& fit_window) {
    RunOutcome o;
    o.series = diagnostics(traj, run.theory);
    o.summary = summarize(traj, o.series, run.theory, fit_window);
    if (diverged) o.summary.status = "diverged";
    o.diverged = diverged;
    o.run = std::move(run);
    o.conditions = std::move(conditions);
    o.trajectory = std::move(traj);
    return o;
}

void write_run_files(const RunOutcome& o, const fs::path& dir) {
    ensure_out_dir(dir);
    std::ofstream csv(dir / "run.csv");
    if (!csv) throw ConfigError("cannot write '" + (dir / "run.csv").string() + "'");
    write_run_csv(csv, o.trajectory, o.series);
    write_json_file(dir / "run.meta", run_metadata(o.run, o.conditions, o.summary));
}

/// Runs `body`, translating the shared error types into exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ResolutionError& e) {
        err << "error: " << e.what() << '\n';
        if (e.suggested_dt() > 0.0) {
            err << "hint: record with a sampling interval of at most " << format_double(e.suggested_dt())
                << " (smaller dt or record_stride)\n";
        }
        return kExitResolution;
    } catch (const DivergenceError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const StepBudgetError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
}

struct CertifyInput {
    Trajectory trajectory;
    TheoryConfig theory;
    RunConfig config;
    bool diverged = false;
};

CertifyInput load_certify_input(const std::string& input, const CommandOptions& opts) {
    const fs::path path(input);
    CertifyInput in;
    if (path.extension() == ".csv") {
        fs::path meta_path = path;
        meta_path.replace_extension(".meta");
        const json meta = read_json_file(meta_path);
        in.config = config_from_metadata(meta);
        if (meta.contains("result") && meta["result"].value("status", "") == "diverged") in.diverged = true;
        std::ifstream csv(path);
        if (!csv) throw ConfigError("cannot open '" + path.string() + "'");
        in.trajectory = trajectory_from_table(read_csv(csv), in.config.model);
        in.trajectory.config = in.config.integrator;
        in.theory = in.config.theory;
        return in;
    }
    const RunConfig cfg = load_run_config(input);
    RunOutcome o = execute_run(cfg, opts);
    in.config = o.run.config;
    in.theory = o.run.theory;
    in.diverged = o.diverged;
    in.trajectory = std::move(o.trajectory);
    return in;
}

struct SweepRow {
    double coupling = 0.0, inertia = 0.0, frustration = 0.0;
    int c = 0;
    bool conditions_pass = false;
    bool sync = false;
    double d_omega_final = 0.0;
    std::optional<double> fitted_rate;
    double lambda = 0.0, lambda_tilde = 0.0;
    std::string status;
};

SweepRow sweep_point(const RunConfig& base, double coupling, double inertia, double frustration,
                     const CommandOptions& opts) {
    SweepRow row;
    row.coupling = coupling;
    row.inertia = inertia;
    row.frustration = frustration;
    RunConfig cfg = base;
    cfg.model.coupling = coupling;
    cfg.model.inertia = inertia;
    cfg.model.frustration = frustration;
    try {
        cfg.model.validate();
        const RunOutcome o = execute_run(cfg, opts);
        row.c = o.run.theory.c;
        row.conditions_pass = o.conditions.all_pass();
        row.lambda = o.conditions.lambda;
        row.lambda_tilde = o.conditions.lambda_tilde;
        row.d_omega_final = o.summary.d_omega_final;
        row.fitted_rate = o.summary.fitted_rate;
        row.sync = !o.diverged && o.summary.d_omega_final < cfg.sync_threshold;
        row.status = o.diverged ? "diverged" : "completed";
    } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
    }
    return row;
}

std::string csv_cell(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch == '\n' ? ' ' : ch;
    }
    return out + "\"";
}

struct Panel {
    std::string file;
    std::string title;
    std::string y_label;
    bool log_y;
    std::vector<std::string> columns;
};

std::vector<std::string> columns_with_prefix(const CsvTable& table, const std::string& prefix) {
    std::vector<std::string> out;
    for (const auto& h : table.header) {
        if (h.rfind(prefix, 0) == 0) out.push_back(h);
    }
    return out;
}

}  // namespace

RunOutcome execute_run(const RunConfig& cfg, const CommandOptions& opts) {
    ResolvedRun run = resolve(cfg);
    if (!run.params.graph.is_strongly_connected() && !opts.allow_disconnected) {
        throw ArgumentError(kDisconnectedMessage);
    }
    run.integrator.force_dt = run.integrator.force_dt || opts.force_dt;
    run.config.integrator.force_dt = run.integrator.force_dt;
    run.integrator.validate(run.params);
    run.theory.validate(run.params.frustration);

    ConditionReport conditions = check_conditions(run.params, run.initial, run.theory);
    try {
        Trajectory traj = simulate(run.params, run.initial, run.integrator);
        return finish(std::move(run), std::move(conditions), std::move(traj), false, cfg.fit_window);
    } catch (const DivergenceError& e) {
        return finish(std::move(run), std::move(conditions), e.partial(), true, cfg.fit_window);
    }
}

int cmd_check(const std::string& config_path, const CommandOptions& /*opts*/, std::ostream& out,
              std::ostream& err) {
    return guarded(err, [&]() -> int {
        const RunConfig cfg = load_run_config(config_path);
        const ResolvedRun run = resolve(cfg);
        run.theory.validate(run.params.frustration);
        const ConditionReport report = check_conditions(run.params, run.initial, run.theory);
        const bool connected = run.params.graph.is_strongly_connected();

        json doc = {{"config", config_path},
                    {"c", run.theory.c},
                    {"c_source", run.c_source},
                    {"strongly_connected", connected},
                    {"conditions", to_json(report)}};
        const bool ok = connected && report.all_pass();
        doc["pass"] = ok;
        out << doc.dump(2) << '\n';
        if (!connected) err << "fail: " << kDisconnectedMessage << '\n';
        for (const ConditionCheck* c : report.checks()) {
            if (!c->pass) err << "fail: " << c->name << " (margin " << format_double(c->margin) << ")\n";
        }
        return ok ? kExitOk : kExitConditionFailure;
    });
}

int cmd_simulate(const std::string& config_path, const CommandOptions& opts, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&]() -> int {
        const RunConfig cfg = load_run_config(config_path);
        const RunOutcome o = execute_run(cfg, opts);
        write_run_files(o, opts.out_dir);
        out << "wrote " << (opts.out_dir / "run.csv").string() << " and " << (opts.out_dir / "run.meta").string()
            << " (" << o.trajectory.size() << " samples, c = " << o.run.theory.c
            << ", dt = " << format_double(o.run.integrator.dt) << ")\n";
        out << "D_omega(t_end) = " << format_double(o.summary.d_omega_final)
            << ", conditions " << (o.conditions.all_pass() ? "pass" : "fail") << '\n';
        if (o.diverged) {
            err << "error: state diverged at t = " << format_double(o.summary.t_final)
                << "; partial trajectory kept\n";
            return kExitDivergence;
        }
        return kExitOk;
    });
}

int cmd_certify(const std::string& input, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        CertifyInput in = load_certify_input(input, opts);
        if (in.diverged) {
            err << "error: the run diverged; nothing to certify\n";
            return kExitDivergence;
        }
        const double threshold = opts.threshold.value_or(in.config.threshold);
        if (!(threshold >= 0.0 && threshold <= 1.0)) throw ArgumentError("--threshold must lie in [0, 1]");

        const CertificateReport report = certify_inequalities(in.trajectory, in.theory, in.config.tolerance);
        const bool ok = report.passes(threshold);
        json doc = to_json(report);
        doc["threshold"] = threshold;
        doc["pass"] = ok;
        ensure_out_dir(opts.out_dir);
        write_json_file(opts.out_dir / "certificate.meta", doc);

        for (const auto& r : report.inequalities) {
            char line[160];
            std::snprintf(line, sizeof line, "%-26s %-4s  fraction %.6f  (%zu/%zu)", r.name.c_str(),
                          !r.evaluated ? "SKIP" : (r.fraction >= threshold ? "ok  " : "FAIL"), r.fraction,
                          r.satisfied, r.admissible);
            out << line << (r.note.empty() ? "" : "  " + r.note) << '\n';
        }
        out << "certificate " << (ok ? "passes" : "fails") << " at threshold " << threshold
            << "; wrote " << (opts.out_dir / "certificate.meta").string() << '\n';
        return ok ? kExitOk : kExitConditionFailure;
    });
}

int cmd_sweep(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        const RunConfig cfg = load_run_config(config_path);
        const SweepGrid& grid = cfg.sweep;
        if (grid.size() == 0) throw ConfigError("sweep grid is empty: give non-empty coupling, inertia and frustration lists");
        const unsigned workers = std::max(1u, opts.workers.value_or(cfg.workers));

        struct Point {
            double coupling, inertia, frustration;
        };
        std::vector<Point> points;
        for (double k : grid.coupling)
            for (double m : grid.inertia)
                for (double a : grid.frustration) points.push_back({k, m, a});

        std::vector<SweepRow> rows(points.size());
        std::atomic<std::size_t> next{0};
        const auto worker = [&] {
            for (std::size_t i = next++; i < points.size(); i = next++) {
                rows[i] = sweep_point(cfg, points[i].coupling, points[i].inertia, points[i].frustration, opts);
            }
        };
        {
            std::vector<std::jthread> pool;
            const auto count = std::min<std::size_t>(workers, points.size());
            for (std::size_t w = 1; w < count; ++w) pool.emplace_back(worker);
            worker();
        }

        ensure_out_dir(opts.out_dir);
        const fs::path table = opts.out_dir / "sweep.csv";
        std::ofstream csv(table);
        if (!csv) throw ConfigError("cannot write '" + table.string() + "'");
        csv << "coupling,inertia,frustration,c,conditions_pass,sync,D_omega_final,fitted_rate,lambda,lambda_tilde,"
               "status\n";
        std::size_t synced = 0;
        for (const auto& r : rows) {
            csv << format_double(r.coupling) << ',' << format_double(r.inertia) << ','
                << format_double(r.frustration) << ',' << r.c << ',' << (r.conditions_pass ? "true" : "false")
                << ',' << (r.sync ? "true" : "false") << ',' << format_double(r.d_omega_final) << ','
                << (r.fitted_rate ? format_double(*r.fitted_rate) : "") << ',' << format_double(r.lambda) << ','
                << format_double(r.lambda_tilde) << ',' << csv_cell(r.status) << '\n';
            synced += r.sync ? 1 : 0;
        }
        out << "wrote " << table.string() << " (" << rows.size() << " points, " << synced << " synchronized)\n";
        return kExitOk;
    });
}

int cmd_plot(const std::string& csv_path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
    return guarded(err, [&]() -> int {
        std::ifstream in(csv_path);
        if (!in) throw ConfigError("cannot open '" + csv_path + "'");
        const CsvTable table = read_csv(in);
        if (table.rows() == 0) throw ConfigError("CSV '" + csv_path + "' has no data rows");
        const auto& t = table.column("t");

        std::vector<Panel> panels;
        if (!opts.columns.empty()) {
            for (const auto& c : opts.columns) (void)table.index_of(c);
            panels.push_back({"selection", "Selected columns", "value", false, opts.columns});
        } else {
            panels.push_back({"phases", "Phases", "theta_i", false, columns_with_prefix(table, "theta_")});
            panels.push_back({"frequencies", "Frequencies", "omega_i", false, columns_with_prefix(table, "omega_")});
            panels.push_back({"diameters", "Phase and frequency diameters", "diameter", true,
                              {"D_theta", "D_omega"}});
            panels.push_back({"energies", "Energies", "energy", true, {"E1", "E2"}});
            for (const auto& p : panels) {
                for (const auto& c : p.columns) (void)table.index_of(c);
            }
        }

        ensure_out_dir(opts.out_dir);
        for (const auto& panel : panels) {
            PlotSpec spec;
            spec.title = panel.title;
            spec.y_label = panel.y_label;
            spec.log_y = panel.log_y;
            spec.x = t;
            spec.window = opts.window;
            if (opts.window) {
                char buf[96];
                std::snprintf(buf, sizeof buf, " on [%g, %g]", opts.window->begin, opts.window->end);
                spec.title += buf;
            }
            for (const auto& c : panel.columns) spec.series.push_back({c, table.column(c)});
            const fs::path file = opts.out_dir / (panel.file + (opts.window ? "_local" : "") + ".svg");
            std::ofstream svg(file);
            if (!svg) throw ConfigError("cannot write '" + file.string() + "'");
            svg << render_svg(spec);
            out << "wrote " << file.string() << '\n';
        }
        return kExitOk;
    });
}

}  // namespace kuramoto::cli
