#include "kuramoto/cli/metadata.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace kuramoto::cli {

using nlohmann::json;

json number_json(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

namespace {

json optional_number(const std::optional<double>& x) { return x ? number_json(*x) : json(nullptr); }

}  // namespace

json to_json(const ConditionCheck& check) {
    return {{"lhs", number_json(check.lhs)},
            {"rhs", number_json(check.rhs)},
            {"margin", number_json(check.margin)},
            {"pass", check.pass}};
}

json to_json(const ConditionReport& report) {
    json checks = json::object();
    for (const ConditionCheck* c : report.checks()) checks[c->name] = to_json(*c);
    json info = json::object();
    info[report.entrance_bound.name] = to_json(report.entrance_bound);
    return {{"all_pass", report.all_pass()},
            {"checks", checks},
            {"informational", info},
            {"c", report.c},
            {"eta", number_json(report.eta)},
            {"largest_weight", number_json(report.m_n)},
            {"lambda", number_json(report.lambda)},
            {"lambda_tilde", number_json(report.lambda_tilde)},
            {"d_theta0", number_json(report.d_theta0)},
            {"d_omega0", number_json(report.d_omega0)},
            {"d_acceleration0", number_json(report.d_a0)},
            {"d_natural_frequency", number_json(report.d_natural)}};
}

json to_json(const CertificateReport& report) {
    json inequalities = json::array();
    for (const auto& r : report.inequalities) {
        json item = {{"name", r.name},
                     {"statement", r.statement},
                     {"evaluated", r.evaluated},
                     {"admissible", r.admissible},
                     {"satisfied", r.satisfied},
                     {"fraction", number_json(r.fraction)},
                     {"worst_residual", number_json(r.worst_residual)},
                     {"worst_time", number_json(r.worst_time)},
                     {"violation_times", json::array()}};
        for (double t : r.violation_times) item["violation_times"].push_back(number_json(t));
        if (!r.note.empty()) item["note"] = r.note;
        inequalities.push_back(std::move(item));
    }
    return {{"tolerance", number_json(report.tolerance)},
            {"samples", report.samples},
            {"admissible_fraction", number_json(report.admissible_fraction)},
            {"inequalities", inequalities},
            {"t_star", optional_number(report.t_star)},
            {"t_star_bound", optional_number(report.t_star_bound)},
            {"t_star_bound_holds", report.t_star_bound_holds},
            {"max_d_theta_after_t_star", optional_number(report.max_d_theta_after_t_star)},
            {"fitted_rate", optional_number(report.fitted_rate)},
            {"lambda", number_json(report.lambda)},
            {"lambda_tilde", number_json(report.lambda_tilde)},
            {"notices", report.notices}};
}

json run_metadata(const ResolvedRun& run, const ConditionReport& conditions, const RunSummary& summary) {
    json resolved = {{"c", run.theory.c},
                     {"c_source", run.c_source},
                     {"dt", run.integrator.dt},
                     {"dt_source", run.dt_source},
                     {"steps", run.integrator.step_count()},
                     {"strongly_connected", run.params.graph.is_strongly_connected()}};
    if (run.drawn_from) {
        resolved["initial_draw"] = {{"seed", run.drawn_from->seed},
                                    {"theta_range", {run.drawn_from->theta.lo, run.drawn_from->theta.hi}},
                                    {"omega_range", {run.drawn_from->omega.lo, run.drawn_from->omega.hi}}};
    }

    json result = {{"status", summary.status},
                   {"samples", summary.samples},
                   {"t_final", number_json(summary.t_final)},
                   {"d_theta_final", number_json(summary.d_theta_final)},
                   {"d_omega_final", number_json(summary.d_omega_final)},
                   {"max_d_theta", number_json(summary.max_d_theta)},
                   {"t_star", optional_number(summary.t_star)},
                   {"fitted_rate", optional_number(summary.fitted_rate)},
                   {"lambda", number_json(conditions.lambda)},
                   {"lambda_tilde", number_json(conditions.lambda_tilde)}};
    if (summary.fit_window) result["fit_window"] = {summary.fit_window->begin, summary.fit_window->end};
    if (!summary.fit_note.empty()) result["fit_note"] = summary.fit_note;

    return {{"config", to_json(run.config)},
            {"resolved", resolved},
            {"prng", prng_name},
            {"conditions", to_json(conditions)},
            {"result", result}};
}

RunConfig config_from_metadata(const json& meta) {
    if (!meta.is_object() || !meta.contains("config")) throw ConfigError("metadata has no 'config' section");
    return parse_run_config(meta.at("config").dump());
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << doc.dump(2) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace kuramoto::cli
