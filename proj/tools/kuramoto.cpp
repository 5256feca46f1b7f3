// Command-line front end: check, simulate, certify, sweep, plot.

#include "kuramoto/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

std::optional<kuramoto::TimeWindow> parse_window(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw CLI::ValidationError("--window", "expected t_a,t_b");
    try {
        const double a = std::stod(text.substr(0, comma));
        const double b = std::stod(text.substr(comma + 1));
        if (!(a < b)) throw CLI::ValidationError("--window", "need t_a < t_b");
        return kuramoto::TimeWindow{a, b};
    } catch (const std::logic_error&) {
        throw CLI::ValidationError("--window", "expected two numbers t_a,t_b");
    }
}

}  // namespace

int main(int argc, char** argv) {
    using namespace kuramoto::cli;

    CLI::App app{"Second-order Kuramoto oscillators with inertia and frustration on digraphs"};
    app.require_subcommand(1);

    CommandOptions opts;
    std::string input;
    std::string out_dir = ".";
    std::string window_text;
    double threshold = -1.0;
    unsigned workers = 0;

    const auto add_out = [&](CLI::App* sub) {
        sub->add_option("--out", out_dir, "Output directory");
    };
    const auto add_run_flags = [&](CLI::App* sub) {
        sub->add_flag("--allow-disconnected", opts.allow_disconnected, "Simulate even if the graph is not strongly connected");
        sub->add_flag("--force-dt", opts.force_dt, "Allow dt > m/4 (bypasses the stiffness guard)");
    };

    auto* check = app.add_subcommand("check", "Evaluate the sufficient synchronization conditions");
    check->add_option("config", input, "Run configuration (JSON)")->required();

    auto* simulate = app.add_subcommand("simulate", "Integrate and write run.csv and run.meta");
    simulate->add_option("config", input, "Run configuration (JSON)")->required();
    add_run_flags(simulate);
    add_out(simulate);

    auto* certify = app.add_subcommand("certify", "Check the energy inequalities along a run");
    certify->add_option("input", input, "Run configuration (JSON) or run CSV with its .meta")->required();
    certify->add_option("--threshold", threshold, "Required satisfaction fraction")->check(CLI::Range(0.0, 1.0));
    add_run_flags(certify);
    add_out(certify);

    auto* sweep = app.add_subcommand("sweep", "Run the coupling x inertia x frustration grid");
    sweep->add_option("config", input, "Run configuration (JSON) with a sweep section")->required();
    sweep->add_option("--workers", workers, "Concurrent grid points")->check(CLI::PositiveNumber);
    add_run_flags(sweep);
    add_out(sweep);

    auto* plot = app.add_subcommand("plot", "Render SVG panels from a run CSV");
    plot->add_option("csv", input, "Run CSV")->required();
    plot->add_option("--window", window_text, "Time window t_a,t_b");
    plot->add_option("--columns", opts.columns, "Columns to plot instead of the default panels")->delimiter(',')->allow_extra_args(false);
    add_out(plot);

    try {
        app.parse(argc, argv);
        if (!window_text.empty()) opts.window = parse_window(window_text);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }
    opts.out_dir = out_dir;
    if (threshold >= 0.0) opts.threshold = threshold;
    if (workers > 0) opts.workers = workers;

    if (check->parsed()) return cmd_check(input, opts, std::cout, std::cerr);
    if (simulate->parsed()) return cmd_simulate(input, opts, std::cout, std::cerr);
    if (certify->parsed()) return cmd_certify(input, opts, std::cout, std::cerr);
    if (sweep->parsed()) return cmd_sweep(input, opts, std::cout, std::cerr);
    return cmd_plot(input, opts, std::cout, std::cerr);
}
