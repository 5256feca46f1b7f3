#include "kuramoto/cli/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace kuramoto::cli {

using nlohmann::json;

namespace {

/// Typed access to one JSON object, reporting problems by dotted field path.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) fail("", "expected an object");
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError("field " + field(key) + ": " + what);
    }

    [[nodiscard]] bool has(const std::string& key) const { return node_.contains(key); }

    [[nodiscard]] const json& raw(const std::string& key) const {
        if (!has(key)) fail(key, "missing");
        return node_.at(key);
    }

    [[nodiscard]] double number(const std::string& key) const {
        const json& v = raw(key);
        if (!v.is_number()) fail(key, "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(key, "must be finite");
        return x;
    }

    [[nodiscard]] double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    [[nodiscard]] std::uint64_t unsigned_integer(const std::string& key) const {
        const json& v = raw(key);
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0)) {
            fail(key, "expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    [[nodiscard]] std::vector<double> numbers(const std::string& key) const {
        const json& v = raw(key);
        if (!v.is_array()) fail(key, "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) fail(key, "element " + std::to_string(i) + " is not a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

    [[nodiscard]] Range range(const std::string& key) const {
        const auto v = numbers(key);
        if (v.size() != 2 || !(v[0] <= v[1])) fail(key, "expected [lo, hi] with lo <= hi");
        return {v[0], v[1]};
    }

    [[nodiscard]] bool is_auto(const std::string& key) const {
        return has(key) && node_.at(key).is_string() && node_.at(key).get<std::string>() == "auto";
    }

    [[nodiscard]] Section child(const std::string& key) const { return Section(raw(key), field(key)); }

    void allow_only(std::initializer_list<const char*> keys) const {
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, _] : node_.items()) {
            if (!allowed.contains(k)) fail(k, "unknown key");
        }
    }

    [[nodiscard]] std::string field(const std::string& key) const {
        if (key.empty()) return path_.empty() ? "<root>" : path_;
        return path_.empty() ? key : path_ + "." + key;
    }

private:
    const json& node_;
    std::string path_;
};

std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void parse_model(const Section& s, RunConfig& cfg) {
    s.allow_only({"n", "inertia", "coupling", "frustration", "natural_frequencies", "adjacency"});
    cfg.model.inertia = s.number("inertia");
    cfg.model.coupling = s.number("coupling");
    cfg.model.frustration = s.number("frustration");
    cfg.model.natural_frequencies = s.numbers("natural_frequencies");
    const std::size_t n = s.has("n") ? static_cast<std::size_t>(s.unsigned_integer("n"))
                                     : cfg.model.natural_frequencies.size();
    if (n == 0) s.fail("n", "must be positive");
    if (cfg.model.natural_frequencies.size() != n) {
        s.fail("natural_frequencies", "expected " + std::to_string(n) + " entries");
    }
    const json& adj = s.raw("adjacency");
    if (!adj.is_array()) s.fail("adjacency", "expected a row-major array of 0/1 integers");
    std::vector<int> entries;
    for (std::size_t i = 0; i < adj.size(); ++i) {
        if (!adj[i].is_number_integer()) s.fail("adjacency", "element " + std::to_string(i) + " is not an integer");
        entries.push_back(adj[i].get<int>());
    }
    try {
        cfg.model.graph = Digraph(n, entries);
        cfg.model.validate();
    } catch (const ArgumentError& e) {
        throw ConfigError("field " + s.field("") + ": " + e.what());
    }
}

void parse_initial(const Section& s, RunConfig& cfg) {
    s.allow_only({"theta", "omega", "seed", "theta_range", "omega_range"});
    const bool explicit_given = s.has("theta") || s.has("omega");
    const bool seeded_given = s.has("seed") || s.has("theta_range") || s.has("omega_range");
    if (explicit_given == seeded_given) {
        s.fail("", "give either explicit theta/omega vectors or seed with theta_range/omega_range");
    }
    const std::size_t n = cfg.model.size();
    if (explicit_given) {
        State st;
        st.theta = s.numbers("theta");
        st.omega = s.numbers("omega");
        if (st.theta.size() != n) s.fail("theta", "expected " + std::to_string(n) + " entries");
        if (st.omega.size() != n) s.fail("omega", "expected " + std::to_string(n) + " entries");
        if (!st.is_finite()) s.fail("", "initial values must be finite");
        cfg.initial = std::move(st);
    } else {
        cfg.seeded = SeededInitials{s.unsigned_integer("seed"), s.range("theta_range"), s.range("omega_range")};
    }
}

void parse_theory(const Section& s, RunConfig& cfg) {
    s.allow_only({"gamma", "d_inf", "epsilon", "c"});
    cfg.theory.gamma = s.number("gamma");
    cfg.theory.d_inf = s.number("d_inf");
    cfg.theory.epsilon = s.number("epsilon");
    cfg.auto_c = !s.has("c") || s.is_auto("c");
    if (!cfg.auto_c) {
        const auto c = s.unsigned_integer("c");
        if (c <= 2 || c > 1'000'000'000) s.fail("c", "must be an integer > 2 or \"auto\"");
        cfg.theory.c = static_cast<int>(c);
    }
    try {
        TheoryConfig probe = cfg.theory;
        probe.c = std::max(probe.c, 3);
        probe.validate(cfg.model.frustration);
    } catch (const ArgumentError& e) {
        throw ConfigError("field " + s.field("") + ": " + e.what());
    }
}

void parse_integrator(const Section& s, RunConfig& cfg) {
    s.allow_only({"dt", "t_end", "record_stride", "max_steps"});
    cfg.auto_dt = !s.has("dt") || s.is_auto("dt");
    if (!cfg.auto_dt) {
        cfg.integrator.dt = s.number("dt");
        if (!(cfg.integrator.dt > 0.0)) s.fail("dt", "must be positive or \"auto\"");
    }
    cfg.integrator.t_end = s.number("t_end");
    if (!(cfg.integrator.t_end >= 0.0)) s.fail("t_end", "must be non-negative");
    if (s.has("record_stride")) {
        cfg.integrator.record_stride = static_cast<std::size_t>(s.unsigned_integer("record_stride"));
        if (cfg.integrator.record_stride == 0) s.fail("record_stride", "must be positive");
    }
    if (s.has("max_steps")) cfg.integrator.max_steps = s.unsigned_integer("max_steps");
}

void parse_analysis(const Section& s, RunConfig& cfg) {
    s.allow_only({"tolerance", "threshold", "sync_threshold", "fit_window"});
    cfg.tolerance = s.number_or("tolerance", cfg.tolerance);
    cfg.threshold = s.number_or("threshold", cfg.threshold);
    cfg.sync_threshold = s.number_or("sync_threshold", cfg.sync_threshold);
    if (!(cfg.tolerance >= 0.0)) s.fail("tolerance", "must be non-negative");
    if (!(cfg.threshold >= 0.0 && cfg.threshold <= 1.0)) s.fail("threshold", "must lie in [0, 1]");
    if (s.has("fit_window")) {
        const auto r = s.range("fit_window");
        cfg.fit_window = TimeWindow{r.lo, r.hi};
    }
}

void parse_sweep(const Section& s, RunConfig& cfg) {
    s.allow_only({"coupling", "inertia", "frustration", "workers"});
    if (s.has("coupling")) cfg.sweep.coupling = s.numbers("coupling");
    if (s.has("inertia")) cfg.sweep.inertia = s.numbers("inertia");
    if (s.has("frustration")) cfg.sweep.frustration = s.numbers("frustration");
    if (s.has("workers")) {
        cfg.workers = static_cast<unsigned>(s.unsigned_integer("workers"));
        if (cfg.workers == 0) s.fail("workers", "must be positive");
    }
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    const Section root(doc, "");
    root.allow_only({"model", "initial", "theory", "integrator", "analysis", "sweep", "description"});

    RunConfig cfg;
    parse_model(root.child("model"), cfg);
    parse_initial(root.child("initial"), cfg);
    parse_theory(root.child("theory"), cfg);
    parse_integrator(root.child("integrator"), cfg);
    if (root.has("analysis")) parse_analysis(root.child("analysis"), cfg);
    if (root.has("sweep")) parse_sweep(root.child("sweep"), cfg);
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_run_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

State draw_initial_state(const SeededInitials& spec, std::size_t n) {
    std::mt19937_64 gen(spec.seed);
    const auto uniform = [&](const Range& r) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        return r.lo + (r.hi - r.lo) * u;
    };
    State s;
    s.theta.resize(n);
    s.omega.resize(n);
    for (auto& x : s.theta) x = uniform(spec.theta);
    for (auto& x : s.omega) x = uniform(spec.omega);
    return s;
}

ResolvedRun resolve(const RunConfig& cfg) {
    ResolvedRun r;
    r.params = cfg.model;
    r.initial = cfg.initial ? *cfg.initial : draw_initial_state(*cfg.seeded, cfg.model.size());
    r.initial.t = 0.0;
    r.drawn_from = cfg.seeded;

    r.theory = cfg.theory;
    if (cfg.auto_c) {
        const double d_theta0 = diameter(r.initial.theta);
        try {
            r.theory.c = auto_select_c(r.params, r.theory, d_theta0);
            r.c_source = "auto";
        } catch (const InfeasibleError& e) {
            // Keep exploratory runs possible: honour only the lower bound on c.
            const double n = static_cast<double>(r.params.size());
            const double lower = std::max(n * r.theory.gamma / std::sin(r.theory.gamma),
                                          n / std::cos(r.theory.d_inf + r.params.frustration));
            r.theory.c = static_cast<int>(std::max(3.0, std::floor(lower) + 1.0));
            r.c_source = std::string("auto (fallback to lower bound only: ") + e.what() + ")";
        }
    } else {
        r.c_source = "explicit";
    }

    r.integrator = cfg.integrator;
    if (cfg.auto_dt) {
        r.integrator.dt = default_dt(r.params);
        r.dt_source = "auto (m/4)";
    } else {
        r.dt_source = "explicit";
    }

    r.config = cfg;
    r.config.initial = r.initial;
    r.config.seeded.reset();
    r.config.auto_c = false;
    r.config.theory = r.theory;
    r.config.auto_dt = false;
    r.config.integrator = r.integrator;
    return r;
}

json to_json(const RunConfig& cfg) {
    json model = {
        {"n", cfg.model.size()},
        {"inertia", cfg.model.inertia},
        {"coupling", cfg.model.coupling},
        {"frustration", cfg.model.frustration},
        {"natural_frequencies", cfg.model.natural_frequencies},
        {"adjacency", cfg.model.graph.adjacency()},
    };
    json initial;
    if (cfg.initial) {
        initial = {{"theta", cfg.initial->theta}, {"omega", cfg.initial->omega}};
    } else if (cfg.seeded) {
        initial = {{"seed", cfg.seeded->seed},
                   {"theta_range", {cfg.seeded->theta.lo, cfg.seeded->theta.hi}},
                   {"omega_range", {cfg.seeded->omega.lo, cfg.seeded->omega.hi}}};
    }
    json theory = {{"gamma", cfg.theory.gamma}, {"d_inf", cfg.theory.d_inf}, {"epsilon", cfg.theory.epsilon}};
    theory["c"] = cfg.auto_c ? json("auto") : json(cfg.theory.c);
    json integrator = {{"t_end", cfg.integrator.t_end},
                       {"record_stride", cfg.integrator.record_stride},
                       {"max_steps", cfg.integrator.max_steps}};
    integrator["dt"] = cfg.auto_dt ? json("auto") : json(cfg.integrator.dt);
    json analysis = {{"tolerance", cfg.tolerance},
                     {"threshold", cfg.threshold},
                     {"sync_threshold", cfg.sync_threshold}};
    if (cfg.fit_window) analysis["fit_window"] = {cfg.fit_window->begin, cfg.fit_window->end};

    json doc = {{"model", model}, {"initial", initial}, {"theory", theory}, {"integrator", integrator},
                {"analysis", analysis}};
    if (cfg.sweep.size() > 0 || !cfg.sweep.coupling.empty() || !cfg.sweep.inertia.empty() ||
        !cfg.sweep.frustration.empty()) {
        doc["sweep"] = {{"coupling", cfg.sweep.coupling},
                        {"inertia", cfg.sweep.inertia},
                        {"frustration", cfg.sweep.frustration},
                        {"workers", cfg.workers}};
    }
    return doc;
}

}  // namespace kuramoto::cli
