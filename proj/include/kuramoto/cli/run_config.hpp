#pragma once

#include "kuramoto/analysis.hpp"
#include "kuramoto/energy.hpp"
#include "kuramoto/errors.hpp"
#include "kuramoto/integrator.hpp"
#include "kuramoto/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kuramoto::cli {

/// Malformed or inconsistent configuration; the message names the line or field.
class ConfigError : public ArgumentError {
public:
    using ArgumentError::ArgumentError;
};

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

/// Random initial data: theta then omega drawn uniformly from their ranges.
struct SeededInitials {
    std::uint64_t seed = 0;
    Range theta;
    Range omega;
};

struct SweepGrid {
    std::vector<double> coupling;
    std::vector<double> inertia;
    std::vector<double> frustration;

    [[nodiscard]] std::size_t size() const noexcept { return coupling.size() * inertia.size() * frustration.size(); }
};

/// Everything a run needs, as written in the config file. "auto" entries stay unresolved.
struct RunConfig {
    ModelParams model;

    std::optional<State> initial;            ///< explicit theta/omega
    std::optional<SeededInitials> seeded;    ///< exactly one of initial / seeded is set

    TheoryConfig theory;                     ///< theory.c is meaningful only when !auto_c
    bool auto_c = true;

    IntegratorConfig integrator;             ///< integrator.dt is meaningful only when !auto_dt
    bool auto_dt = true;

    double tolerance = 1e-6;                 ///< certification relative tolerance
    double threshold = 0.99;                 ///< required satisfaction fraction
    double sync_threshold = 1e-6;            ///< D_omega(t_end) below this counts as synchronized
    std::optional<TimeWindow> fit_window;    ///< default: [t_star, t_end]

    SweepGrid sweep;
    unsigned workers = 1;
};

/// Parses the JSON config text. Throws ConfigError with line/column or field path.
[[nodiscard]] RunConfig parse_run_config(const std::string& text);
[[nodiscard]] RunConfig load_run_config(const std::string& path);

/// Name of the generator used for seeded initials.
inline constexpr const char* prng_name = "mt19937_64, u = (x >> 11) * 2^-53, value = lo + (hi - lo) u";

/// Draws n phases then n frequencies. Deterministic for a given seed on every platform.
[[nodiscard]] State draw_initial_state(const SeededInitials& spec, std::size_t n);

/// Config with every "auto" expanded and the initial state made explicit.
struct ResolvedRun {
    RunConfig config;      ///< copy with auto_c/auto_dt cleared and initial set
    ModelParams params;
    State initial;
    TheoryConfig theory;
    IntegratorConfig integrator;
    std::string c_source;  ///< "explicit", "auto", or "auto (fallback: ...)"
    std::string dt_source; ///< "explicit" or "auto (m/4)"
    std::optional<SeededInitials> drawn_from;  ///< set when the initial state was drawn from a seed
};

/// Resolves c (auto_select_c, falling back to the lower bound alone when the
/// initial-diameter branch is infeasible) and dt (m/4).
[[nodiscard]] ResolvedRun resolve(const RunConfig& cfg);

/// JSON form accepted by parse_run_config; reproduces `cfg` exactly.
[[nodiscard]] nlohmann::json to_json(const RunConfig& cfg);

}  // namespace kuramoto::cli
