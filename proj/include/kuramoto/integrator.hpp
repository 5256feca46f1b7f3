#pragma once

#include "kuramoto/model.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kuramoto {

struct IntegratorConfig {
    double dt = 0.0;
    double t_end = 0.0;              ///< integration length measured from the initial time
    std::size_t record_stride = 1;   ///< keep every k-th step (the final state is always kept)
    std::uint64_t max_steps = 200'000'000;
    bool force_dt = false;           ///< bypass the dt <= m/4 stiffness guard

    /// Throws ArgumentError on dt <= 0, t_end < 0, stride 0, or dt > m/4 without force_dt.
    void validate(const ModelParams& p) const;

    /// Number of RK4 steps needed to cover t_end (the last one may be shortened).
    [[nodiscard]] std::uint64_t step_count() const;
};

/// Default step: a quarter of the inertial relaxation time m.
[[nodiscard]] double default_dt(const ModelParams& p);

/// Sampled solution; states[k].t is strictly increasing.
struct Trajectory {
    ModelParams params;
    IntegratorConfig config;
    std::vector<State> states;

    [[nodiscard]] std::size_t size() const noexcept { return states.size(); }
    [[nodiscard]] std::vector<double> times() const;
};

/// A non-finite state appeared. Carries everything recorded up to that point.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(double t, Trajectory partial);
    [[nodiscard]] double time() const noexcept { return time_; }
    [[nodiscard]] const Trajectory& partial() const noexcept { return partial_; }

private:
    double time_;
    Trajectory partial_;
};

/// Classical RK4 with a reusable workspace; one instance per thread.
class Rk4Stepper {
public:
    explicit Rk4Stepper(const ModelParams& p);

    /// Advances theta/omega in place by h; does not touch s.t.
    void advance(State& s, double h);

private:
    const ModelParams& params_;
    std::vector<double> k1t_, k1w_, k2t_, k2w_, k3t_, k3w_, k4t_, k4w_, tmp_t_, tmp_w_;
};

/// One RK4 step; t advances by dt. Throws DivergenceError if the result is not finite.
[[nodiscard]] State rk4_step(const ModelParams& p, const State& s, double dt);

/// Fixed-step RK4 from `init` over [init.t, init.t + cfg.t_end]. The trajectory holds
/// the initial state, every record_stride-th step, and the final state.
/// Step k lands at init.t + k dt exactly (no accumulated time drift).
[[nodiscard]] Trajectory simulate(const ModelParams& p, const State& init, const IntegratorConfig& cfg);

}  // namespace kuramoto
