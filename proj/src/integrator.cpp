#include "kuramoto/integrator.hpp"

#include "kuramoto/errors.hpp"

#include <cmath>
#include <string>

namespace kuramoto {

void IntegratorConfig::validate(const ModelParams& p) const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ArgumentError("dt must be positive");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ArgumentError("t_end must be non-negative");
    if (record_stride == 0) throw ArgumentError("record_stride must be positive");
    if (!force_dt && dt > p.inertia / 4.0) {
        throw ArgumentError("dt = " + std::to_string(dt) + " exceeds the stiffness guard m/4 = " +
                            std::to_string(p.inertia / 4.0) + " (use force_dt to override)");
    }
    if (step_count() > max_steps) {
        throw StepBudgetError("t_end/dt requires " + std::to_string(step_count()) + " steps, budget is " +
                              std::to_string(max_steps));
    }
}

std::uint64_t IntegratorConfig::step_count() const {
    if (t_end <= 0.0) return 0;
    const double ratio = t_end / dt;
    const double nearest = std::round(ratio);
    // Treat ratios within rounding noise of an integer as exact multiples.
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) return static_cast<std::uint64_t>(nearest);
    return static_cast<std::uint64_t>(std::ceil(ratio));
}

double default_dt(const ModelParams& p) { return p.inertia / 4.0; }

std::vector<double> Trajectory::times() const {
    std::vector<double> t;
    t.reserve(states.size());
    for (const auto& s : states) t.push_back(s.t);
    return t;
}

DivergenceError::DivergenceError(double t, Trajectory partial)
    : std::runtime_error("state became non-finite at t = " + std::to_string(t)),
      time_(t),
      partial_(std::move(partial)) {}

Rk4Stepper::Rk4Stepper(const ModelParams& p) : params_(p) {
    const std::size_t n = p.size();
    for (auto* v : {&k1t_, &k1w_, &k2t_, &k2w_, &k3t_, &k3w_, &k4t_, &k4w_, &tmp_t_, &tmp_w_}) v->assign(n, 0.0);
}

void Rk4Stepper::advance(State& s, double h) {
    const std::size_t n = s.theta.size();
    auto& th = s.theta;
    auto& w = s.omega;

    evaluate_rhs(params_, th, w, k1t_, k1w_);
    for (std::size_t i = 0; i < n; ++i) {
        tmp_t_[i] = th[i] + 0.5 * h * k1t_[i];
        tmp_w_[i] = w[i] + 0.5 * h * k1w_[i];
    }
    evaluate_rhs(params_, tmp_t_, tmp_w_, k2t_, k2w_);
    for (std::size_t i = 0; i < n; ++i) {
        tmp_t_[i] = th[i] + 0.5 * h * k2t_[i];
        tmp_w_[i] = w[i] + 0.5 * h * k2w_[i];
    }
    evaluate_rhs(params_, tmp_t_, tmp_w_, k3t_, k3w_);
    for (std::size_t i = 0; i < n; ++i) {
        tmp_t_[i] = th[i] + h * k3t_[i];
        tmp_w_[i] = w[i] + h * k3w_[i];
    }
    evaluate_rhs(params_, tmp_t_, tmp_w_, k4t_, k4w_);
    const double h6 = h / 6.0;
    for (std::size_t i = 0; i < n; ++i) {
        th[i] += h6 * (k1t_[i] + 2.0 * k2t_[i] + 2.0 * k3t_[i] + k4t_[i]);
        w[i] += h6 * (k1w_[i] + 2.0 * k2w_[i] + 2.0 * k3w_[i] + k4w_[i]);
    }
}

State rk4_step(const ModelParams& p, const State& s, double dt) {
    check_dimensions(p, s);
    if (!(dt > 0.0)) throw ArgumentError("dt must be positive");
    State next = s;
    Rk4Stepper stepper(p);
    stepper.advance(next, dt);
    next.t = s.t + dt;
    if (!next.is_finite()) throw DivergenceError(next.t, Trajectory{p, IntegratorConfig{dt, dt}, {s}});
    return next;
}

Trajectory simulate(const ModelParams& p, const State& init, const IntegratorConfig& cfg) {
    p.validate();
    check_dimensions(p, init);
    cfg.validate(p);
    if (!init.is_finite()) throw ArgumentError("initial state is not finite");

    Trajectory traj{p, cfg, {}};
    const std::uint64_t steps = cfg.step_count();
    traj.states.reserve(static_cast<std::size_t>(steps / cfg.record_stride + 2));
    traj.states.push_back(init);

    Rk4Stepper stepper(traj.params);
    State s = init;
    const double t0 = init.t;
    const double t_final = t0 + cfg.t_end;
    for (std::uint64_t k = 1; k <= steps; ++k) {
        const bool last = (k == steps);
        stepper.advance(s, last ? t_final - s.t : cfg.dt);
        s.t = last ? t_final : t0 + static_cast<double>(k) * cfg.dt;
        if (!s.is_finite()) throw DivergenceError(s.t, std::move(traj));
        if (k % cfg.record_stride == 0 || k == steps) traj.states.push_back(s);
    }
    return traj;
}

}  // namespace kuramoto
