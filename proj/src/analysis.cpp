#include "kuramoto/analysis.hpp"

#include "kuramoto/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace kuramoto {

namespace {

constexpr std::size_t max_reported_violations = 25;

/// Everything the certifier needs at one sample.
struct SampleTerms {
    double d_theta, d_omega, d_a, d_b;
    double q, p, a, b;
    double dq, ddq, dp, ddp, da, db;
    double e1, e2, de1, de2;
    std::vector<std::size_t> phase_order, frequency_order, acceleration_order, jerk_order;
};

class TermEvaluator {
public:
    TermEvaluator(const ModelParams& p, const TheoryConfig& cfg)
        : params_(p),
          weights_(cfg.c, p.size()),
          w1_(energy1_frequency_weight(p, cfg)),
          w2_(energy2_acceleration_weight(p, cfg)) {}

    [[nodiscard]] SampleTerms operator()(const State& s) const {
        const auto hd = higher_derivatives(params_, s);
        const double m = params_.inertia;
        SampleTerms r;
        r.phase_order = ascending_order(s.theta);
        r.frequency_order = ascending_order(s.omega);
        r.acceleration_order = ascending_order(hd.acceleration);
        r.jerk_order = ascending_order(hd.jerk);

        r.d_theta = diameter(s.theta);
        r.d_omega = diameter(s.omega);
        r.d_a = diameter(hd.acceleration);
        r.d_b = diameter(hd.jerk);

        r.q = spread_with_order(s.theta, r.phase_order, weights_);
        r.p = spread_with_order(s.omega, r.frequency_order, weights_);
        r.a = spread_with_order(hd.acceleration, r.acceleration_order, weights_);
        r.b = spread_with_order(hd.jerk, r.jerk_order, weights_);

        r.dq = spread_with_order(s.omega, r.phase_order, weights_);
        r.ddq = spread_with_order(hd.acceleration, r.phase_order, weights_);
        r.dp = spread_with_order(hd.acceleration, r.frequency_order, weights_);
        r.ddp = spread_with_order(hd.jerk, r.frequency_order, weights_);
        r.da = spread_with_order(hd.jerk, r.acceleration_order, weights_);
        r.db = spread_with_order(hd.jerk_rate, r.jerk_order, weights_);

        r.e1 = r.q + w1_ * m * r.p + 2.0 * m * m * r.a;
        r.e2 = r.p + w2_ * m * r.a + 2.0 * m * m * r.b;
        r.de1 = r.dq + w1_ * m * r.dp + 2.0 * m * m * r.da;
        r.de2 = r.dp + w2_ * m * r.da + 2.0 * m * m * r.db;
        return r;
    }

private:
    const ModelParams& params_;
    ConvexWeights weights_;
    double w1_, w2_;
};

void require_nonempty(const Trajectory& traj) {
    if (traj.states.empty()) throw ArgumentError("trajectory has no samples");
}

// Interior sample k whose orderings match at k-1, k and k+1 for every selected history.
bool frozen_around(std::size_t k, std::initializer_list<const std::vector<std::vector<std::size_t>>*> orders) {
    for (const auto* h : orders) {
        const auto& o = *h;
        if (o[k - 1] != o[k] || o[k + 1] != o[k]) return false;
    }
    return true;
}

class InequalityTally {
public:
    InequalityTally(std::string name, std::string statement, double tol) : tol_(tol) {
        result_.name = std::move(name);
        result_.statement = std::move(statement);
        result_.evaluated = true;
        result_.worst_residual = -std::numeric_limits<double>::infinity();
    }

    void add(double t, double lhs, double rhs) {
        const double residual = lhs - rhs;
        ++result_.admissible;
        // NaN residuals count as violations.
        const bool ok = residual <= tol_ * std::max(1.0, std::abs(rhs));
        if (ok) {
            ++result_.satisfied;
        } else if (result_.violation_times.size() < max_reported_violations) {
            result_.violation_times.push_back(t);
        }
        if (!(residual <= result_.worst_residual)) {
            result_.worst_residual = residual;
            result_.worst_time = t;
        }
    }

    [[nodiscard]] InequalityResult finish() && {
        if (result_.admissible == 0) {
            result_.fraction = 1.0;
            result_.worst_residual = 0.0;
            if (result_.note.empty()) result_.note = "no admissible samples";
        } else {
            result_.fraction = static_cast<double>(result_.satisfied) / static_cast<double>(result_.admissible);
        }
        return std::move(result_);
    }

    void note(std::string text) { result_.note = std::move(text); }

private:
    double tol_;
    InequalityResult result_;
};

InequalityResult skipped(std::string name, std::string statement, std::string why) {
    InequalityResult r;
    r.name = std::move(name);
    r.statement = std::move(statement);
    r.evaluated = false;
    r.note = std::move(why);
    return r;
}

}  // namespace

DiagnosticsSeries diagnostics(const Trajectory& traj, const TheoryConfig& cfg) {
    require_nonempty(traj);
    const TermEvaluator eval(traj.params, cfg);
    DiagnosticsSeries d;
    const std::size_t n = traj.size();
    for (auto* v : {&d.t, &d.d_theta, &d.d_omega, &d.d_a, &d.d_b, &d.q, &d.p, &d.a, &d.b, &d.e1, &d.e2}) {
        v->reserve(n);
    }
    for (const auto& s : traj.states) {
        const auto r = eval(s);
        d.t.push_back(s.t);
        d.d_theta.push_back(r.d_theta);
        d.d_omega.push_back(r.d_omega);
        d.d_a.push_back(r.d_a);
        d.d_b.push_back(r.d_b);
        d.q.push_back(r.q);
        d.p.push_back(r.p);
        d.a.push_back(r.a);
        d.b.push_back(r.b);
        d.e1.push_back(r.e1);
        d.e2.push_back(r.e2);
    }
    return d;
}

OrderHistory order_history(const Trajectory& traj) {
    OrderHistory h;
    for (const auto& s : traj.states) {
        const auto hd = higher_derivatives(traj.params, s);
        h.phase.push_back(ascending_order(s.theta));
        h.frequency.push_back(ascending_order(s.omega));
        h.acceleration.push_back(ascending_order(hd.acceleration));
        h.jerk.push_back(ascending_order(hd.jerk));
    }
    return h;
}

std::vector<std::size_t> order_change_times(const Trajectory& traj) {
    require_nonempty(traj);
    const auto h = order_history(traj);
    std::vector<std::size_t> changes;
    for (std::size_t k = 1; k < traj.size(); ++k) {
        if (h.phase[k] != h.phase[k - 1] || h.frequency[k] != h.frequency[k - 1] ||
            h.acceleration[k] != h.acceleration[k - 1]) {
            changes.push_back(k);
        }
    }
    return changes;
}

std::optional<std::size_t> detect_t_star_index(const DiagnosticsSeries& series, const TheoryConfig& cfg) {
    if (series.size() == 0) throw ArgumentError("empty diagnostics series");
    std::optional<std::size_t> first;
    for (std::size_t k = series.size(); k-- > 0;) {
        if (!(series.d_theta[k] < cfg.d_inf)) break;
        first = k;
    }
    return first;
}

std::optional<double> detect_t_star(const DiagnosticsSeries& series, const TheoryConfig& cfg) {
    const auto k = detect_t_star_index(series, cfg);
    if (!k) return std::nullopt;
    return series.t[*k];
}

double fit_decay_rate(std::span<const double> times, std::span<const double> values, TimeWindow window) {
    if (times.size() != values.size()) throw ArgumentError("times and values differ in length");
    double st = 0.0, sy = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] < window.begin || times[k] > window.end) continue;
        if (!(values[k] > 0.0)) {
            throw ArgumentError("non-positive value " + std::to_string(values[k]) + " at t = " +
                                std::to_string(times[k]) + " inside the fit window");
        }
        st += times[k];
        sy += std::log(values[k]);
        ++count;
    }
    if (count < 3) throw ArgumentError("decay fit needs at least 3 samples in the window");
    const double t_mean = st / static_cast<double>(count);
    const double y_mean = sy / static_cast<double>(count);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] < window.begin || times[k] > window.end) continue;
        const double dt = times[k] - t_mean;
        sxx += dt * dt;
        sxy += dt * (std::log(values[k]) - y_mean);
    }
    if (!(sxx > 0.0)) throw ArgumentError("decay fit window has zero time extent");
    return -sxy / sxx;
}

std::vector<double> centered_difference(std::span<const double> times, std::span<const double> values) {
    const std::size_t n = times.size();
    if (n != values.size()) throw ArgumentError("times and values differ in length");
    if (n < 2) throw ArgumentError("finite differences need at least 2 samples");
    std::vector<double> d(n);
    d[0] = (values[1] - values[0]) / (times[1] - times[0]);
    d[n - 1] = (values[n - 1] - values[n - 2]) / (times[n - 1] - times[n - 2]);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        // Non-uniform three-point formula (reduces to (v+ - v-)/(2h) on a uniform grid).
        const double h0 = times[k] - times[k - 1];
        const double h1 = times[k + 1] - times[k];
        d[k] = (h0 * h0 * values[k + 1] - h1 * h1 * values[k - 1] + (h1 * h1 - h0 * h0) * values[k]) /
               (h0 * h1 * (h0 + h1));
    }
    return d;
}

const InequalityResult* CertificateReport::find(const std::string& name) const {
    for (const auto& r : inequalities) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

bool CertificateReport::passes(double threshold) const {
    return std::all_of(inequalities.begin(), inequalities.end(),
                       [&](const InequalityResult& r) { return r.evaluated && r.fraction >= threshold; });
}

CertificateReport certify_inequalities(const Trajectory& traj, const TheoryConfig& cfg, double tol) {
    const std::size_t count = traj.size();
    if (count < 3) {
        const double spacing = count == 2 ? traj.states[1].t - traj.states[0].t : 0.0;
        throw ResolutionError("certification needs at least 3 samples, trajectory has " + std::to_string(count),
                              spacing / 10.0);
    }
    const ModelParams& p = traj.params;
    const double n = static_cast<double>(p.size());
    const double m = p.inertia;
    const double k = p.coupling;
    const double alpha = p.frustration;
    const double e = eta(cfg.c);
    const double mn = make_weights(cfg.c, p.size()).largest();

    const TermEvaluator eval(p, cfg);
    std::vector<SampleTerms> terms;
    terms.reserve(count);
    for (const auto& s : traj.states) terms.push_back(eval(s));

    std::vector<std::vector<std::size_t>> phase, freq, acc, jrk;
    for (auto* v : {&phase, &freq, &acc, &jrk}) v->reserve(count);
    for (auto& t : terms) {
        phase.push_back(std::move(t.phase_order));
        freq.push_back(std::move(t.frequency_order));
        acc.push_back(std::move(t.acceleration_order));
        jrk.push_back(std::move(t.jerk_order));
    }

    CertificateReport rep;
    rep.tolerance = tol;
    rep.samples = count;
    const double d_omega0 = terms.front().d_omega;
    rep.lambda = lambda_rate(p, cfg);
    rep.lambda_tilde = lambda_tilde_rate(p, cfg, d_omega0);

    std::vector<std::uint8_t> phase_ok(count, 0), freq_ok(count, 0);
    std::size_t phase_admissible = 0;
    for (std::size_t s = 1; s + 1 < count; ++s) {
        phase_ok[s] = frozen_around(s, {&phase, &freq, &acc}) ? 1 : 0;
        freq_ok[s] = frozen_around(s, {&freq, &acc, &jrk}) ? 1 : 0;
        phase_admissible += phase_ok[s];
    }
    rep.admissible_fraction = static_cast<double>(phase_admissible) / static_cast<double>(count - 2);
    const double spacing = (traj.states.back().t - traj.states.front().t) / static_cast<double>(count - 1);
    if (rep.admissible_fraction < 0.8) {
        char percent[32];
        std::snprintf(percent, sizeof percent, "%.1f", 100.0 * rep.admissible_fraction);
        throw ResolutionError(std::string("only ") + percent +
                                  " % of samples lie inside constant-order intervals (need 80 %)",
                              spacing * std::max(rep.admissible_fraction, 0.1) / 4.0);
    }

    // t_star and the entrance-time bound.
    DiagnosticsSeries series;
    series.t = traj.times();
    series.d_theta.reserve(count);
    for (const auto& t : terms) series.d_theta.push_back(t.d_theta);
    const auto star = detect_t_star_index(series, cfg);
    const double drift = p.natural_frequency_diameter() + 2.0 * n * k * std::sin(alpha);
    if (star) {
        rep.t_star = series.t[*star];
        const double drop = terms.front().e1 - terms[*star].e1;
        rep.t_star_bound = drift > 0.0 ? drop / drift
                                       : (drop > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        rep.t_star_bound_holds = *rep.t_star - series.t.front() <= *rep.t_star_bound + spacing;
        double max_after = 0.0;
        for (std::size_t s = *star; s < count; ++s) max_after = std::max(max_after, terms[s].d_theta);
        rep.max_d_theta_after_t_star = max_after;

        std::vector<double> d_omega;
        for (const auto& t : terms) d_omega.push_back(t.d_omega);
        try {
            rep.fitted_rate = fit_decay_rate(series.t, d_omega, {*rep.t_star, series.t.back()});
        } catch (const ArgumentError& err) {
            rep.notices.push_back(std::string("decay rate not fitted: ") + err.what());
        }
    } else {
        rep.notices.push_back("D_theta never settles below D_inf within the horizon; frequency-side "
                              "differential inequalities skipped");
    }

    // Phase side.
    InequalityTally phase_decay("phase_spread_decay", "m Q'' + Q' <= D_Omega + 2 N kappa sin(alpha) - (2 eta kappa cos(alpha) sin(gamma) / (gamma M_N)) Q", tol);
    InequalityTally accel_bound("acceleration_spread_bound", "m A' + A <= (2 N kappa / eta) P", tol);
    InequalityTally freq_bound("frequency_spread_bound", "m P' + P <= D_Omega + 2 N kappa sin(alpha) + (2 N kappa cos(alpha) / eta) Q", tol);
    InequalityTally energy1_decay("phase_energy_decay", "E1' <= 2 (D_Omega + 2 N kappa sin(alpha)) - Lambda E1", tol);
    const double q_decay = 2.0 * e * k * std::cos(alpha) * std::sin(cfg.gamma) / (cfg.gamma * mn);
    for (std::size_t s = 1; s + 1 < count; ++s) {
        if (!phase_ok[s]) continue;
        const auto& r = terms[s];
        const double t = series.t[s];
        phase_decay.add(t, m * r.ddq + r.dq, drift - q_decay * r.q);
        accel_bound.add(t, m * r.da + r.a, 2.0 * n * k / e * r.p);
        freq_bound.add(t, m * r.dp + r.p, drift + 2.0 * n * k * std::cos(alpha) / e * r.q);
        energy1_decay.add(t, r.de1, 2.0 * drift - rep.lambda * r.e1);
    }
    rep.inequalities.push_back(std::move(phase_decay).finish());
    rep.inequalities.push_back(std::move(accel_bound).finish());
    rep.inequalities.push_back(std::move(freq_bound).finish());
    rep.inequalities.push_back(std::move(energy1_decay).finish());

    // Pointwise frequency bound, every sample.
    const double freq_cap = d_omega0 + p.natural_frequency_diameter() + 2.0 * n * k;
    InequalityTally cap_tally("frequency_diameter_cap", "D_omega(t) <= D_omega(0) + D_Omega + 2 N kappa", tol);
    for (std::size_t s = 0; s < count; ++s) cap_tally.add(series.t[s], terms[s].d_omega, freq_cap);
    rep.inequalities.push_back(std::move(cap_tally).finish());

    const std::string freq_decay_text = "m P'' + P' <= -(2 eta kappa cos(D_inf + alpha) / M_N) P";
    const std::string jerk_bound_text = "m B' + B <= 2 kappa N (D_omega(0) + D_Omega + 2 N kappa) P / eta + 2 kappa N A / eta";
    const std::string energy2_decay_text = "E2' <= -Lambda_tilde E2";
    if (star) {
        InequalityTally freq_decay("frequency_spread_decay", freq_decay_text, tol);
        InequalityTally jerk_bound("jerk_spread_bound", jerk_bound_text, tol);
        InequalityTally energy2_decay("frequency_energy_decay", energy2_decay_text, tol);
        const double p_decay = 2.0 * e * k * std::cos(cfg.d_inf + alpha) / mn;
        for (std::size_t s = std::max<std::size_t>(*star, 1); s + 1 < count; ++s) {
            if (!freq_ok[s]) continue;
            const auto& r = terms[s];
            const double t = series.t[s];
            freq_decay.add(t, m * r.ddp + r.dp, -p_decay * r.p);
            jerk_bound.add(t, m * r.db + r.b, 2.0 * k * n * freq_cap * r.p / e + 2.0 * k * n * r.a / e);
            energy2_decay.add(t, r.de2, -rep.lambda_tilde * r.e2);
        }
        rep.inequalities.push_back(std::move(freq_decay).finish());
        rep.inequalities.push_back(std::move(jerk_bound).finish());
        rep.inequalities.push_back(std::move(energy2_decay).finish());
    } else {
        const std::string why = "skipped: t_star not detected";
        rep.inequalities.push_back(skipped("frequency_spread_decay", freq_decay_text, why));
        rep.inequalities.push_back(skipped("jerk_spread_bound", jerk_bound_text, why));
        rep.inequalities.push_back(skipped("frequency_energy_decay", energy2_decay_text, why));
    }
    return rep;
}

}  // namespace kuramoto
