#include "kuramoto/energy.hpp"

#include "kuramoto/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace kuramoto {

namespace {

constexpr double pi = std::numbers::pi;

ConditionCheck strict_less(std::string name, double lhs, double rhs) {
    ConditionCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = rhs - lhs;
    c.pass = lhs < rhs;  // false whenever either side is NaN
    return c;
}

double count(const ModelParams& p) { return static_cast<double>(p.size()); }

}  // namespace

void TheoryConfig::validate(double alpha) const {
    if (!(gamma > 0.0 && gamma < pi)) throw ArgumentError("gamma must lie in (0, pi)");
    if (!(d_inf > 0.0 && d_inf + alpha < pi / 2)) {
        throw ArgumentError("D_inf must be positive with D_inf + alpha < pi/2");
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ArgumentError("epsilon must lie in (0, 1)");
    if (c <= 2) throw ArgumentError("convexity parameter c must exceed 2");
}

double diameter(std::span<const double> z) {
    if (z.empty()) throw ArgumentError("diameter of an empty vector");
    const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
    return *hi - *lo;
}

double RateBranches::value() const { return std::min({coupling_branch, inertia_branch, half_inverse_inertia}); }

RateBranches lambda_branches(const ModelParams& p, const TheoryConfig& cfg) {
    const double n = count(p);
    const double e = eta(cfg.c);
    const double mn = make_weights(cfg.c, p.size()).largest();
    const double k = p.coupling;
    const double m = p.inertia;
    const double sg = std::sin(cfg.gamma);
    RateBranches r;
    r.coupling_branch = e * k * std::cos(p.frustration) * sg / (cfg.gamma * mn);
    r.inertia_branch = 1.0 / m - 8.0 * n * n * k * cfg.gamma * mn / (e * e * e * sg);
    r.half_inverse_inertia = 1.0 / (2.0 * m);
    return r;
}

double lambda_rate(const ModelParams& p, const TheoryConfig& cfg) { return lambda_branches(p, cfg).value(); }

RateBranches lambda_tilde_branches(const ModelParams& p, const TheoryConfig& cfg, double d_omega0) {
    const double n = count(p);
    const double e = eta(cfg.c);
    const double mn = make_weights(cfg.c, p.size()).largest();
    const double k = p.coupling;
    const double m = p.inertia;
    const double cq = std::cos(cfg.d_inf + p.frustration);
    const double d_nat = p.natural_frequency_diameter();
    const double a_weight = e * e * cq / (2.0 * n * mn);
    RateBranches r;
    r.coupling_branch = e * k * cq / mn - 4.0 * m * k * n * (d_omega0 + d_nat + 2.0 * n * k) / e;
    r.inertia_branch = (a_weight - 4.0 * n * m * k / e) / (m * a_weight);
    r.half_inverse_inertia = 1.0 / (2.0 * m);
    return r;
}

double lambda_tilde_rate(const ModelParams& p, const TheoryConfig& cfg, double d_omega0) {
    return lambda_tilde_branches(p, cfg, d_omega0).value();
}

double energy1_frequency_weight(const ModelParams& p, const TheoryConfig& cfg) {
    const double e = eta(cfg.c);
    const double mn = make_weights(cfg.c, p.size()).largest();
    return e * e * std::sin(cfg.gamma) / (2.0 * count(p) * cfg.gamma * mn);
}

double energy2_acceleration_weight(const ModelParams& p, const TheoryConfig& cfg) {
    const double e = eta(cfg.c);
    const double mn = make_weights(cfg.c, p.size()).largest();
    return e * e * std::cos(cfg.d_inf + p.frustration) / (2.0 * count(p) * mn);
}

double energy1(const ModelParams& p, const State& s, const TheoryConfig& cfg) {
    const auto w = make_weights(cfg.c, p.size());
    const auto a = acceleration(p, s);
    const double m = p.inertia;
    return spread(s.theta, w) + energy1_frequency_weight(p, cfg) * m * spread(s.omega, w) +
           2.0 * m * m * spread(a, w);
}

double energy2(const ModelParams& p, const State& s, const TheoryConfig& cfg) {
    const auto w = make_weights(cfg.c, p.size());
    const auto a = acceleration(p, s);
    const auto b = jerk(p, s);
    const double m = p.inertia;
    return spread(s.omega, w) + energy2_acceleration_weight(p, cfg) * m * spread(a, w) +
           2.0 * m * m * spread(b, w);
}

int auto_select_c(const ModelParams& p, const TheoryConfig& cfg, double d_theta0) {
    const double n = count(p);
    const double phase_bound = n * cfg.gamma / std::sin(cfg.gamma);
    const double freq_bound = n / std::cos(cfg.d_inf + p.frustration);
    const double lower = std::max(phase_bound, freq_bound);
    if (!std::isfinite(lower) || lower > 1e9) {
        throw InfeasibleError("c > max{N gamma/sin gamma, N/cos(D_inf+alpha)} has no practical solution (bound " +
                              std::to_string(lower) + ")");
    }
    const double target = (1.0 - cfg.epsilon) * cfg.gamma;
    if (!(d_theta0 < target)) {
        throw InfeasibleError("D_theta(0) < (1 - 4/(c+2)) (1 - epsilon) gamma is unsatisfiable for every c: "
                              "D_theta(0) = " + std::to_string(d_theta0) + " >= (1 - epsilon) gamma = " +
                              std::to_string(target));
    }

    // Smallest integer strictly above the bound, and at least 3.
    long long c = std::max(3LL, static_cast<long long>(std::floor(lower)) + 1);
    // eta(c) > d_theta0/target  <=>  c > 4/(1 - d_theta0/target) - 2. Jump close to that
    // root, then walk to the floating-point boundary of the strict test below.
    const double analytic = 4.0 / (1.0 - d_theta0 / target) - 2.0;
    if (analytic > 1e9) throw InfeasibleError("initial-diameter condition requires c beyond 1e9");
    c = std::max(c, static_cast<long long>(std::floor(analytic)) - 1);
    const auto initial_ok = [&](long long cc) {
        return d_theta0 < (1.0 - 4.0 / (static_cast<double>(cc) + 2.0)) * target;
    };
    while (!initial_ok(c)) ++c;
    return static_cast<int>(c);
}

std::vector<const ConditionCheck*> ConditionReport::checks() const {
    return {&gamma_bound, &c_lower, &c_initial, &mk_con1, &mk_con2, &mk_con3, &mk_con4, &quarter_circle};
}

bool ConditionReport::all_pass() const {
    const auto all = checks();
    return std::all_of(all.begin(), all.end(), [](const ConditionCheck* c) { return c->pass; });
}

ConditionReport check_conditions(const ModelParams& p, const State& init, const TheoryConfig& cfg) {
    p.validate();
    check_dimensions(p, init);
    if (cfg.c <= 2) throw ArgumentError("convexity parameter c must exceed 2");

    const double n = count(p);
    const double m = p.inertia;
    const double k = p.coupling;
    const double alpha = p.frustration;
    const double g = cfg.gamma;
    const double sg = std::sin(g);
    const double cq = std::cos(cfg.d_inf + alpha);

    ConditionReport r;
    r.c = cfg.c;
    r.eta = eta(cfg.c);
    r.m_n = make_weights(cfg.c, p.size()).largest();
    r.d_theta0 = diameter(init.theta);
    r.d_omega0 = diameter(init.omega);
    r.d_a0 = diameter(acceleration(p, init));
    r.d_natural = p.natural_frequency_diameter();
    r.lambda = lambda_rate(p, cfg);
    r.lambda_tilde = lambda_tilde_rate(p, cfg, r.d_omega0);

    const double e = r.eta;
    const double mn = r.m_n;
    const double drift = r.d_natural + 2.0 * n * k * std::sin(alpha);

    r.gamma_bound = strict_less("gamma_bound", r.d_theta0, g);
    if (!(g < pi)) r.gamma_bound.pass = false;
    r.gamma_bound.margin = std::min(g - r.d_theta0, pi - g);

    const double c_bound = std::max({n * g / sg, n / cq, 2.0});
    r.c_lower = strict_less("c_lower", c_bound, static_cast<double>(cfg.c));

    const double initial_target = e * (1.0 - cfg.epsilon) * g;
    r.c_initial = strict_less("c_initial", r.d_theta0, initial_target);

    r.mk_con1 = strict_less("mk_con1", m * k, e * e * e / (8.0 * n * n * mn) * std::min(sg / g, cq));

    const double e1_bound = r.d_theta0 + energy1_frequency_weight(p, cfg) * m * r.d_omega0 + 2.0 * m * m * r.d_a0;
    r.mk_con2 = strict_less("mk_con2", e1_bound, initial_target);
    if (!(initial_target < pi)) r.mk_con2.pass = false;
    r.mk_con2.margin = std::min(r.mk_con2.margin, pi - initial_target);

    const double inf = std::numeric_limits<double>::infinity();
    const double con3_lhs = r.lambda > 0.0 ? 2.0 * drift / (e * r.lambda) : inf;
    r.mk_con3 = strict_less("mk_con3", con3_lhs, std::min((1.0 - cfg.epsilon) * g, cfg.d_inf / 2.0));

    r.mk_con4 = strict_less("mk_con4",
                            4.0 * n * m * mn * (r.d_omega0 + r.d_natural) + 8.0 * n * n * m * k * mn,
                            e * e * cq);

    r.quarter_circle = strict_less("quarter_circle", cfg.d_inf + alpha, pi / 2);
    if (!(cfg.d_inf > 0.0)) r.quarter_circle.pass = false;

    const double entrance_lhs = r.lambda > 0.0 ? 4.0 * drift / (e * r.lambda) : inf;
    r.entrance_bound = strict_less("entrance_bound", entrance_lhs, cfg.d_inf);
    return r;
}

}  // namespace kuramoto
