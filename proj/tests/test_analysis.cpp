#include "support.hpp"

#include "kuramoto/convex.hpp"
#include "kuramoto/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace kuramoto;
using kuramoto::testing::Gen;
using kuramoto::testing::reference_theory;
using kuramoto::testing::reference_trajectory;

namespace {

Trajectory equilibrium_trajectory() {
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 2.0;
    return simulate(kuramoto::testing::equilibrium_params(), kuramoto::testing::equilibrium_state(), cfg);
}

State make_state(double t, std::vector<double> theta, std::vector<double> omega) {
    State s;
    s.t = t;
    s.theta = std::move(theta);
    s.omega = std::move(omega);
    return s;
}

}  // namespace

TEST_CASE("diagnostics of the uniform equilibrium are identically zero") {
    const auto series = diagnostics(equilibrium_trajectory(), reference_theory());
    REQUIRE(series.size() == 201);
    for (const auto* col : {&series.d_theta, &series.d_omega, &series.d_a, &series.d_b, &series.q, &series.p,
                            &series.a, &series.b, &series.e1, &series.e2}) {
        for (double v : *col) CHECK(v == 0.0);
    }
}

TEST_CASE("single-sample diagnostics") {
    Trajectory traj;
    traj.params = kuramoto::testing::reference_params();
    traj.states.push_back(kuramoto::testing::reference_initial());
    const auto series = diagnostics(traj, reference_theory());
    REQUIRE(series.size() == 1);
    CHECK(series.d_theta[0] == doctest::Approx(1.0330));
    CHECK(series.d_omega[0] == doctest::Approx(0.6080));
    CHECK(series.e1[0] == energy1(traj.params, traj.states[0], reference_theory()));
}

TEST_CASE("reference run: phase diameter stays below gamma and each spread is sandwiched") {
    const auto series = diagnostics(reference_trajectory(), reference_theory());
    const double e = eta(7);
    for (std::size_t k = 0; k < series.size(); ++k) {
        REQUIRE(series.d_theta[k] < 1.8955);
        const double tol = 1e-12;
        CHECK(series.q[k] >= e * series.d_theta[k] - tol * std::max(1.0, series.d_theta[k]));
        CHECK(series.q[k] <= series.d_theta[k] + tol * std::max(1.0, series.d_theta[k]));
        CHECK(series.p[k] >= e * series.d_omega[k] - tol * std::max(1.0, series.d_omega[k]));
        CHECK(series.p[k] <= series.d_omega[k] + tol * std::max(1.0, series.d_omega[k]));
        CHECK(series.a[k] >= e * series.d_a[k] - tol * std::max(1.0, series.d_a[k]));
        CHECK(series.a[k] <= series.d_a[k] + tol * std::max(1.0, series.d_a[k]));
        CHECK(series.b[k] >= e * series.d_b[k] - tol * std::max(1.0, series.d_b[k]));
        CHECK(series.b[k] <= series.d_b[k] + tol * std::max(1.0, series.d_b[k]));
    }
}

TEST_CASE("order changes") {
    Trajectory frozen;
    frozen.params = kuramoto::testing::reference_params();
    for (int k = 0; k < 5; ++k) frozen.states.push_back(make_state(k, {0.0 + k, 1.0 + k, 2.0 + k}, {0.0, 0.1, 0.2}));
    CHECK(order_change_times(frozen).empty());

    Trajectory swapped;
    swapped.params = kuramoto::testing::equilibrium_params();
    swapped.params.coupling = 0.0;
    swapped.states.push_back(make_state(0.0, {0, 1, 2}, {0.25, 0.30, 0.35}));
    swapped.states.push_back(make_state(1.0, {0, 1, 2}, {0.30, 0.25, 0.35}));
    CHECK(order_change_times(swapped) == std::vector<std::size_t>{1});
}

TEST_CASE("reference run: order changes are sparse and follow the rotating linear mode") {
    // Near synchrony the ring relaxes like omega' = -L omega with eigenvalues 1.5 +- i sqrt(3)/2,
    // so the frequency profile rotates while it decays: two frequencies cross every
    // 2 pi / (6 * sqrt(3)/2) = 1.2092 time units, all the way down the exponential tail.
    const Trajectory& traj = reference_trajectory();
    const auto changes = order_change_times(traj);
    CHECK(!changes.empty());
    CHECK(changes.size() < traj.size() / 100);

    const auto orders = order_history(traj);
    const auto series = diagnostics(traj, reference_theory());
    const auto star = detect_t_star_index(series, reference_theory());
    REQUIRE(star);
    std::vector<double> crossings;
    for (std::size_t idx : changes) {
        if (idx > *star && orders.frequency[idx] != orders.frequency[idx - 1]) crossings.push_back(series.t[idx]);
    }
    REQUIRE(crossings.size() >= 5);
    const double period = 2.0 * 3.14159265358979323846 / (6.0 * std::sqrt(3.0) / 2.0);
    for (std::size_t k = 1; k < crossings.size(); ++k) {
        CHECK(crossings[k] - crossings[k - 1] == doctest::Approx(period).epsilon(0.02));
    }
}

TEST_CASE("entrance time detection") {
    DiagnosticsSeries below;
    below.t = {0, 1, 2, 3};
    below.d_theta = {0.3, 0.2, 0.1, 0.05};
    CHECK(detect_t_star(below, reference_theory()) == 0.0);

    DiagnosticsSeries never;
    never.t = {0, 1, 2};
    never.d_theta = {1.0, 0.9, 0.8};
    CHECK_FALSE(detect_t_star(never, reference_theory()).has_value());

    DiagnosticsSeries late;
    late.t = {0, 1, 2, 3, 4};
    late.d_theta = {0.9, 0.3, 0.5, 0.2, 0.1};
    CHECK(detect_t_star(late, reference_theory()) == 3.0);
    CHECK(detect_t_star_index(late, reference_theory()) == std::size_t{3});
}

TEST_CASE("entrance time is stable under extension when the diameter stays small") {
    DiagnosticsSeries s;
    s.t = {0, 1, 2, 3, 4};
    s.d_theta = {0.9, 0.7, 0.35, 0.3, 0.2};
    const auto before = detect_t_star(s, reference_theory());
    s.t.insert(s.t.end(), {5, 6, 7});
    s.d_theta.insert(s.d_theta.end(), {0.1, 0.39, 0.05});
    CHECK(detect_t_star(s, reference_theory()) == before);

    // Same property on a real run: halve the horizon of the reference trajectory.
    const auto full = diagnostics(reference_trajectory(), reference_theory());
    DiagnosticsSeries half = full;
    const std::size_t cut = full.size() / 2;
    half.t.resize(cut);
    half.d_theta.resize(cut);
    CHECK(detect_t_star(half, reference_theory()) == detect_t_star(full, reference_theory()));
}

TEST_CASE("decay rate fitting") {
    std::vector<double> t, v, c;
    for (int k = 0; k <= 200; ++k) {
        t.push_back(0.37 + 0.05 * k);
        v.push_back(3.0 * std::exp(-2.0 * t.back()));
        c.push_back(4.2);
    }
    CHECK(fit_decay_rate(t, v, {t.front(), t.back()}) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit_decay_rate(t, v, {2.0, 5.0}) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(fit_decay_rate(t, c, {t.front(), t.back()})) < 1e-12);

    std::vector<double> bad = v;
    bad[50] = 0.0;
    CHECK_THROWS_AS((void)fit_decay_rate(t, bad, {t.front(), t.back()}), ArgumentError);
    CHECK_THROWS_AS((void)fit_decay_rate(t, v, {0.37, 0.43}), ArgumentError);
}

TEST_CASE("property: fitted rate is invariant under positive scaling") {
    Gen gen(61);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> t, v;
        const double rate = gen.uniform(-1, 5);
        for (int k = 0; k < 50; ++k) {
            t.push_back(0.1 * k + gen.uniform(0, 0.05));
            v.push_back(std::exp(-rate * t.back() + gen.uniform(-0.2, 0.2)));
        }
        const double base = fit_decay_rate(t, v, {t.front(), t.back()});
        const double scale = std::pow(10.0, gen.uniform(-5, 5));
        for (auto& x : v) x *= scale;
        CHECK(std::abs(fit_decay_rate(t, v, {t.front(), t.back()}) - base) <= 1e-12 * std::max(1.0, std::abs(base)));
    }
}

TEST_CASE("centered differences are exact on quadratics") {
    const std::vector<double> t{0.0, 0.1, 0.25, 0.5, 0.6};
    std::vector<double> y;
    for (double x : t) y.push_back(3 * x * x - x + 2);
    const auto d = centered_difference(t, y);
    // Interior points use the three-point formula, exact for quadratics; the ends are one-sided.
    for (std::size_t k = 1; k + 1 < t.size(); ++k) CHECK(d[k] == doctest::Approx(6 * t[k] - 1).epsilon(1e-12));
    CHECK(d.front() == doctest::Approx((y[1] - y[0]) / (t[1] - t[0])));
    CHECK(d.back() == doctest::Approx((y[4] - y[3]) / (t[4] - t[3])));
}

TEST_CASE("exact spread derivatives match finite differences of the spread on frozen stretches") {
    const Trajectory& traj = reference_trajectory();
    const auto series = diagnostics(traj, reference_theory());
    const auto w = make_weights(7, 3);
    const auto orders = order_history(traj);
    const auto dq_fd = centered_difference(series.t, series.q);
    const auto dp_fd = centered_difference(series.t, series.p);
    std::size_t checked = 0;
    for (std::size_t k = 1; k + 1 < traj.size(); k += 37) {
        if (orders.phase[k - 1] != orders.phase[k] || orders.phase[k + 1] != orders.phase[k]) continue;
        if (orders.frequency[k - 1] != orders.frequency[k] || orders.frequency[k + 1] != orders.frequency[k]) continue;
        const State& s = traj.states[k];
        const double h = series.t[k + 1] - series.t[k];
        const double dq = spread_with_order(s.omega, orders.phase[k], w);
        const double dp = spread_with_order(acceleration(traj.params, s), orders.frequency[k], w);
        // O(h^2) truncation, bounded by the next derivatives, plus cancellation noise.
        const double ddq = spread_with_order(acceleration(traj.params, s), orders.phase[k], w);
        const double ddp = spread_with_order(jerk(traj.params, s), orders.frequency[k], w);
        CHECK(std::abs(dq - dq_fd[k]) <= h * h * (std::abs(ddq) + 1.0) * 10 + 1e-9 * (1.0 + std::abs(dq)) + h * std::abs(ddq) * 1e-3);
        CHECK(std::abs(dp - dp_fd[k]) <= h * h * (std::abs(ddp) + 1.0) * 10 + 1e-6 * (1.0 + std::abs(dp)));
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("certification of the uniform equilibrium") {
    const auto rep = certify_inequalities(equilibrium_trajectory(), reference_theory(), 1e-6);
    CHECK(rep.t_star == 0.0);
    REQUIRE(rep.inequalities.size() == 8);
    for (const auto& r : rep.inequalities) {
        CHECK(r.evaluated);
        CHECK(r.fraction == 1.0);
        CHECK(r.worst_residual <= 0.0);
    }
    CHECK(rep.passes(1.0));
}

TEST_CASE("certification of the reference run") {
    const auto rep = certify_inequalities(reference_trajectory(), reference_theory(), 1e-6);
    CHECK(rep.admissible_fraction > 0.99);
    for (const char* name : {"phase_spread_decay", "acceleration_spread_bound", "frequency_spread_bound", "phase_energy_decay", "frequency_diameter_cap", "frequency_spread_decay",
                             "jerk_spread_bound", "frequency_energy_decay"}) {
        const auto* r = rep.find(name);
        REQUIRE(r != nullptr);
        CHECK(r->evaluated);
        CHECK(r->fraction >= 0.99);
        CHECK(r->fraction >= 0.0);
        CHECK(r->fraction <= 1.0);
    }
    CHECK(rep.find("frequency_diameter_cap")->fraction == 1.0);
    CHECK(rep.find("frequency_diameter_cap")->admissible == rep.samples);
    CHECK(rep.passes(0.99));
    REQUIRE(rep.t_star);
    REQUIRE(rep.t_star_bound);
    CHECK(rep.t_star_bound_holds);
    CHECK(*rep.max_d_theta_after_t_star < 0.4);
    REQUIRE(rep.fitted_rate);
    CHECK(*rep.fitted_rate >= rep.lambda_tilde);
    CHECK(rep.lambda == doctest::Approx(4.9602928851369903e-3).epsilon(1e-12));
}

TEST_CASE("a hand-built breach of the frequency bound is reported, not thrown") {
    Trajectory traj;
    traj.params = kuramoto::testing::equilibrium_params();
    traj.params.coupling = 0.01;
    // cap = D_omega(0) + D_Omega + 2 N kappa = 0.1 + 0 + 0.06 = 0.16
    for (int k = 0; k < 20; ++k) {
        const double spread_w = k == 10 ? 0.5 : 0.1;
        traj.states.push_back(make_state(0.01 * k, {0.0, 0.1, 0.2}, {0.25, 0.25 + spread_w / 2, 0.25 + spread_w}));
    }
    const auto rep = certify_inequalities(traj, reference_theory(), 1e-6);
    const auto* r = rep.find("frequency_diameter_cap");
    REQUIRE(r != nullptr);
    CHECK(r->admissible == 20);
    CHECK(r->satisfied == 19);
    CHECK(r->fraction < 1.0);
    REQUIRE(r->violation_times.size() == 1);
    CHECK(r->violation_times[0] == doctest::Approx(0.1));
}

TEST_CASE("too short or too coarse trajectories are resolution errors") {
    Trajectory one;
    one.params = kuramoto::testing::reference_params();
    one.states.push_back(kuramoto::testing::reference_initial());
    CHECK_THROWS_AS((void)certify_inequalities(one, reference_theory(), 1e-6), ResolutionError);

    // Reference dynamics sampled every 2.5 time units: orderings differ between almost all samples.
    Trajectory coarse;
    coarse.params = kuramoto::testing::reference_params();
    Gen gen(62);
    for (int k = 0; k < 40; ++k) {
        coarse.states.push_back(make_state(k, gen.vector(3, 0, 1), gen.vector(3, -1, 1)));
    }
    try {
        (void)certify_inequalities(coarse, reference_theory(), 1e-6);
        FAIL("expected a resolution error");
    } catch (const ResolutionError& e) {
        CHECK(e.suggested_dt() >= 0.0);
    }
}

TEST_CASE("frequency-side checks are skipped when the phase diameter never settles") {
    ModelParams p;
    p.inertia = 0.05;
    p.coupling = 0.0;
    p.natural_frequencies = {0.0, 0.5, 1.0};
    p.graph = Digraph::directed_cycle(3);
    State s;
    s.theta = {0.0, 0.5, 1.0};
    s.omega = {0.0, 0.5, 1.0};
    IntegratorConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = 2.0;
    const auto rep = certify_inequalities(simulate(p, s, cfg), reference_theory(), 1e-6);
    CHECK_FALSE(rep.t_star.has_value());
    CHECK_FALSE(rep.find("frequency_spread_decay")->evaluated);
    CHECK(rep.find("frequency_spread_decay")->note == "skipped: t_star not detected");
    CHECK_FALSE(rep.passes(0.5));
    CHECK_FALSE(rep.notices.empty());
}

TEST_CASE("property: random passing configurations certify without violations") {
    Gen gen(63);
    int found = 0, attempts = 0;
    while (found < 10 && attempts < 100000) {
        ++attempts;
        ModelParams p;
        const std::size_t n = 2 + gen.index(2);
        p.graph = gen.strongly_connected(n, 0.5);
        p.coupling = gen.uniform(0.5, 1.5);
        p.inertia = std::pow(10.0, n == 2 ? gen.uniform(-5.0, -4.0) : gen.uniform(-5.5, -5.0));
        p.frustration = std::pow(10.0, gen.uniform(-7, -4));
        p.natural_frequencies = gen.vector(n, 0.0, std::pow(10.0, gen.uniform(-7, -4)));
        State s;
        s.theta = gen.vector(n, 0.0, gen.uniform(0.2, 1.0));
        s.omega = gen.vector(n, -0.3, 0.3);
        TheoryConfig cfg;
        cfg.gamma = gen.uniform(1.2, 2.2);
        cfg.d_inf = gen.uniform(0.2, 0.6);
        cfg.epsilon = 1e-3;
        try {
            cfg.c = auto_select_c(p, cfg, diameter(s.theta));
        } catch (const InfeasibleError&) {
            continue;
        }
        if (!check_conditions(p, s, cfg).all_pass()) continue;
        ++found;

        IntegratorConfig ic;
        ic.dt = default_dt(p);
        ic.t_end = 6.0;
        ic.record_stride = std::max<std::size_t>(1, static_cast<std::size_t>(ic.step_count() / 20000));
        const Trajectory traj = simulate(p, s, ic);
        const auto rep = certify_inequalities(traj, cfg, 1e-6);
        INFO("n = " << n << ", m = " << p.inertia << ", kappa = " << p.coupling << ", c = " << cfg.c);
        for (const auto& r : rep.inequalities) {
            INFO(r.name << " worst residual " << r.worst_residual << " at t = " << r.worst_time);
            CHECK(r.evaluated);
            CHECK(r.satisfied == r.admissible);
        }
    }
    CHECK(found == 10);
}
