#pragma once

// Shared fixtures and hand-rolled random generators for the test suite.

#include "kuramoto/analysis.hpp"
#include "kuramoto/digraph.hpp"
#include "kuramoto/energy.hpp"
#include "kuramoto/integrator.hpp"
#include "kuramoto/model.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace kuramoto::testing {

/// Deterministic value source for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    std::vector<double> vector(std::size_t n, double lo, double hi) {
        std::vector<double> v(n);
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }

    /// Random digraph without self loops; each off-diagonal edge present with probability p.
    Digraph digraph(std::size_t n, double p) {
        std::vector<int> adj(n * n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && coin(p)) adj[i * n + j] = 1;
        return Digraph(n, adj);
    }

    /// Directed cycle plus random chords: always strongly connected.
    Digraph strongly_connected(std::size_t n, double chord_probability) {
        std::vector<int> adj = Digraph::directed_cycle(n).adjacency();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && coin(chord_probability)) adj[i * n + j] = 1;
        return Digraph(n, adj);
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Three-oscillator directed ring with the small-inertia, small-frustration parameters.
inline ModelParams reference_params() {
    ModelParams p;
    p.inertia = 1e-5;
    p.coupling = 1.0;
    p.frustration = 1e-5;
    p.natural_frequencies = {6e-5, -9e-5, 2e-5};
    p.graph = Digraph::directed_cycle(3);
    return p;
}

/// Reconstructed initial data with D_theta(0) = 1.0330 and D_omega(0) = 0.6080.
inline State reference_initial() {
    State s;
    s.theta = {0.4127, 1.4457, 0.9012};
    s.omega = {-0.2315, 0.3765, 0.0842};
    return s;
}

inline TheoryConfig reference_theory(int c = 7) {
    TheoryConfig cfg;
    cfg.gamma = 1.8955;
    cfg.d_inf = 0.4;
    cfg.epsilon = 1e-3;
    cfg.c = c;
    return cfg;
}

/// Reference run to t = 15 with dt = m/4, recording every 100th step.
/// Computed once per test binary.
inline const Trajectory& reference_trajectory() {
    static const Trajectory traj = [] {
        const ModelParams p = reference_params();
        IntegratorConfig cfg;
        cfg.dt = default_dt(p);
        cfg.t_end = 15.0;
        cfg.record_stride = 100;
        return simulate(p, reference_initial(), cfg);
    }();
    return traj;
}

/// Identical oscillators at rest: an exact fixed point.
inline ModelParams equilibrium_params(std::size_t n = 3) {
    ModelParams p;
    p.inertia = 0.1;
    p.coupling = 1.0;
    p.frustration = 0.0;
    p.natural_frequencies.assign(n, 0.25);
    p.graph = Digraph::directed_cycle(n);
    return p;
}

inline State equilibrium_state(std::size_t n = 3) {
    State s;
    s.theta.assign(n, 0.7);
    s.omega.assign(n, 0.25);
    return s;
}

}  // namespace kuramoto::testing
