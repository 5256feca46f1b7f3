#pragma once

#include "kuramoto/digraph.hpp"

#include <span>
#include <vector>

namespace kuramoto {

/// Parameters of the inertial Kuramoto model with frustration:
///
///   m theta_i'' + theta_i' = Omega_i + kappa * sum_{j in N_i} sin(theta_j - theta_i + alpha)
struct ModelParams {
    double inertia = 1.0;       ///< m > 0
    double coupling = 1.0;      ///< kappa >= 0
    double frustration = 0.0;   ///< alpha in [0, pi/2)
    std::vector<double> natural_frequencies;  ///< Omega_i
    Digraph graph = Digraph::empty(1);

    [[nodiscard]] std::size_t size() const noexcept { return graph.size(); }

    /// Throws ArgumentError if any invariant is violated.
    void validate() const;

    [[nodiscard]] double max_natural_frequency() const;
    [[nodiscard]] double min_natural_frequency() const;
    /// D_Omega = max Omega_i - min Omega_i.
    [[nodiscard]] double natural_frequency_diameter() const;
};

/// Integrated variables: unwrapped phases and frequencies at time t.
struct State {
    double t = 0.0;
    std::vector<double> theta;
    std::vector<double> omega;

    [[nodiscard]] std::size_t size() const noexcept { return theta.size(); }
    [[nodiscard]] bool is_finite() const noexcept;

    friend bool operator==(const State&, const State&) = default;
};

struct StateDerivative {
    std::vector<double> dtheta;
    std::vector<double> domega;
};

/// Throws ArgumentError unless theta, omega and Omega all have length graph.size().
void check_dimensions(const ModelParams& p, const State& s);

/// Allocation-free right-hand side used by the stepper. All spans have length n.
void evaluate_rhs(const ModelParams& p, std::span<const double> theta, std::span<const double> omega,
                  std::span<double> dtheta, std::span<double> domega);

/// (theta', omega') of the first-order system.
[[nodiscard]] StateDerivative rhs(const ModelParams& p, const State& s);

/// a_i = omega_i', identical to rhs(p, s).domega.
[[nodiscard]] std::vector<double> acceleration(const ModelParams& p, const State& s);

/// b_i = a_i' = ( kappa * sum cos(theta_j - theta_i + alpha) (omega_j - omega_i) - a_i ) / m.
[[nodiscard]] std::vector<double> jerk(const ModelParams& p, const State& s);

/// b_i' from differentiating the jerk equation once more:
///   m b_i' + b_i = -kappa sum sin(.)(omega_j - omega_i)^2 + kappa sum cos(.)(a_j - a_i).
/// Used for the exact within-interval derivative of the jerk functional.
[[nodiscard]] std::vector<double> jerk_rate(const ModelParams& p, const State& s);

/// Acceleration, jerk and jerk rate evaluated together (shares the trig work).
struct HigherDerivatives {
    std::vector<double> acceleration;
    std::vector<double> jerk;
    std::vector<double> jerk_rate;
};
[[nodiscard]] HigherDerivatives higher_derivatives(const ModelParams& p, const State& s);

}  // namespace kuramoto
