#pragma once

#include "kuramoto/convex.hpp"
#include "kuramoto/model.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kuramoto {

/// Analysis constants of the synchronization estimate.
struct TheoryConfig {
    double gamma = 0.0;     ///< D_theta(0) < gamma < pi
    double d_inf = 0.0;     ///< D^inf in (0, pi/2) with D^inf + alpha < pi/2
    double epsilon = 0.0;   ///< in (0, 1)
    int c = 3;              ///< convexity integer, > 2

    /// Throws ArgumentError if the ranges above are violated.
    void validate(double alpha) const;
};

/// max z - min z. Throws ArgumentError on an empty vector.
[[nodiscard]] double diameter(std::span<const double> z);

/// The three candidates of a min-of-three rate, kept for inspection.
struct RateBranches {
    double coupling_branch = 0.0;
    double inertia_branch = 0.0;
    double half_inverse_inertia = 0.0;

    [[nodiscard]] double value() const;
};

/// Rate of the phase-side Gronwall inequality (E1).
[[nodiscard]] RateBranches lambda_branches(const ModelParams& p, const TheoryConfig& cfg);
[[nodiscard]] double lambda_rate(const ModelParams& p, const TheoryConfig& cfg);

/// Rate of the frequency-side Gronwall inequality (E2); depends on D_omega(0).
[[nodiscard]] RateBranches lambda_tilde_branches(const ModelParams& p, const TheoryConfig& cfg, double d_omega0);
[[nodiscard]] double lambda_tilde_rate(const ModelParams& p, const TheoryConfig& cfg, double d_omega0);

/// Coefficient of m*P in E1: eta^2 sin(gamma) / (2 N gamma M_N).
[[nodiscard]] double energy1_frequency_weight(const ModelParams& p, const TheoryConfig& cfg);
/// Coefficient of m*A in E2: eta^2 cos(D^inf + alpha) / (2 N M_N).
[[nodiscard]] double energy2_acceleration_weight(const ModelParams& p, const TheoryConfig& cfg);

/// E1 = Q + w1 m P + 2 m^2 A.
[[nodiscard]] double energy1(const ModelParams& p, const State& s, const TheoryConfig& cfg);
/// E2 = P + w2 m A + 2 m^2 B.
[[nodiscard]] double energy2(const ModelParams& p, const State& s, const TheoryConfig& cfg);

/// Smallest integer c > 2 with
///   c > max{ N gamma / sin gamma, N / cos(D^inf + alpha) }  and
///   d_theta0 < (1 - 4/(c+2)) (1 - epsilon) gamma.
/// The c field of `cfg` is ignored. Throws InfeasibleError naming the violated inequality.
[[nodiscard]] int auto_select_c(const ModelParams& p, const TheoryConfig& cfg, double d_theta0);

/// One strict inequality lhs < rhs. margin = rhs - lhs, positive when satisfied.
struct ConditionCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool pass = false;

    friend bool operator==(const ConditionCheck&, const ConditionCheck&) = default;
};

struct ConditionReport {
    ConditionCheck gamma_bound;     ///< D_theta(0) < gamma < pi
    ConditionCheck c_lower;         ///< c > max{N gamma/sin gamma, N/cos(D^inf+alpha)}
    ConditionCheck c_initial;       ///< D_theta(0) < eta (1-eps) gamma
    ConditionCheck mk_con1;
    ConditionCheck mk_con2;
    ConditionCheck mk_con3;
    ConditionCheck mk_con4;
    ConditionCheck quarter_circle;  ///< D^inf + alpha < pi/2
    /// 4 (D_Omega + 2 N kappa sin alpha) / (eta Lambda) < D^inf, the entrance
    /// bound used for the quarter-circle trapping. Informational; not in all_pass().
    ConditionCheck entrance_bound;

    double lambda = 0.0;
    double lambda_tilde = 0.0;
    double eta = 0.0;
    double m_n = 0.0;
    int c = 0;
    double d_theta0 = 0.0;
    double d_omega0 = 0.0;
    double d_a0 = 0.0;
    double d_natural = 0.0;

    /// The eight sufficient conditions in a fixed order.
    [[nodiscard]] std::vector<const ConditionCheck*> checks() const;
    [[nodiscard]] bool all_pass() const;

    friend bool operator==(const ConditionReport&, const ConditionReport&) = default;
};

/// Evaluates the full sufficient-condition set at the initial state `init`.
/// Comparisons are strict with zero tolerance; NaN sides fail.
[[nodiscard]] ConditionReport check_conditions(const ModelParams& p, const State& init, const TheoryConfig& cfg);

}  // namespace kuramoto
