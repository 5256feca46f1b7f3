#pragma once

#include "kuramoto/energy.hpp"
#include "kuramoto/integrator.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kuramoto {

/// Per-sample diameters, convex functionals and energies of a trajectory.
struct DiagnosticsSeries {
    std::vector<double> t;
    std::vector<double> d_theta, d_omega, d_a, d_b;
    std::vector<double> q, p, a, b;   ///< spreads of theta, omega, acceleration, jerk
    std::vector<double> e1, e2;

    [[nodiscard]] std::size_t size() const noexcept { return t.size(); }
};

[[nodiscard]] DiagnosticsSeries diagnostics(const Trajectory& traj, const TheoryConfig& cfg);

/// Ascending-order permutations of theta, omega, a and b at every sample.
struct OrderHistory {
    std::vector<std::vector<std::size_t>> phase, frequency, acceleration, jerk;
};
[[nodiscard]] OrderHistory order_history(const Trajectory& traj);

/// Sample indices k >= 1 where the ordering of theta, omega or a differs from sample k-1.
[[nodiscard]] std::vector<std::size_t> order_change_times(const Trajectory& traj);

/// Earliest sample index after which D_theta < D^inf at every later sample.
[[nodiscard]] std::optional<std::size_t> detect_t_star_index(const DiagnosticsSeries& series,
                                                             const TheoryConfig& cfg);
[[nodiscard]] std::optional<double> detect_t_star(const DiagnosticsSeries& series, const TheoryConfig& cfg);

struct TimeWindow {
    double begin = 0.0;
    double end = 0.0;
};

/// Negated least-squares slope of log(values) against time over the closed window.
/// Throws ArgumentError on non-positive values in the window or fewer than 3 samples.
[[nodiscard]] double fit_decay_rate(std::span<const double> times, std::span<const double> values,
                                    TimeWindow window);

/// Centered second-order difference; one-sided at the ends. Needs >= 2 samples.
[[nodiscard]] std::vector<double> centered_difference(std::span<const double> times,
                                                      std::span<const double> values);

/// Outcome of checking one differential (or pointwise) inequality along a run.
struct InequalityResult {
    std::string name;          ///< e.g. "phase_spread_decay"
    std::string statement;     ///< human-readable form of the inequality
    bool evaluated = false;    ///< false when skipped (see note)
    std::size_t admissible = 0;
    std::size_t satisfied = 0;
    double fraction = 0.0;     ///< satisfied / admissible (1 when nothing is admissible but evaluated)
    double worst_residual = 0.0;  ///< max of LHS - RHS over admissible samples
    double worst_time = 0.0;
    std::vector<double> violation_times;  ///< first violations, capped
    std::string note;
};

struct CertificateReport {
    double tolerance = 0.0;
    std::size_t samples = 0;
    double admissible_fraction = 0.0;  ///< phase-side admissible samples / interior samples
    std::vector<InequalityResult> inequalities;

    std::optional<double> t_star;
    std::optional<double> t_star_bound;  ///< (E1(0) - E1(t_star)) / (D_Omega + 2 N kappa sin alpha)
    bool t_star_bound_holds = false;     ///< t_star <= bound + one sampling interval
    std::optional<double> max_d_theta_after_t_star;
    std::optional<double> fitted_rate;   ///< decay of D_omega over [t_star, t_end]
    double lambda = 0.0;
    double lambda_tilde = 0.0;
    std::vector<std::string> notices;

    [[nodiscard]] const InequalityResult* find(const std::string& name) const;
    /// Every inequality evaluated and satisfied on at least `threshold` of its admissible samples.
    [[nodiscard]] bool passes(double threshold) const;
};

/// Checks every phase-side and frequency-side inequality at each admissible sample.
///
/// A sample is admissible when the relevant orderings (theta, omega, a for the phase
/// side; omega, a, b for the frequency side) agree on the sample and both neighbours.
/// Within such a stretch all derivatives are exact: d/dt of a spread is the spread of
/// the derivative under the frozen permutation. Frequency-side differential
/// inequalities are evaluated only from t_star on; the pointwise frequency bound at
/// every sample. A sample satisfies an inequality when LHS - RHS <= tol * max(1, |RHS|).
///
/// Throws ResolutionError when fewer than 3 samples exist or fewer than 80 % of the
/// interior samples are admissible.
[[nodiscard]] CertificateReport certify_inequalities(const Trajectory& traj, const TheoryConfig& cfg, double tol);

}  // namespace kuramoto
