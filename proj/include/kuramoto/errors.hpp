#pragma once

#include <stdexcept>
#include <string>

namespace kuramoto {

/// Invalid input: bad dimensions, out-of-range indices, violated type invariants.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A requested parameter choice cannot be satisfied (e.g. no admissible c).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Step budget of the integrator exhausted before reaching t_end.
class StepBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Trajectory too coarse (or too short) for derivative-based certification.
class ResolutionError : public std::runtime_error {
public:
    ResolutionError(const std::string& what, double suggested_dt)
        : std::runtime_error(what), suggested_dt_(suggested_dt) {}

    /// Sampling interval that would likely resolve the order changes (0 if unknown).
    [[nodiscard]] double suggested_dt() const noexcept { return suggested_dt_; }

private:
    double suggested_dt_;
};

}  // namespace kuramoto
