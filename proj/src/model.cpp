#include "kuramoto/model.hpp"

#include "kuramoto/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace kuramoto {

void ModelParams::validate() const {
    if (!(inertia > 0.0) || !std::isfinite(inertia)) {
        throw ArgumentError("inertia m must be positive and finite");
    }
    if (!(coupling >= 0.0) || !std::isfinite(coupling)) {
        throw ArgumentError("coupling kappa must be non-negative and finite");
    }
    if (!(frustration >= 0.0) || !(frustration < std::numbers::pi / 2)) {
        throw ArgumentError("frustration alpha must lie in [0, pi/2)");
    }
    if (natural_frequencies.size() != graph.size()) {
        throw ArgumentError("expected " + std::to_string(graph.size()) + " natural frequencies, got " +
                            std::to_string(natural_frequencies.size()));
    }
    for (double w : natural_frequencies) {
        if (!std::isfinite(w)) throw ArgumentError("natural frequencies must be finite");
    }
}

double ModelParams::max_natural_frequency() const {
    if (natural_frequencies.empty()) throw ArgumentError("no natural frequencies");
    return *std::max_element(natural_frequencies.begin(), natural_frequencies.end());
}

double ModelParams::min_natural_frequency() const {
    if (natural_frequencies.empty()) throw ArgumentError("no natural frequencies");
    return *std::min_element(natural_frequencies.begin(), natural_frequencies.end());
}

double ModelParams::natural_frequency_diameter() const { return max_natural_frequency() - min_natural_frequency(); }

bool State::is_finite() const noexcept {
    if (!std::isfinite(t)) return false;
    const auto finite = [](double x) { return std::isfinite(x); };
    return std::all_of(theta.begin(), theta.end(), finite) && std::all_of(omega.begin(), omega.end(), finite);
}

void check_dimensions(const ModelParams& p, const State& s) {
    const std::size_t n = p.size();
    if (s.theta.size() != n || s.omega.size() != n || p.natural_frequencies.size() != n) {
        throw ArgumentError("dimension mismatch: graph has " + std::to_string(n) + " vertices, theta " +
                            std::to_string(s.theta.size()) + ", omega " + std::to_string(s.omega.size()) +
                            ", Omega " + std::to_string(p.natural_frequencies.size()));
    }
}

void evaluate_rhs(const ModelParams& p, std::span<const double> theta, std::span<const double> omega,
                  std::span<double> dtheta, std::span<double> domega) {
    const std::size_t n = theta.size();
    const double inv_m = 1.0 / p.inertia;
    for (std::size_t i = 0; i < n; ++i) {
        double coupling_sum = 0.0;
        for (std::size_t j : p.graph.neighbors(i)) {
            coupling_sum += std::sin(theta[j] - theta[i] + p.frustration);
        }
        dtheta[i] = omega[i];
        domega[i] = (-omega[i] + p.natural_frequencies[i] + p.coupling * coupling_sum) * inv_m;
    }
}

StateDerivative rhs(const ModelParams& p, const State& s) {
    check_dimensions(p, s);
    StateDerivative d{std::vector<double>(s.size()), std::vector<double>(s.size())};
    evaluate_rhs(p, s.theta, s.omega, d.dtheta, d.domega);
    return d;
}

std::vector<double> acceleration(const ModelParams& p, const State& s) { return rhs(p, s).domega; }

namespace {

// Shared evaluation; depth 1 = acceleration, 2 = + jerk, 3 = + jerk rate.
HigherDerivatives evaluate_higher(const ModelParams& p, const State& s, int depth) {
    check_dimensions(p, s);
    const std::size_t n = s.size();
    const double m = p.inertia;
    const double k = p.coupling;
    HigherDerivatives out;
    out.acceleration = acceleration(p, s);
    if (depth < 2) return out;

    const auto& a = out.acceleration;
    out.jerk.resize(n);
    if (depth >= 3) out.jerk_rate.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double cos_dw = 0.0;     // sum cos(.)(w_j - w_i)
        double sin_dw2 = 0.0;    // sum sin(.)(w_j - w_i)^2
        double cos_da = 0.0;     // sum cos(.)(a_j - a_i)
        for (std::size_t j : p.graph.neighbors(i)) {
            const double phase = s.theta[j] - s.theta[i] + p.frustration;
            const double dw = s.omega[j] - s.omega[i];
            const double c = std::cos(phase);
            cos_dw += c * dw;
            if (depth >= 3) {
                sin_dw2 += std::sin(phase) * dw * dw;
                cos_da += c * (a[j] - a[i]);
            }
        }
        out.jerk[i] = (k * cos_dw - a[i]) / m;
        if (depth >= 3) out.jerk_rate[i] = (-k * sin_dw2 + k * cos_da - out.jerk[i]) / m;
    }
    return out;
}

}  // namespace

std::vector<double> jerk(const ModelParams& p, const State& s) { return evaluate_higher(p, s, 2).jerk; }

std::vector<double> jerk_rate(const ModelParams& p, const State& s) { return evaluate_higher(p, s, 3).jerk_rate; }

HigherDerivatives higher_derivatives(const ModelParams& p, const State& s) { return evaluate_higher(p, s, 3); }

}  // namespace kuramoto
