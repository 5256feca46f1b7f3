#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kuramoto {

/// Order-dependent convex weights M_1 < M_2 < ... < M_n with
/// M_1 = 1 and M_{i+1} = (c + n - 1 - i) M_i, so M_n = c (c+1) ... (c+n-2).
class ConvexWeights {
public:
    /// Throws ArgumentError for c <= 2 or n == 0.
    ConvexWeights(int c, std::size_t n);

    [[nodiscard]] int c() const noexcept { return c_; }
    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] double total() const noexcept { return total_; }
    /// M_N, the largest weight.
    [[nodiscard]] double largest() const noexcept { return weights_.back(); }

    /// Per-rank weight difference M_i - M_{n+1-i} (integer valued).
    [[nodiscard]] std::span<const double> rank_differences() const noexcept { return rank_diff_; }

private:
    int c_;
    std::vector<double> weights_;
    std::vector<double> rank_diff_;
    double total_;
};

[[nodiscard]] ConvexWeights make_weights(int c, std::size_t n);

/// eta = 1 - 4/(c+2); the lower sandwich constant eta*D <= spread <= D.
[[nodiscard]] double eta(int c);

/// Stable ascending permutation: order[r] is the index of the r-th smallest entry,
/// ties broken by original index.
[[nodiscard]] std::vector<std::size_t> ascending_order(std::span<const double> z);

/// Weighted average putting weight M_r on the r-th smallest entry (approximates max z).
[[nodiscard]] double upper_comb(std::span<const double> z, const ConvexWeights& w);

/// Mirror of upper_comb: largest weight on the minimum (approximates min z).
[[nodiscard]] double lower_comb(std::span<const double> z, const ConvexWeights& w);

/// upper_comb - lower_comb. Instantiated on phases, frequencies, accelerations
/// and jerks this gives the functionals Q, P, A and B.
[[nodiscard]] double spread(std::span<const double> z, const ConvexWeights& w);

/// Spread of `values` with ranks taken from a frozen permutation instead of from
/// sorting `values`. While an ordering of z is constant in time, d/dt spread(z)
/// equals spread_with_order(z', order(z), w).
[[nodiscard]] double spread_with_order(std::span<const double> values, std::span<const std::size_t> order,
                                       const ConvexWeights& w);

}  // namespace kuramoto
