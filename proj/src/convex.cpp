#include "kuramoto/convex.hpp"

#include "kuramoto/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace kuramoto {

namespace {

void require_c(int c) {
    if (c <= 2) throw ArgumentError("convexity parameter c must exceed 2, got " + std::to_string(c));
}

void require_size(std::size_t got, const ConvexWeights& w) {
    if (got != w.size()) {
        throw ArgumentError("vector of length " + std::to_string(got) + " does not match weights of length " +
                            std::to_string(w.size()));
    }
}

}  // namespace

ConvexWeights::ConvexWeights(int c, std::size_t n) : c_(c) {
    require_c(c);
    if (n == 0) throw ArgumentError("convex weights need n >= 1");
    weights_.resize(n);
    weights_[0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        // 1-based: M_{i+1} = (c + n - 1 - i) M_i
        weights_[i] = static_cast<double>(static_cast<long long>(c) + static_cast<long long>(n) - 1 -
                                          static_cast<long long>(i)) *
                      weights_[i - 1];
    }
    total_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    rank_diff_.resize(n);
    for (std::size_t r = 0; r < n; ++r) rank_diff_[r] = weights_[r] - weights_[n - 1 - r];
}

ConvexWeights make_weights(int c, std::size_t n) { return ConvexWeights(c, n); }

double eta(int c) {
    require_c(c);
    return 1.0 - 4.0 / (static_cast<double>(c) + 2.0);
}

std::vector<std::size_t> ascending_order(std::span<const double> z) {
    std::vector<std::size_t> order(z.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return z[a] < z[b]; });
    return order;
}

double upper_comb(std::span<const double> z, const ConvexWeights& w) {
    require_size(z.size(), w);
    const auto order = ascending_order(z);
    const auto m = w.weights();
    double acc = 0.0;
    for (std::size_t r = 0; r < z.size(); ++r) acc += m[r] * z[order[r]];
    return acc / w.total();
}

double lower_comb(std::span<const double> z, const ConvexWeights& w) {
    require_size(z.size(), w);
    const auto order = ascending_order(z);
    const auto m = w.weights();
    const std::size_t n = z.size();
    double acc = 0.0;
    for (std::size_t r = 0; r < n; ++r) acc += m[r] * z[order[n - 1 - r]];
    return acc / w.total();
}

double spread(std::span<const double> z, const ConvexWeights& w) {
    require_size(z.size(), w);
    const auto order = ascending_order(z);
    return spread_with_order(z, order, w);
}

double spread_with_order(std::span<const double> values, std::span<const std::size_t> order,
                         const ConvexWeights& w) {
    require_size(values.size(), w);
    require_size(order.size(), w);
    // Pair ranks r and n-1-r so each term is a difference of two entries;
    // a common shift of all entries then cancels before any rounding by weights.
    const auto diff = w.rank_differences();
    const std::size_t n = values.size();
    double acc = 0.0;
    for (std::size_t r = n / 2 + n % 2; r < n; ++r) acc += diff[r] * (values[order[r]] - values[order[n - 1 - r]]);
    return acc / w.total();
}

}  // namespace kuramoto
