#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace kuramoto {

/// Interaction network of the oscillator ensemble.
///
/// Dense 0/1 adjacency with the convention adjacency(i, j) == 1 iff vertex j
/// directly influences vertex i. The neighbor set of i is therefore row i.
/// Vertices are 0-based. Immutable after construction.
class Digraph {
public:
    /// Builds from a row-major n*n list of 0/1 entries.
    /// Throws ArgumentError on wrong length, entries outside {0,1}, or self loops.
    Digraph(std::size_t n, std::span<const int> row_major);

    /// Graph on n vertices without edges.
    static Digraph empty(std::size_t n);

    /// Directed cycle 0 -> 1 -> ... -> n-1 -> 0 (vertex i is influenced by i-1).
    static Digraph directed_cycle(std::size_t n);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }

    /// chi_ij: true when j directly influences i. Throws on bad indices.
    [[nodiscard]] bool influences(std::size_t i, std::size_t j) const;

    /// N_i = { j : chi_ij = 1 }, ascending.
    [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t i) const;

    /// True iff a directed path i -> ... -> j exists, i.e. influence flows from i to j.
    /// Every vertex reaches itself via the empty path.
    [[nodiscard]] bool is_reachable(std::size_t i, std::size_t j) const;

    [[nodiscard]] bool is_strongly_connected() const;

    /// Union with the reversed edge set.
    [[nodiscard]] Digraph symmetrized() const;

    /// Row-major adjacency entries as 0/1 ints.
    [[nodiscard]] std::vector<int> adjacency() const;

    [[nodiscard]] std::size_t edge_count() const noexcept;

    friend bool operator==(const Digraph& a, const Digraph& b) { return a.n_ == b.n_ && a.adj_ == b.adj_; }

private:
    Digraph() = default;
    void build_neighbor_lists();

    std::size_t n_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<std::vector<std::size_t>> in_;   // in_[i] = N_i
    std::vector<std::vector<std::size_t>> out_;  // out_[j] = { i : j in N_i }
};

/// Strongly connected components (iterative Tarjan, O(n + |E|)).
/// Components are listed in reverse topological order of the condensation.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Digraph& g);

}  // namespace kuramoto
