#include "kuramoto/digraph.hpp"

#include "kuramoto/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace kuramoto {

namespace {

void check_index(std::size_t i, std::size_t n) {
    if (i >= n) {
        throw ArgumentError("vertex index " + std::to_string(i) + " out of range for digraph of size " +
                            std::to_string(n));
    }
}

}  // namespace

Digraph::Digraph(std::size_t n, std::span<const int> row_major) : n_(n) {
    if (n == 0) throw ArgumentError("digraph needs at least one vertex");
    if (row_major.size() != n * n) {
        throw ArgumentError("adjacency has " + std::to_string(row_major.size()) + " entries, expected " +
                            std::to_string(n * n));
    }
    adj_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const int v = row_major[i * n + j];
            if (v != 0 && v != 1) {
                throw ArgumentError("adjacency[" + std::to_string(i) + "][" + std::to_string(j) +
                                    "] = " + std::to_string(v) + " is not 0 or 1");
            }
            if (i == j && v != 0) {
                throw ArgumentError("self loop at vertex " + std::to_string(i));
            }
            adj_[i * n + j] = static_cast<std::uint8_t>(v);
        }
    }
    build_neighbor_lists();
}

Digraph Digraph::empty(std::size_t n) {
    std::vector<int> zeros(n * n, 0);
    return Digraph(n, zeros);
}

Digraph Digraph::directed_cycle(std::size_t n) {
    std::vector<int> a(n * n, 0);
    if (n > 1) {
        for (std::size_t i = 0; i < n; ++i) a[i * n + (i + n - 1) % n] = 1;
    }
    return Digraph(n, a);
}

void Digraph::build_neighbor_lists() {
    in_.assign(n_, {});
    out_.assign(n_, {});
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (adj_[i * n_ + j]) {
                in_[i].push_back(j);
                out_[j].push_back(i);
            }
        }
    }
}

bool Digraph::influences(std::size_t i, std::size_t j) const {
    check_index(i, n_);
    check_index(j, n_);
    return adj_[i * n_ + j] != 0;
}

const std::vector<std::size_t>& Digraph::neighbors(std::size_t i) const {
    check_index(i, n_);
    return in_[i];
}

bool Digraph::is_reachable(std::size_t i, std::size_t j) const {
    check_index(i, n_);
    check_index(j, n_);
    if (i == j) return true;
    std::vector<std::uint8_t> seen(n_, 0);
    std::vector<std::size_t> stack{i};
    seen[i] = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : out_[u]) {
            if (v == j) return true;
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    return false;
}

bool Digraph::is_strongly_connected() const { return strongly_connected_components(*this).size() == 1; }

Digraph Digraph::symmetrized() const {
    std::vector<int> a(n_ * n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            a[i * n_ + j] = (adj_[i * n_ + j] || adj_[j * n_ + i]) ? 1 : 0;
        }
    }
    return Digraph(n_, a);
}

std::vector<int> Digraph::adjacency() const { return {adj_.begin(), adj_.end()}; }

std::size_t Digraph::edge_count() const noexcept {
    return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), std::uint8_t{1}));
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const Digraph& g) {
    const std::size_t n = g.size();
    constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();

    // Edges follow the direction of influence: u -> v when u is in N_v.
    std::vector<std::vector<std::size_t>> succ(n);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u : g.neighbors(v)) succ[u].push_back(v);
    }

    std::vector<std::size_t> index(n, unvisited), lowlink(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    struct Frame {
        std::size_t vertex;
        std::size_t next_edge;
    };
    std::vector<Frame> call;

    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = lowlink[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;

        while (!call.empty()) {
            Frame& f = call.back();
            const std::size_t u = f.vertex;
            if (f.next_edge < succ[u].size()) {
                const std::size_t v = succ[u][f.next_edge++];
                if (index[v] == unvisited) {
                    index[v] = lowlink[v] = counter++;
                    stack.push_back(v);
                    on_stack[v] = 1;
                    call.push_back({v, 0});
                } else if (on_stack[v]) {
                    lowlink[u] = std::min(lowlink[u], index[v]);
                }
                continue;
            }
            if (lowlink[u] == index[u]) {
                std::vector<std::size_t> comp;
                std::size_t w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != u);
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
            call.pop_back();
            if (!call.empty()) {
                const std::size_t parent = call.back().vertex;
                lowlink[parent] = std::min(lowlink[parent], lowlink[u]);
            }
        }
    }
    return components;
}

}  // namespace kuramoto
