#pragma once

// Undirected simple graphs on labeled nodes and permutations of those
// labels. Adjacency is a packed bitset over the strict upper triangle,
// which keeps graphs on a few thousand nodes small and makes equality,
// edge counts and Frobenius distances cheap word operations.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "netrecover/errors.hpp"

namespace netrecover {

class Permutation {
public:
    Permutation() = default;

    // Validates that images is a bijection on [0, n).
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        const int n = static_cast<int>(images_.size());
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (int v : images_) {
            if (v < 0 || v >= n)
                throw std::invalid_argument("Permutation: image " + std::to_string(v) +
                                            " out of range [0," + std::to_string(n) + ")");
            if (seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("Permutation: image " + std::to_string(v) +
                                            " repeated");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(static_cast<std::size_t>(n));
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    int size() const { return static_cast<int>(images_.size()); }

    int operator()(int u) const { return images_.at(static_cast<std::size_t>(u)); }

    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const {
        std::vector<int> inv(images_.size());
        for (int u = 0; u < size(); ++u)
            inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(u)])] = u;
        return Permutation(std::move(inv));
    }

    bool is_identity() const {
        for (int u = 0; u < size(); ++u)
            if (images_[static_cast<std::size_t>(u)] != u) return false;
        return true;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

// result(u) = outer(inner(u)). Chosen so that
// permute(permute(g, p1), p2) == permute(g, compose(p1, p2)).
inline Permutation compose(const Permutation& outer, const Permutation& inner) {
    if (outer.size() != inner.size())
        throw dimension_error("compose: length mismatch " + std::to_string(outer.size()) +
                              " vs " + std::to_string(inner.size()));
    std::vector<int> im(static_cast<std::size_t>(inner.size()));
    for (int u = 0; u < inner.size(); ++u)
        im[static_cast<std::size_t>(u)] = outer(inner(u));
    return Permutation(std::move(im));
}

class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("Graph: negative node count");
        words_.assign((pair_count() + 63) / 64, 0);
    }

    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.set_edge(u, v, true);
        return g;
    }

    int node_count() const { return n_; }

    bool has_edge(int u, int v) const {
        check_node(u);
        check_node(v);
        if (u == v) return false;
        const std::size_t i = pair_index(std::min(u, v), std::max(u, v));
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set_edge(int u, int v, bool present) {
        check_node(u);
        check_node(v);
        if (u == v) throw std::invalid_argument("Graph: self-loop at node " + std::to_string(u));
        const std::size_t i = pair_index(std::min(u, v), std::max(u, v));
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (present)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void add_edge(int u, int v) { set_edge(u, v, true); }

    std::size_t edge_count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    int degree(int u) const {
        check_node(u);
        int d = 0;
        for (int v = 0; v < n_; ++v)
            if (v != u && has_edge_unchecked(u, v)) ++d;
        return d;
    }

    // Degrees of all nodes in one pass over the edge bits.
    std::vector<int> degrees() const {
        std::vector<int> deg(static_cast<std::size_t>(n_), 0);
        for_each_edge([&deg](int u, int v) {
            ++deg[static_cast<std::size_t>(u)];
            ++deg[static_cast<std::size_t>(v)];
        });
        return deg;
    }

    std::vector<int> neighbors(int u) const {
        check_node(u);
        std::vector<int> out;
        for (int v = 0; v < n_; ++v)
            if (v != u && has_edge_unchecked(u, v)) out.push_back(v);
        return out;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(edge_count());
        for_each_edge([&out](int u, int v) { out.emplace_back(u, v); });
        return out;
    }

    template <typename Fn>
    void for_each_edge(Fn&& fn) const {
        for (int u = 0; u < n_; ++u) {
            for (int v = u + 1; v < n_; ++v)
                if (has_edge_unchecked(u, v)) fn(u, v);
        }
    }

    friend bool operator==(const Graph&, const Graph&) = default;

    // Number of unordered node pairs that carry different adjacency values.
    friend std::size_t differing_pairs(const Graph& a, const Graph& b) {
        if (a.n_ != b.n_)
            throw dimension_error("differing_pairs: node counts " + std::to_string(a.n_) +
                                  " vs " + std::to_string(b.n_));
        std::size_t d = 0;
        for (std::size_t i = 0; i < a.words_.size(); ++i)
            d += static_cast<std::size_t>(std::popcount(a.words_[i] ^ b.words_[i]));
        return d;
    }

private:
    std::size_t pair_count() const {
        return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_ - (n_ > 0)) / 2;
    }

    // u < v required.
    std::size_t pair_index(int u, int v) const {
        const std::size_t su = static_cast<std::size_t>(u);
        return su * static_cast<std::size_t>(n_) - su * (su + 1) / 2 +
               static_cast<std::size_t>(v - u - 1);
    }

    bool has_edge_unchecked(int u, int v) const {
        const std::size_t i = pair_index(std::min(u, v), std::max(u, v));
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void check_node(int u) const {
        if (u < 0 || u >= n_)
            throw std::out_of_range("Graph: node " + std::to_string(u) + " out of range [0," +
                                    std::to_string(n_) + ")");
    }

    int n_ = 0;
    std::vector<std::uint64_t> words_;
};

// Relabeling read at permuted indices: result(u,v) = g(pi(u), pi(v)).
inline Graph permute(const Graph& g, const Permutation& pi) {
    if (pi.size() != g.node_count())
        throw dimension_error("permute: permutation length " + std::to_string(pi.size()) +
                              " vs graph order " + std::to_string(g.node_count()));
    const int n = g.node_count();
    Graph out(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (g.has_edge(pi(u), pi(v))) out.set_edge(u, v, true);
    return out;
}

// Normalized squared adjacency distance over ordered pairs:
// (1/(n(n-1))) * sum_{u != v} (a_uv - b_uv)^2.
inline double frobenius_sq(const Graph& a, const Graph& b) {
    if (a.node_count() != b.node_count())
        throw dimension_error("frobenius_sq: node counts " + std::to_string(a.node_count()) +
                              " vs " + std::to_string(b.node_count()));
    const int n = a.node_count();
    if (n < 2) throw std::domain_error("frobenius_sq: need at least 2 nodes");
    const double d = static_cast<double>(differing_pairs(a, b));
    return 2.0 * d / (static_cast<double>(n) * (n - 1));
}

} // namespace netrecover
