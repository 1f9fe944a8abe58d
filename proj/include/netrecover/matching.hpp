#pragma once

// Pairwise graph matching via degree profiles, seed extraction and
// expansion, and the common-neighbor cleanup iteration.
//
// Direction convention for every matcher here: the returned permutation
// maps g1 indices to g2 indices, so permute(g2, result) realigns g2 to g1.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "netrecover/assignment.hpp"
#include "netrecover/errors.hpp"
#include "netrecover/graph.hpp"

namespace netrecover {

struct DegreeProfile {
    std::vector<std::pair<int, int>> bins; // (neighbor degree, count), ascending by degree
    int total = 0;                         // equals the node's own degree

    friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

inline DegreeProfile profile_from_degrees(std::vector<int> neighbor_degrees) {
    std::sort(neighbor_degrees.begin(), neighbor_degrees.end());
    DegreeProfile prof;
    prof.total = static_cast<int>(neighbor_degrees.size());
    for (std::size_t i = 0; i < neighbor_degrees.size();) {
        std::size_t j = i;
        while (j < neighbor_degrees.size() && neighbor_degrees[j] == neighbor_degrees[i]) ++j;
        prof.bins.emplace_back(neighbor_degrees[i], static_cast<int>(j - i));
        i = j;
    }
    return prof;
}

inline DegreeProfile degree_profile(const Graph& g, int u) {
    const std::vector<int> degs = g.degrees();
    std::vector<int> nd;
    for (int v : g.neighbors(u)) nd.push_back(degs[v]);
    return profile_from_degrees(std::move(nd));
}

inline std::vector<DegreeProfile> all_degree_profiles(const Graph& g) {
    const int n = g.node_count();
    const std::vector<int> degs = g.degrees();
    std::vector<DegreeProfile> out;
    out.reserve(n);
    for (int u = 0; u < n; ++u) {
        std::vector<int> nd;
        nd.reserve(degs[u]);
        for (int v : g.neighbors(u)) nd.push_back(degs[v]);
        out.push_back(profile_from_degrees(std::move(nd)));
    }
    return out;
}

// Total variation distance between the normalized profiles. Two isolated
// nodes are indistinguishable (distance 0); an isolated node is maximally
// far (distance 1) from any connected one.
inline double tv_distance(const DegreeProfile& p, const DegreeProfile& q) {
    if (p.total == 0 && q.total == 0) return 0.0;
    if (p.total == 0 || q.total == 0) return 1.0;
    const double pt = p.total;
    const double qt = q.total;
    double sum = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < p.bins.size() || j < q.bins.size()) {
        if (j == q.bins.size() || (i < p.bins.size() && p.bins[i].first < q.bins[j].first)) {
            sum += p.bins[i].second / pt;
            ++i;
        } else if (i == p.bins.size() || q.bins[j].first < p.bins[i].first) {
            sum += q.bins[j].second / qt;
            ++j;
        } else {
            sum += std::abs(p.bins[i].second / pt - q.bins[j].second / qt);
            ++i;
            ++j;
        }
    }
    return std::min(1.0, 0.5 * sum);
}

inline CostMatrix profile_distance_matrix(const Graph& g1, const Graph& g2) {
    const int n = g1.node_count();
    if (g2.node_count() != n)
        throw dimension_error("profile_distance_matrix: node counts " + std::to_string(n) +
                              " and " + std::to_string(g2.node_count()) + " differ");
    const std::vector<DegreeProfile> p1 = all_degree_profiles(g1);
    const std::vector<DegreeProfile> p2 = all_degree_profiles(g2);
    CostMatrix z(n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) z.at(u, v) = tv_distance(p1[u], p2[v]);
    return z;
}

// Conflict-free set of matched node pairs: no node appears twice on either
// side. Insertion keeps whatever is already present.
class SeedSet {
public:
    SeedSet() = default;

    explicit SeedSet(const std::vector<std::pair<int, int>>& pairs) {
        for (const auto& [u, v] : pairs)
            if (!try_insert(u, v))
                throw constraint_error("SeedSet: pair (" + std::to_string(u) + "," +
                                       std::to_string(v) + ") conflicts with an earlier pair");
    }

    bool try_insert(int u, int v) {
        if (u < 0 || v < 0)
            throw std::invalid_argument("SeedSet: negative node index");
        if (forward_.count(u) || backward_.count(v)) return false;
        forward_.emplace(u, v);
        backward_.emplace(v, u);
        return true;
    }

    bool contains(int u, int v) const {
        auto it = forward_.find(u);
        return it != forward_.end() && it->second == v;
    }

    std::optional<int> image_of(int u) const {
        auto it = forward_.find(u);
        if (it == forward_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<int> preimage_of(int v) const {
        auto it = backward_.find(v);
        if (it == backward_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t size() const { return forward_.size(); }
    bool empty() const { return forward_.empty(); }

    // Ascending by left node.
    std::vector<std::pair<int, int>> pairs() const {
        return {forward_.begin(), forward_.end()};
    }

    // Ascending by right node.
    std::vector<std::pair<int, int>> transposed_pairs() const {
        return {backward_.begin(), backward_.end()};
    }

    friend bool operator==(const SeedSet& a, const SeedSet& b) {
        return a.forward_ == b.forward_;
    }

private:
    std::map<int, int> forward_;
    std::map<int, int> backward_;
};

// High-degree pairs with close profiles: deg_g1(u) >= tau, deg_g2(v) >= tau2,
// Z[u][v] <= xi, reduced to a conflict-free set by keeping smallest Z first
// (ties by lowest indices).
inline SeedSet extract_seeds(const Graph& g1, const Graph& g2, const CostMatrix& z, int tau,
                             int tau2, double xi) {
    const int n = g1.node_count();
    if (g2.node_count() != n || z.size() != n)
        throw dimension_error("extract_seeds: mismatched graph/matrix dimensions");
    const std::vector<int> d1 = g1.degrees();
    const std::vector<int> d2 = g2.degrees();
    struct Candidate {
        double dist;
        int u;
        int v;
    };
    std::vector<Candidate> candidates;
    for (int u = 0; u < n; ++u) {
        if (d1[u] < tau) continue;
        for (int v = 0; v < n; ++v) {
            if (d2[v] < tau2 || z.at(u, v) > xi) continue;
            candidates.push_back({z.at(u, v), u, v});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.dist, a.u, a.v) < std::tie(b.dist, b.u, b.v);
    });
    SeedSet seeds;
    for (const Candidate& c : candidates) seeds.try_insert(c.u, c.v);
    return seeds;
}

// Two-stage matcher on a precomputed distance matrix. Stage 1 sorts entries
// by (value, row, column) and returns the smallest n when they form a
// permutation and the value boundary between ranks n-1 and n is strict.
// Otherwise stage 2 solves the assignment problem, honoring seeds as pinned
// variables.
inline Permutation match_with_distance_matrix(const CostMatrix& z,
                                              const SeedSet* seeds = nullptr) {
    const int n = z.size();
    if (n == 0) throw std::invalid_argument("match_with_distance_matrix: empty matrix");

    struct Entry {
        double value;
        int row;
        int col;
    };
    std::vector<Entry> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) entries.push_back({z.at(u, v), u, v});
    const auto cmp = [](const Entry& a, const Entry& b) {
        return std::tie(a.value, a.row, a.col) < std::tie(b.value, b.row, b.col);
    };
    const std::size_t keep = std::min(entries.size(), static_cast<std::size_t>(n) + 1);
    std::partial_sort(entries.begin(), entries.begin() + keep, entries.end(), cmp);

    const bool strict_boundary =
        entries.size() <= static_cast<std::size_t>(n) ||
        entries[n - 1].value != entries[static_cast<std::size_t>(n)].value;
    if (strict_boundary) {
        std::vector<int> images(n, -1);
        std::vector<char> col_used(n, 0);
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
            const Entry& e = entries[k];
            if (images[e.row] != -1 || col_used[e.col]) ok = false;
            else {
                images[e.row] = e.col;
                col_used[e.col] = 1;
            }
        }
        if (ok) return Permutation(std::move(images));
    }

    if (seeds && !seeds->empty()) {
        std::vector<std::pair<int, int>> pins = seeds->pairs();
        for (const auto& [u, v] : pins)
            if (u >= n || v >= n)
                throw constraint_error("match: seed (" + std::to_string(u) + "," +
                                       std::to_string(v) + ") outside matrix of size " +
                                       std::to_string(n));
        return solve_constrained(z, pins).assignment;
    }
    return solve_min(z).assignment;
}

inline Permutation match_degree_profiles(const Graph& g1, const Graph& g2,
                                         const SeedSet* seeds = nullptr) {
    return match_with_distance_matrix(profile_distance_matrix(g1, g2), seeds);
}

// Seed sets for every ordered-by-index pair (i, j), i < j, over m graphs.
class PairwiseSeeds {
public:
    explicit PairwiseSeeds(int m) : m_(m) {
        if (m < 2) throw std::invalid_argument("PairwiseSeeds: need at least 2 graphs");
        sets_.resize(static_cast<std::size_t>(m) * (m - 1) / 2);
    }

    int graph_count() const { return m_; }

    SeedSet& at(int i, int j) { return sets_[rank(i, j)]; }
    const SeedSet& at(int i, int j) const { return sets_[rank(i, j)]; }

private:
    std::size_t rank(int i, int j) const {
        if (i < 0 || i >= j || j >= m_)
            throw std::out_of_range("PairwiseSeeds: bad pair (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
        const std::size_t base = static_cast<std::size_t>(i) * m_ - static_cast<std::size_t>(i) * (i + 1) / 2;
        return base + static_cast<std::size_t>(j - i - 1);
    }

    int m_;
    std::vector<SeedSet> sets_;
};

// Closure of the consecutive-pair seed sets under composition through any
// intermediate graph (transposing when a pair is traversed backwards),
// iterated to a fixed point. Pairs already present always win; new
// candidates are inserted in ascending index order.
inline PairwiseSeeds expand_seeds(const std::vector<SeedSet>& consecutive) {
    if (consecutive.empty())
        throw std::invalid_argument("expand_seeds: no consecutive seed sets given");
    const int m = static_cast<int>(consecutive.size()) + 1;
    PairwiseSeeds all(m);
    for (int i = 0; i + 1 < m; ++i) all.at(i, i + 1) = consecutive[i];

    const auto lookup = [&all](int a, int b, int w) -> std::optional<int> {
        return a < b ? all.at(a, b).image_of(w) : all.at(b, a).preimage_of(w);
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                for (int k = 0; k < m; ++k) {
                    if (k == i || k == j) continue;
                    const std::vector<std::pair<int, int>> left =
                        i < k ? all.at(i, k).pairs() : all.at(k, i).transposed_pairs();
                    for (const auto& [u, w] : left) {
                        const std::optional<int> v = lookup(k, j, w);
                        if (v && all.at(i, j).try_insert(u, *v)) changed = true;
                    }
                }
            }
        }
    }
    return all;
}

inline int default_cleanup_iterations(int n) {
    int t = 0;
    while ((1 << t) < n) ++t;
    return std::max(1, t);
}

// Score matrix of the cleanup iteration: M[u][v] counts nodes w adjacent to
// u in g1 whose image pi(w) is adjacent to v in g2. Built sparsely from
// neighbor lists.
inline CostMatrix cleanup_score_matrix(const Graph& g1, const Graph& g2, const Permutation& pi) {
    const int n = g1.node_count();
    if (g2.node_count() != n || pi.size() != n)
        throw dimension_error("cleanup_score_matrix: mismatched dimensions");
    CostMatrix m(n, 0.0);
    for (int w = 0; w < n; ++w) {
        const std::vector<int> left = g1.neighbors(w);
        if (left.empty()) continue;
        const std::vector<int> right = g2.neighbors(pi(w));
        for (int u : left)
            for (int v : right) m.at(u, v) += 1.0;
    }
    return m;
}

// Iterated assignment on the common-neighbor score, starting from pi0, for
// at most T rounds with early exit at a fixed point.
inline Permutation cleanup_pair(const Graph& g1, const Graph& g2, const Permutation& pi0,
                                int T) {
    if (T < 1) throw std::invalid_argument("cleanup_pair: iteration count must be positive");
    const int n = g1.node_count();
    if (g2.node_count() != n || pi0.size() != n)
        throw dimension_error("cleanup_pair: mismatched dimensions");
    Permutation pi = pi0;
    for (int t = 0; t < T; ++t) {
        Permutation next = solve_max(cleanup_score_matrix(g1, g2, pi)).assignment;
        const bool fixed = next == pi;
        pi = std::move(next);
        if (fixed) break;
    }
    return pi;
}

} // namespace netrecover
