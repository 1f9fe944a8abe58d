#pragma once

// Aligned sample averaging, thresholding, data-driven threshold selection,
// and the end-to-end recovery pipeline.

#include <algorithm>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netrecover/alignment.hpp"
#include "netrecover/errors.hpp"
#include "netrecover/graph.hpp"
#include "netrecover/io.hpp"

namespace netrecover {

// Entrywise mean of m aligned binary graphs, stored as integer counts so
// that every entry is exactly count/m. Symmetric with a zero diagonal.
class AverageMatrix {
public:
    AverageMatrix(int n, int samples) : n_(n), samples_(samples) {
        if (n < 1) throw std::invalid_argument("AverageMatrix: node count must be positive");
        if (samples < 1)
            throw std::invalid_argument("AverageMatrix: sample count must be positive");
        counts_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
    }

    int node_count() const { return n_; }
    int sample_count() const { return samples_; }

    int count(int u, int v) const {
        check(u);
        check(v);
        if (u == v) return 0;
        return counts_[pair_index(u, v)];
    }

    double value(int u, int v) const {
        return static_cast<double>(count(u, v)) / static_cast<double>(samples_);
    }

    void set_count(int u, int v, int k) {
        check(u);
        check(v);
        if (u == v) throw std::invalid_argument("AverageMatrix: diagonal entries are fixed at 0");
        if (k < 0 || k > samples_)
            throw std::domain_error("AverageMatrix: count " + std::to_string(k) +
                                    " outside [0," + std::to_string(samples_) + "]");
        counts_[pair_index(u, v)] = k;
    }

    // Adds one graph's adjacency to the counts.
    void accumulate(const Graph& g) {
        if (g.node_count() != n_)
            throw dimension_error("AverageMatrix: graph on " + std::to_string(g.node_count()) +
                                  " nodes, matrix on " + std::to_string(n_));
        g.for_each_edge([this](int u, int v) {
            int& c = counts_[pair_index(u, v)];
            if (c == samples_)
                throw std::logic_error("AverageMatrix: more accumulations than samples");
            ++c;
        });
    }

private:
    void check(int u) const {
        if (u < 0 || u >= n_)
            throw std::out_of_range("AverageMatrix: node " + std::to_string(u) + " outside [0," +
                                    std::to_string(n_) + ")");
    }

    std::size_t pair_index(int u, int v) const {
        if (u > v) std::swap(u, v);
        const std::size_t uu = static_cast<std::size_t>(u);
        return uu * n_ - uu * (uu + 1) / 2 + static_cast<std::size_t>(v - u - 1);
    }

    int n_ = 0;
    int samples_ = 0;
    std::vector<int> counts_;
};

// Mean of the realigned samples: graph i contributes permute(graphs[i],
// alignment.composed[i]).
inline AverageMatrix aligned_average(const std::vector<Graph>& graphs,
                                     const AlignmentResult& alignment) {
    const int m = static_cast<int>(graphs.size());
    if (m < 1) throw std::invalid_argument("aligned_average: no graphs");
    require_same_size(graphs);
    if (static_cast<int>(alignment.composed.size()) != m)
        throw std::invalid_argument("aligned_average: alignment covers " +
                                    std::to_string(alignment.composed.size()) +
                                    " graphs, not " + std::to_string(m));
    AverageMatrix avg(graphs.front().node_count(), m);
    for (int i = 0; i < m; ++i) avg.accumulate(permute(graphs[i], alignment.composed[i]));
    return avg;
}

// Binarize: edge present iff the averaged value strictly exceeds w; an
// entry exactly equal to w maps to no edge.
inline Graph threshold(const AverageMatrix& avg, double w) {
    if (!(w > 0.0 && w < 1.0))
        throw std::domain_error("threshold: w " + std::to_string(w) + " outside (0,1)");
    const int n = avg.node_count();
    const double cut = w * avg.sample_count();
    Graph out(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (static_cast<double>(avg.count(u, v)) > cut) out.set_edge(u, v, true);
    return out;
}

// Histogram the entries over their m+1 possible levels and return the
// midpoint of the widest run of interior levels with minimal count (the
// first such run when tied). Adjacent occupied extremes leave no interior
// level; 0.5 is returned then.
inline double elbow_threshold(const AverageMatrix& avg) {
    const int n = avg.node_count();
    const int m = avg.sample_count();
    if (n < 2) throw degenerate_error("elbow_threshold: no node pairs to histogram");
    std::vector<long> hist(m + 1, 0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) ++hist[avg.count(u, v)];
    int lo = -1;
    int hi = -1;
    for (int level = 0; level <= m; ++level) {
        if (hist[level] == 0) continue;
        if (lo < 0) lo = level;
        hi = level;
    }
    if (lo == hi) throw degenerate_error("elbow_threshold: all entries equal");
    if (hi - lo < 2) return 0.5;

    long min_count = hist[lo + 1];
    for (int level = lo + 1; level < hi; ++level) min_count = std::min(min_count, hist[level]);
    int best_a = -1;
    int best_b = -1;
    for (int a = lo + 1; a < hi;) {
        if (hist[a] != min_count) {
            ++a;
            continue;
        }
        int b = a;
        while (b + 1 < hi && hist[b + 1] == min_count) ++b;
        if (best_a < 0 || b - a > best_b - best_a) {
            best_a = a;
            best_b = b;
        }
        a = b + 1;
    }
    return static_cast<double>(best_a + best_b) / (2.0 * m);
}

inline double frobenius_sq(const AverageMatrix& a, const Graph& b) {
    const int n = a.node_count();
    if (b.node_count() != n)
        throw dimension_error("frobenius_sq: sizes " + std::to_string(n) + " and " +
                              std::to_string(b.node_count()) + " differ");
    if (n < 2) throw std::domain_error("frobenius_sq: need at least 2 nodes");
    double sum = 0.0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const double d = a.value(u, v) - (b.has_edge(u, v) ? 1.0 : 0.0);
            sum += d * d;
        }
    }
    return 2.0 * sum / (static_cast<double>(n) * (n - 1));
}

inline double frobenius_sq(const Graph& a, const AverageMatrix& b) { return frobenius_sq(b, a); }

inline double frobenius_sq(const AverageMatrix& a, const AverageMatrix& b) {
    const int n = a.node_count();
    if (b.node_count() != n)
        throw dimension_error("frobenius_sq: sizes " + std::to_string(n) + " and " +
                              std::to_string(b.node_count()) + " differ");
    if (n < 2) throw std::domain_error("frobenius_sq: need at least 2 nodes");
    double sum = 0.0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const double d = a.value(u, v) - b.value(u, v);
            sum += d * d;
        }
    }
    return 2.0 * sum / (static_cast<double>(n) * (n - 1));
}

inline void write_average_csv(std::ostream& out, const AverageMatrix& avg) {
    out << "u,v,value\n";
    const int n = avg.node_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            out << u << ',' << v << ',' << format_double(avg.value(u, v)) << '\n';
}

// Degree at the given quantile of the sorted degree sequence (by rank,
// rounding down).
inline int degree_quantile(const Graph& g, double quantile) {
    if (!(quantile >= 0.0 && quantile <= 1.0))
        throw std::domain_error("degree_quantile: quantile outside [0,1]");
    std::vector<int> degs = g.degrees();
    if (degs.empty()) throw std::domain_error("degree_quantile: empty graph");
    std::sort(degs.begin(), degs.end());
    const std::size_t idx = static_cast<std::size_t>(quantile * (degs.size() - 1));
    return degs[idx];
}

struct RecoverOptions {
    bool use_cleanup = true;
    bool use_seeds = false;
    int cleanup_iterations = 0;        // 0 selects ceil(log2 n)
    int cleanup_max_draws = 0;         // 0 selects 20 m
    RngSeed cleanup_seed{0};
    std::optional<double> w;           // absent selects elbow_threshold
    double seed_degree_quantile = 0.9; // tau, tau' from this degree quantile
    double seed_distance_cutoff = 0.1; // xi
    int workers = 1;
};

struct RecoverResult {
    Graph estimate;
    AverageMatrix average;
    AlignmentResult alignment;
    double threshold_used = 0.0;
};

// Full pipeline: pairwise matching (optionally seeded), optional cleanup,
// aligned averaging, thresholding.
inline RecoverResult recover(const std::vector<Graph>& graphs,
                             const RecoverOptions& options = {}) {
    const int m = static_cast<int>(graphs.size());
    if (m < 2) throw std::invalid_argument("recover: need at least 2 graphs");
    require_same_size(graphs);

    AlignmentResult alignment;
    if (options.use_seeds) {
        alignment.pairwise.resize(m - 1);
        parallel_for(0, m - 1, options.workers, [&](int i) {
            const CostMatrix z = profile_distance_matrix(graphs[i], graphs[i + 1]);
            const int tau = degree_quantile(graphs[i], options.seed_degree_quantile);
            const int tau2 = degree_quantile(graphs[i + 1], options.seed_degree_quantile);
            const SeedSet seeds =
                extract_seeds(graphs[i], graphs[i + 1], z, tau, tau2,
                              options.seed_distance_cutoff);
            alignment.pairwise[i] = match_with_distance_matrix(z, &seeds);
        });
        alignment.composed = compose_chain(alignment.pairwise, graphs.front().node_count());
    } else {
        alignment = sequential_match(graphs, nullptr, options.workers);
    }
    if (options.use_cleanup)
        alignment = multi_cleanup(graphs, alignment, options.cleanup_iterations,
                                  options.cleanup_max_draws, options.cleanup_seed);

    AverageMatrix average = aligned_average(graphs, alignment);
    const double w = options.w ? *options.w : elbow_threshold(average);
    Graph estimate = threshold(average, w);
    return {std::move(estimate), std::move(average), std::move(alignment), w};
}

} // namespace netrecover
