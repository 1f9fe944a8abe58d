#pragma once

// Multi-network orchestration: sequential pairwise matching, composition of
// the pairwise permutations onto the first graph as common reference, the
// randomized multi-graph cleanup, and the recovery-regime checker.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "netrecover/graph.hpp"
#include "netrecover/matching.hpp"
#include "netrecover/parallel.hpp"
#include "netrecover/sampling.hpp"

namespace netrecover {

struct AlignmentResult {
    // pairwise[i] matches graphs[i] to graphs[i+1], for i in [0, m-1).
    std::vector<Permutation> pairwise;
    // composed[i] realigns graphs[i] to graphs[0]: permute(graphs[i], composed[i])
    // is the aligned sample. composed[0] is the identity.
    std::vector<Permutation> composed;
};

inline void require_same_size(const std::vector<Graph>& graphs) {
    const int n = graphs.front().node_count();
    for (const Graph& g : graphs)
        if (g.node_count() != n)
            throw dimension_error("graphs have mixed node counts: " + std::to_string(n) +
                                  " vs " + std::to_string(g.node_count()));
}

// Chain the consecutive-pair permutations into realignments onto graph 0:
// composed[0] = identity, composed[i] = compose(pairwise[i-1], composed[i-1]).
inline std::vector<Permutation> compose_chain(const std::vector<Permutation>& pairwise, int n) {
    std::vector<Permutation> composed;
    composed.reserve(pairwise.size() + 1);
    composed.push_back(Permutation::identity(n));
    for (std::size_t i = 0; i < pairwise.size(); ++i)
        composed.push_back(compose(pairwise[i], composed[i]));
    return composed;
}

inline AlignmentResult sequential_match(const std::vector<Graph>& graphs,
                                        const std::vector<SeedSet>* seeds = nullptr,
                                        int workers = 1) {
    const int m = static_cast<int>(graphs.size());
    if (m < 2) throw std::invalid_argument("sequential_match: need at least 2 graphs");
    require_same_size(graphs);
    if (seeds && static_cast<int>(seeds->size()) != m - 1)
        throw std::invalid_argument("sequential_match: expected " + std::to_string(m - 1) +
                                    " seed sets, got " + std::to_string(seeds->size()));

    AlignmentResult out;
    out.pairwise.resize(m - 1);
    parallel_for(0, m - 1, workers, [&](int i) {
        const SeedSet* s = seeds ? &(*seeds)[i] : nullptr;
        out.pairwise[i] = match_degree_profiles(graphs[i], graphs[i + 1], s);
    });
    out.composed = compose_chain(out.pairwise, graphs.front().node_count());
    return out;
}

namespace detail {

// Lexicographic unranking of pairs (i, j) with 0 <= i < j < m.
inline std::pair<int, int> unrank_pair(std::uint64_t rank, int m) {
    for (int i = 0; i < m - 1; ++i) {
        const std::uint64_t row = static_cast<std::uint64_t>(m - 1 - i);
        if (rank < row) return {i, i + 1 + static_cast<int>(rank)};
        rank -= row;
    }
    throw std::out_of_range("unrank_pair: rank too large");
}

} // namespace detail

// Randomized refinement of the composed alignment: repeatedly draw a pair
// i < j and re-run the cleanup iteration for composed[j] against the
// currently aligned copy of graphs[i]. Stops after a full window of
// m(m-1)/2 consecutive draws without change, or after max_draws draws.
// T = 0 and max_draws = 0 select the defaults (ceil(log2 n) and 20m).
inline AlignmentResult multi_cleanup(const std::vector<Graph>& graphs,
                                     const AlignmentResult& initial, int T = 0,
                                     int max_draws = 0, RngSeed seed = RngSeed{0}) {
    const int m = static_cast<int>(graphs.size());
    if (m < 2) throw std::invalid_argument("multi_cleanup: need at least 2 graphs");
    require_same_size(graphs);
    if (static_cast<int>(initial.composed.size()) != m)
        throw std::invalid_argument("multi_cleanup: alignment covers " +
                                    std::to_string(initial.composed.size()) + " graphs, not " +
                                    std::to_string(m));
    const int n = graphs.front().node_count();
    for (const Permutation& pi : initial.composed)
        if (pi.size() != n) throw dimension_error("multi_cleanup: permutation size mismatch");
    if (T < 0) throw std::invalid_argument("multi_cleanup: negative iteration count");
    if (max_draws < 0) throw std::invalid_argument("multi_cleanup: negative draw budget");

    const int iterations = T > 0 ? T : default_cleanup_iterations(n);
    const int draw_cap = max_draws > 0 ? max_draws : 20 * m;
    const std::uint64_t pair_count = static_cast<std::uint64_t>(m) * (m - 1) / 2;
    const std::uint64_t window = pair_count;

    AlignmentResult cur = initial;
    Rng rng(seed);
    std::uint64_t unchanged = 0;
    for (int draw = 0; draw < draw_cap && unchanged < window; ++draw) {
        const auto [i, j] = detail::unrank_pair(rng.below(pair_count), m);
        const Graph anchor = permute(graphs[i], cur.composed[i]);
        Permutation refined = cleanup_pair(anchor, graphs[j], cur.composed[j], iterations);
        if (refined == cur.composed[j]) {
            ++unchanged;
        } else {
            cur.composed[j] = std::move(refined);
            unchanged = 0;
        }
    }
    return cur;
}

struct RegimeConstants {
    double sigma0 = 0.1;
    double L0 = 1.0;
    double C0 = 1.0;
};

struct RegimeReport {
    double sigma = 0.0;       // sqrt(1 - s)
    double profile_bins = 0.0; // L0 * log n
    bool sigma_ok = false;    // sigma <= sigma0 / log n
    bool q_ok = false;        // q <= 1/12
    bool density_ok = false;  // n q >= C0 log^2 n
    RegimeConstants constants;

    bool all_ok() const { return sigma_ok && q_ok && density_ok; }
};

inline RegimeReport check_regime(int n, CorrParams cp, RegimeConstants constants = {}) {
    validate(cp);
    if (n < 1) throw std::domain_error("check_regime: node count must be positive");
    if (!(constants.sigma0 > 0.0) || !(constants.L0 > 0.0) || !(constants.C0 > 0.0))
        throw std::domain_error("check_regime: constants must be positive");
    const double logn = std::log(static_cast<double>(n));
    RegimeReport report;
    report.constants = constants;
    report.sigma = std::sqrt(1.0 - cp.s);
    report.profile_bins = constants.L0 * logn;
    report.sigma_ok = logn > 0.0 ? report.sigma <= constants.sigma0 / logn : true;
    report.q_ok = cp.q <= 1.0 / 12.0;
    report.density_ok = static_cast<double>(n) * cp.q >= constants.C0 * logn * logn;
    return report;
}

} // namespace netrecover
