#pragma once

// Random generation for the edge-noise observation model and the
// correlated Erdos-Renyi pair model, plus the parameter mappings that
// connect the two.
//
// All randomness flows through Rng, a thin wrapper over std::mt19937_64
// that produces uniform variates with fixed bit-level recipes, so a seed
// determines every sample exactly, on any platform. Derived streams use
// derive_stream(base, salt) = splitmix64(base ^ splitmix64(salt)).

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>

#include "netrecover/graph.hpp"

namespace netrecover {

struct RngSeed {
    std::uint64_t value = 0;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Fixed stream-splitting rule: one base seed plus an integer salt names an
// independent stream.
inline RngSeed derive_stream(RngSeed base, std::uint64_t salt) {
    return RngSeed{splitmix64(base.value ^ splitmix64(salt))};
}

class Rng {
public:
    explicit Rng(RngSeed seed) : gen_(seed.value) {}

    // Uniform on [0,1) with 53 random bits; avoids std::uniform_real_distribution,
    // whose output sequence is not pinned down by the standard.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

    // Unbiased integer in [0, bound) via rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = gen_();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::mt19937_64 gen_;
};

inline Permutation random_permutation(int n, Rng& rng) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(im[static_cast<std::size_t>(i)], im[static_cast<std::size_t>(j)]);
    }
    return Permutation(std::move(im));
}

struct NoiseParams {
    double alpha = 0.0; // spurious-edge rate on non-edges
    double beta = 0.0;  // drop rate on true edges
};

inline void validate(const NoiseParams& np) {
    if (!(np.alpha >= 0.0 && np.alpha <= 1.0))
        throw std::domain_error("NoiseParams: alpha " + std::to_string(np.alpha) +
                                " outside [0,1]");
    if (!(np.beta >= 0.0 && np.beta <= 1.0))
        throw std::domain_error("NoiseParams: beta " + std::to_string(np.beta) +
                                " outside [0,1]");
}

struct CorrParams {
    double q = 0.0; // marginal edge probability
    double s = 0.0; // edge retention probability
};

inline void validate(const CorrParams& cp) {
    if (!(cp.q >= 0.0 && cp.q <= 1.0))
        throw std::domain_error("CorrParams: q " + std::to_string(cp.q) + " outside [0,1]");
    if (!(cp.s >= 0.0 && cp.s <= 1.0))
        throw std::domain_error("CorrParams: s " + std::to_string(cp.s) + " outside [0,1]");
    if (cp.q < 1.0 && cp.q * (1.0 - cp.s) / (1.0 - cp.q) > 1.0)
        throw std::domain_error("CorrParams: q(1-s)/(1-q) = " +
                                std::to_string(cp.q * (1.0 - cp.s) / (1.0 - cp.q)) +
                                " exceeds 1");
}

// Pairs are visited in lexicographic order u < v, one uniform draw per pair,
// so a seed fully determines the graph.
inline Graph sample_er(int n, double p, RngSeed seed) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("sample_er: p " + std::to_string(p) + " outside [0,1]");
    Rng rng(seed);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.set_edge(u, v, true);
    return g;
}

// Independent per-pair corruption of the parent: a true edge survives with
// probability 1-beta, a non-edge turns on with probability alpha.
inline Graph sample_noisy(const Graph& parent, NoiseParams noise, RngSeed seed) {
    validate(noise);
    Rng rng(seed);
    const int n = parent.node_count();
    Graph g(n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const bool on = parent.has_edge(u, v) ? rng.bernoulli(1.0 - noise.beta)
                                                  : rng.bernoulli(noise.alpha);
            if (on) g.set_edge(u, v, true);
        }
    }
    return g;
}

// Marginal/conditional parameters of a pair of noisy observations of an
// ER(n, p) parent:
//   q = p(1-beta) + (1-p)alpha
//   s = (p(1-beta)^2 + (1-p)alpha^2) / q
inline CorrParams to_correlated_params(double p, NoiseParams noise) {
    validate(noise);
    if (!(p >= 0.0 && p <= 1.0))
        throw std::domain_error("to_correlated_params: p " + std::to_string(p) +
                                " outside [0,1]");
    const double keep = 1.0 - noise.beta;
    const double q = p * keep + (1.0 - p) * noise.alpha;
    if (q <= 0.0)
        throw std::domain_error("to_correlated_params: no edge is ever observed (q = 0)");
    const double s = (p * keep * keep + (1.0 - p) * noise.alpha * noise.alpha) / q;
    return CorrParams{q, s};
}

struct CorrelatedPair {
    Graph first;       // ~ ER(n, q)
    Graph second;      // ER(n, q) marginally, correlated with first through truth
    Permutation truth; // latent node map: first's node u corresponds to second's node truth(u)
};

// Draw order is fixed: first graph, then the latent permutation, then the
// conditional second graph over first's pairs in lexicographic order.
inline CorrelatedPair sample_correlated_er(int n, CorrParams cp, RngSeed seed) {
    validate(cp);
    Rng rng(seed);
    Graph first(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(cp.q)) first.set_edge(u, v, true);
    Permutation truth = random_permutation(n, rng);
    const double fresh = cp.q < 1.0 ? cp.q * (1.0 - cp.s) / (1.0 - cp.q) : 0.0;
    Graph second(n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            const bool on = first.has_edge(u, v) ? rng.bernoulli(cp.s) : rng.bernoulli(fresh);
            if (on) second.set_edge(truth(u), truth(v), true);
        }
    }
    return CorrelatedPair{std::move(first), std::move(second), std::move(truth)};
}

// alpha making the expected observed edge count equal the parent's:
// alpha * |non-edges| = beta * |edges|.
inline double edge_unbiased_alpha(const Graph& parent, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0))
        throw std::domain_error("edge_unbiased_alpha: beta " + std::to_string(beta) +
                                " outside [0,1]");
    const int n = parent.node_count();
    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    const double edges = static_cast<double>(parent.edge_count());
    const double non_edges = pairs - edges;
    if (non_edges <= 0.0)
        throw std::domain_error("edge_unbiased_alpha: parent graph is complete");
    const double alpha = beta * edges / non_edges;
    if (alpha > 1.0)
        throw std::domain_error("edge_unbiased_alpha: required alpha " +
                                std::to_string(alpha) + " exceeds 1");
    return alpha;
}

} // namespace netrecover
