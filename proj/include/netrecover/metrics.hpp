#pragma once

// Evaluation measures for a recovery trial: fraction of correctly matched
// node pairs, normalized squared adjacency distance, and fraction of
// correctly classified node pairs.

#include <stdexcept>
#include <string>
#include <vector>

#include "netrecover/errors.hpp"
#include "netrecover/graph.hpp"

namespace netrecover {

struct TrialMetrics {
    double recovery = 0.0;
    double frobenius = 0.0;
    double accuracy = 0.0;
};

inline double recovery_fraction(const Permutation& estimated, const Permutation& truth) {
    const int n = estimated.size();
    if (truth.size() != n)
        throw dimension_error("recovery_fraction: permutation sizes " + std::to_string(n) +
                              " and " + std::to_string(truth.size()) + " differ");
    if (n == 0) throw std::domain_error("recovery_fraction: empty permutations");
    int hits = 0;
    for (int u = 0; u < n; ++u)
        if (estimated(u) == truth(u)) ++hits;
    return static_cast<double>(hits) / n;
}

// Aggregate over the non-reference alignments: the mean of the per-sample
// correctly-matched fractions. Reduces to the single fraction when there is
// one alignment.
inline double mean_recovery(const std::vector<Permutation>& estimated,
                            const std::vector<Permutation>& truth) {
    if (estimated.size() != truth.size())
        throw dimension_error("mean_recovery: " + std::to_string(estimated.size()) + " vs " +
                              std::to_string(truth.size()) + " permutations");
    if (estimated.empty()) throw std::domain_error("mean_recovery: no permutations");
    double sum = 0.0;
    for (std::size_t i = 0; i < estimated.size(); ++i)
        sum += recovery_fraction(estimated[i], truth[i]);
    return sum / static_cast<double>(estimated.size());
}

inline double accuracy(const Graph& estimate, const Graph& truth) {
    const int n = estimate.node_count();
    if (truth.node_count() != n)
        throw dimension_error("accuracy: node counts " + std::to_string(n) + " and " +
                              std::to_string(truth.node_count()) + " differ");
    if (n < 2) throw std::domain_error("accuracy: need at least 2 nodes");
    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    const double wrong = static_cast<double>(differing_pairs(estimate, truth));
    return (pairs - wrong) / pairs;
}

} // namespace netrecover
