// Shared brute-force oracles for the test suite. Everything here is the
// slow-but-obvious version of what the library computes.
#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "netrecover/assignment.hpp"
#include "netrecover/graph.hpp"

namespace testutil {

inline std::vector<netrecover::Permutation> all_permutations(int n) {
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 0);
    std::vector<netrecover::Permutation> out;
    do {
        out.emplace_back(images);
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

inline double assignment_cost(const netrecover::CostMatrix& cost,
                              const netrecover::Permutation& pi) {
    double total = 0.0;
    for (int r = 0; r < cost.size(); ++r) total += cost.at(r, pi(r));
    return total;
}

struct BruteForceResult {
    netrecover::Permutation best;
    double objective = 0.0;
    double runner_up = 0.0; // best objective among the other permutations

    // No other permutation comes within eps of the optimum.
    bool unique(double eps = 0.0) const { return std::abs(runner_up - objective) > eps; }
};

inline BruteForceResult brute_force_min(const netrecover::CostMatrix& cost) {
    const auto perms = all_permutations(cost.size());
    std::vector<double> totals;
    totals.reserve(perms.size());
    for (const auto& pi : perms) totals.push_back(assignment_cost(cost, pi));
    std::size_t best = 0;
    for (std::size_t i = 1; i < totals.size(); ++i)
        if (totals[i] < totals[best]) best = i;
    double runner_up = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < totals.size(); ++i)
        if (i != best) runner_up = std::min(runner_up, totals[i]);
    return {perms[best], totals[best], runner_up};
}

inline BruteForceResult brute_force_max(const netrecover::CostMatrix& score) {
    const auto perms = all_permutations(score.size());
    std::vector<double> totals;
    totals.reserve(perms.size());
    for (const auto& pi : perms) totals.push_back(assignment_cost(score, pi));
    std::size_t best = 0;
    for (std::size_t i = 1; i < totals.size(); ++i)
        if (totals[i] > totals[best]) best = i;
    double runner_up = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < totals.size(); ++i)
        if (i != best) runner_up = std::max(runner_up, totals[i]);
    return {perms[best], totals[best], runner_up};
}

} // namespace testutil
