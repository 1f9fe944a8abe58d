#pragma once

// Exact linear assignment solver: shortest augmenting paths with dual
// potentials (Jonker-Volgenant family), O(n^3) worst case.
//
// Ties between equal-cost optima are broken by the fixed scan order (the
// lowest-index column reaching the current minimum wins), which in the
// all-ties case yields the identity permutation. Only the objective value
// is contractual; callers comparing permutations must ensure a unique
// optimum.

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "netrecover/errors.hpp"
#include "netrecover/graph.hpp"

namespace netrecover {

class CostMatrix {
public:
    CostMatrix() = default;

    explicit CostMatrix(int n, double fill = 0.0)
        : n_(n), values_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {
        if (n < 0) throw std::invalid_argument("CostMatrix: negative dimension");
    }

    int size() const { return n_; }

    double& at(int row, int col) { return values_[index(row, col)]; }
    double at(int row, int col) const { return values_[index(row, col)]; }

private:
    std::size_t index(int row, int col) const {
        if (row < 0 || row >= n_ || col < 0 || col >= n_)
            throw std::out_of_range("CostMatrix: index (" + std::to_string(row) + "," +
                                    std::to_string(col) + ") outside " + std::to_string(n_) +
                                    "x" + std::to_string(n_));
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(col);
    }

    int n_ = 0;
    std::vector<double> values_;
};

struct AssignmentSolution {
    Permutation assignment;
    double objective = 0.0;
};

namespace detail {

inline void require_finite(const CostMatrix& cost) {
    const int n = cost.size();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!std::isfinite(cost.at(r, c)))
                throw std::domain_error("assignment: non-finite cost at (" + std::to_string(r) +
                                        "," + std::to_string(c) + ")");
}

} // namespace detail

inline AssignmentSolution solve_min(const CostMatrix& cost) {
    const int n = cost.size();
    if (n == 0) return {Permutation(std::vector<int>{}), 0.0};
    detail::require_finite(cost);

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> row_pot(n, 0.0);
    std::vector<double> col_pot(n + 1, 0.0);
    // row_of[c] is the row currently assigned to column c; column n is a
    // virtual column holding the row being inserted.
    std::vector<int> row_of(n + 1, -1);
    std::vector<int> prev_col(n + 1, -1);
    std::vector<double> min_reduced(n + 1);
    std::vector<char> visited(n + 1);

    for (int r = 0; r < n; ++r) {
        row_of[n] = r;
        int cur = n;
        std::fill(min_reduced.begin(), min_reduced.end(), inf);
        std::fill(visited.begin(), visited.end(), 0);
        do {
            visited[cur] = 1;
            const int row = row_of[cur];
            double delta = inf;
            int next = -1;
            for (int c = 0; c < n; ++c) {
                if (visited[c]) continue;
                const double reduced = cost.at(row, c) - row_pot[row] - col_pot[c];
                if (reduced < min_reduced[c]) {
                    min_reduced[c] = reduced;
                    prev_col[c] = cur;
                }
                if (min_reduced[c] < delta) {
                    delta = min_reduced[c];
                    next = c;
                }
            }
            for (int c = 0; c <= n; ++c) {
                if (visited[c]) {
                    row_pot[row_of[c]] += delta;
                    col_pot[c] -= delta;
                } else {
                    min_reduced[c] -= delta;
                }
            }
            cur = next;
        } while (row_of[cur] != -1);
        // Augment: shift assignments backwards along the alternating path.
        do {
            const int back = prev_col[cur];
            row_of[cur] = row_of[back];
            cur = back;
        } while (cur != n);
    }

    std::vector<int> images(n, -1);
    for (int c = 0; c < n; ++c) images[row_of[c]] = c;
    Permutation pi(std::move(images));
    double objective = 0.0;
    for (int r = 0; r < n; ++r) objective += cost.at(r, pi(r));
    return {std::move(pi), objective};
}

inline AssignmentSolution solve_max(const CostMatrix& score) {
    const int n = score.size();
    CostMatrix negated(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) negated.at(r, c) = -score.at(r, c);
    AssignmentSolution sol = solve_min(negated);
    double objective = 0.0;
    for (int r = 0; r < n; ++r) objective += score.at(r, sol.assignment(r));
    return {std::move(sol.assignment), objective};
}

// Minimum-cost permutation among those containing every pinned (row, column)
// pair: solve on the free submatrix, then reinsert the pins.
inline AssignmentSolution solve_constrained(const CostMatrix& cost,
                                            const std::vector<std::pair<int, int>>& pinned) {
    const int n = cost.size();
    if (pinned.empty()) return solve_min(cost);
    detail::require_finite(cost);

    std::vector<char> row_pinned(n, 0);
    std::vector<char> col_pinned(n, 0);
    for (const auto& [r, c] : pinned) {
        if (r < 0 || r >= n || c < 0 || c >= n)
            throw std::out_of_range("solve_constrained: pin (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") outside " + std::to_string(n) + "x" +
                                    std::to_string(n));
        if (row_pinned[r])
            throw constraint_error("solve_constrained: row " + std::to_string(r) +
                                   " pinned twice");
        if (col_pinned[c])
            throw constraint_error("solve_constrained: column " + std::to_string(c) +
                                   " pinned twice");
        row_pinned[r] = 1;
        col_pinned[c] = 1;
    }

    std::vector<int> free_rows;
    std::vector<int> free_cols;
    for (int r = 0; r < n; ++r)
        if (!row_pinned[r]) free_rows.push_back(r);
    for (int c = 0; c < n; ++c)
        if (!col_pinned[c]) free_cols.push_back(c);

    std::vector<int> images(n, -1);
    for (const auto& [r, c] : pinned) images[r] = c;
    if (!free_rows.empty()) {
        const int k = static_cast<int>(free_rows.size());
        CostMatrix reduced(k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) reduced.at(i, j) = cost.at(free_rows[i], free_cols[j]);
        AssignmentSolution sub = solve_min(reduced);
        for (int i = 0; i < k; ++i) images[free_rows[i]] = free_cols[sub.assignment(i)];
    }
    Permutation pi(std::move(images));
    double objective = 0.0;
    for (int r = 0; r < n; ++r) objective += cost.at(r, pi(r));
    return {std::move(pi), objective};
}

} // namespace netrecover
