#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "netrecover/assignment.hpp"
#include "netrecover/sampling.hpp"

using namespace netrecover;
using testutil::assignment_cost;
using testutil::brute_force_max;
using testutil::brute_force_min;

namespace {

CostMatrix random_int_matrix(int n, int lo, int hi, Rng& rng) {
    CostMatrix c(n);
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < n; ++j)
            c.at(r, j) = static_cast<double>(lo + static_cast<int>(rng.below(span)));
    return c;
}

} // namespace

TEST_CASE("cost matrix storage") {
    CostMatrix c(3);
    CHECK(c.size() == 3);
    c.at(1, 2) = 5.0;
    CHECK(c.at(1, 2) == 5.0);
    CHECK(c.at(0, 0) == 0.0);
    CHECK_THROWS_AS(c.at(3, 0), std::out_of_range);
    CHECK_THROWS_AS(c.at(0, -1), std::out_of_range);
}

TEST_CASE("assignment on trivial matrices") {
    CostMatrix zeros(4);
    const AssignmentSolution sol = solve_min(zeros);
    CHECK(sol.assignment.is_identity());
    CHECK(sol.objective == 0.0);

    CostMatrix diag(3);
    for (int r = 0; r < 3; ++r)
        for (int j = 0; j < 3; ++j) diag.at(r, j) = r == j ? 1.0 : 9.0;
    const AssignmentSolution d = solve_min(diag);
    CHECK(d.assignment.is_identity());
    CHECK(d.objective == 3.0);

    CostMatrix one(1);
    one.at(0, 0) = 7.0;
    CHECK(solve_min(one).objective == 7.0);
}

TEST_CASE("assignment rejects non-finite costs") {
    CostMatrix c(2);
    c.at(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(solve_min(c), std::domain_error);
    c.at(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(solve_min(c), std::domain_error);
    CHECK_THROWS_AS(solve_max(c), std::domain_error);
}

TEST_CASE("minimization matches brute force on random integer matrices") {
    Rng rng(RngSeed{77});
    for (int n = 2; n <= 8; ++n) {
        const int reps = n == 8 ? 10 : 60;
        for (int rep = 0; rep < reps; ++rep) {
            const CostMatrix c = random_int_matrix(n, 0, 50, rng);
            const AssignmentSolution sol = solve_min(c);
            const auto oracle = brute_force_min(c);
            CHECK(sol.objective == oracle.objective);
            CHECK(assignment_cost(c, sol.assignment) == sol.objective);
            if (oracle.unique()) CHECK(sol.assignment == oracle.best);
        }
    }
}

TEST_CASE("maximization matches brute force") {
    Rng rng(RngSeed{78});
    for (int n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 40; ++rep) {
            const CostMatrix c = random_int_matrix(n, -20, 20, rng);
            const AssignmentSolution sol = solve_max(c);
            const auto oracle = brute_force_max(c);
            CHECK(sol.objective == oracle.objective);
            CHECK(assignment_cost(c, sol.assignment) == sol.objective);
            if (oracle.unique()) CHECK(sol.assignment == oracle.best);
        }
    }
}

TEST_CASE("solver handles negative and float costs") {
    Rng rng(RngSeed{79});
    for (int rep = 0; rep < 30; ++rep) {
        CostMatrix c(5);
        for (int r = 0; r < 5; ++r)
            for (int j = 0; j < 5; ++j) c.at(r, j) = rng.uniform01() * 2.0 - 1.0;
        const AssignmentSolution sol = solve_min(c);
        const auto oracle = brute_force_min(c);
        CHECK(sol.objective == Catch::Approx(oracle.objective).margin(1e-12));
    }
}

TEST_CASE("constrained assignment honors pins") {
    Rng rng(RngSeed{80});

    SECTION("empty pins reduce to the plain solver") {
        const CostMatrix c = random_int_matrix(5, 0, 30, rng);
        const AssignmentSolution free = solve_min(c);
        const AssignmentSolution pinned = solve_constrained(c, {});
        CHECK(pinned.objective == free.objective);
        CHECK(pinned.assignment == free.assignment);
    }

    SECTION("a fully pinned assignment is returned verbatim") {
        CostMatrix c(4);
        for (int r = 0; r < 4; ++r)
            for (int j = 0; j < 4; ++j) c.at(r, j) = r == j ? 0.0 : 100.0;
        const std::vector<std::pair<int, int>> pins{{0, 1}, {1, 0}, {2, 3}, {3, 2}};
        const AssignmentSolution sol = solve_constrained(c, pins);
        for (const auto& [r, j] : pins) CHECK(sol.assignment(r) == j);
        CHECK(sol.objective == 400.0);
    }

    SECTION("partial pins match brute force over the free rows") {
        for (int rep = 0; rep < 40; ++rep) {
            const CostMatrix c = random_int_matrix(5, 0, 30, rng);
            const std::vector<std::pair<int, int>> pins{{1, 3}, {4, 0}};
            const AssignmentSolution sol = solve_constrained(c, pins);
            CHECK(sol.assignment(1) == 3);
            CHECK(sol.assignment(4) == 0);

            double best = std::numeric_limits<double>::infinity();
            for (const auto& pi : testutil::all_permutations(5)) {
                if (pi(1) != 3 || pi(4) != 0) continue;
                best = std::min(best, assignment_cost(c, pi));
            }
            CHECK(sol.objective == best);
            CHECK(assignment_cost(c, sol.assignment) == sol.objective);
        }
    }

    SECTION("conflicting or invalid pins are rejected") {
        const CostMatrix c = random_int_matrix(4, 0, 10, rng);
        CHECK_THROWS_AS(solve_constrained(c, {{0, 1}, {0, 2}}), constraint_error);
        CHECK_THROWS_AS(solve_constrained(c, {{0, 1}, {2, 1}}), constraint_error);
        CHECK_THROWS_AS(solve_constrained(c, {{0, 4}}), std::out_of_range);
        CHECK_THROWS_AS(solve_constrained(c, {{-1, 0}}), std::out_of_range);
    }
}

TEST_CASE("solver scales to the protocol size") {
    Rng rng(RngSeed{81});
    CostMatrix c(400);
    for (int r = 0; r < 400; ++r)
        for (int j = 0; j < 400; ++j) c.at(r, j) = rng.uniform01();
    const AssignmentSolution sol = solve_min(c);
    CHECK(assignment_cost(c, sol.assignment) == Catch::Approx(sol.objective));
    CHECK(sol.objective < 400 * 0.05);
}
