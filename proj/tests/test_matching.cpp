#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "netrecover/matching.hpp"
#include "netrecover/metrics.hpp"
#include "netrecover/sampling.hpp"

using namespace netrecover;

namespace {

DegreeProfile profile_of(std::vector<int> degrees) {
    return profile_from_degrees(std::move(degrees));
}

double total_cost(const CostMatrix& z, const Permutation& pi) {
    double t = 0.0;
    for (int u = 0; u < z.size(); ++u) t += z.at(u, pi(u));
    return t;
}

double min_profile_gap(const Graph& g) {
    const auto profiles = all_degree_profiles(g);
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < profiles.size(); ++a)
        for (std::size_t b = a + 1; b < profiles.size(); ++b)
            gap = std::min(gap, tv_distance(profiles[a], profiles[b]));
    return gap;
}

} // namespace

TEST_CASE("degree profile construction") {
    Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
    CHECK(degree_profile(path, 1) == profile_of({1, 1}));
    CHECK(degree_profile(path, 0) == profile_of({2}));

    Graph star = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(degree_profile(star, 0) == profile_of({1, 1, 1, 1}));
    CHECK(degree_profile(star, 1) == profile_of({4}));

    Graph isolated(4);
    CHECK(degree_profile(isolated, 2).total == 0);
    CHECK(degree_profile(isolated, 2).bins.empty());

    CHECK_THROWS_AS(degree_profile(path, 3), std::out_of_range);

    const auto all = all_degree_profiles(star);
    REQUIRE(all.size() == 5);
    CHECK(all[0] == profile_of({1, 1, 1, 1}));
    CHECK(all[4] == profile_of({4}));
}

TEST_CASE("total variation distance on profiles") {
    CHECK(tv_distance(profile_of({1, 1, 2}), profile_of({1, 1, 2})) == 0.0);
    CHECK(tv_distance(profile_of({1, 1, 2}), profile_of({1, 2, 2})) ==
          Catch::Approx(1.0 / 3.0));
    CHECK(tv_distance(profile_of({1, 2}), profile_of({3, 4})) == 1.0);
    CHECK(tv_distance(profile_of({}), profile_of({})) == 0.0);
    CHECK(tv_distance(profile_of({}), profile_of({5})) == 1.0);
    CHECK(tv_distance(profile_of({2, 2}), profile_of({2})) == 0.0);
}

TEST_CASE("total variation is a metric on normalized profiles") {
    Rng rng(RngSeed{90});
    auto random_profile = [&rng]() {
        std::vector<int> degrees;
        const int len = 1 + static_cast<int>(rng.below(6));
        for (int i = 0; i < len; ++i) degrees.push_back(1 + static_cast<int>(rng.below(4)));
        return profile_from_degrees(std::move(degrees));
    };
    for (int rep = 0; rep < 200; ++rep) {
        const DegreeProfile p = random_profile();
        const DegreeProfile q = random_profile();
        const DegreeProfile r = random_profile();
        const double pq = tv_distance(p, q);
        CHECK(pq == tv_distance(q, p));
        CHECK(pq >= 0.0);
        CHECK(pq <= 1.0);
        CHECK(tv_distance(p, p) == 0.0);
        CHECK(pq <= tv_distance(p, r) + tv_distance(r, q) + 1e-12);
    }
}

TEST_CASE("profile distance matrix") {
    Graph g = sample_er(20, 0.3, RngSeed{91});
    const CostMatrix self = profile_distance_matrix(g, g);
    for (int u = 0; u < 20; ++u) CHECK(self.at(u, u) == 0.0);

    Rng rng(RngSeed{92});
    const Permutation pi = random_permutation(20, rng);
    const CostMatrix z = profile_distance_matrix(g, permute(g, pi));
    const Permutation expected = pi.inverse();
    for (int u = 0; u < 20; ++u) CHECK(z.at(u, expected(u)) == 0.0);

    Graph cycle = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    const CostMatrix flat = profile_distance_matrix(cycle, cycle);
    for (int u = 0; u < 5; ++u)
        for (int v = 0; v < 5; ++v) CHECK(flat.at(u, v) == 0.0);

    CHECK_THROWS_AS(profile_distance_matrix(Graph(3), Graph(4)), dimension_error);
}

TEST_CASE("seed sets stay conflict-free") {
    SeedSet s;
    CHECK(s.empty());
    CHECK(s.try_insert(0, 5));
    CHECK(s.try_insert(1, 6));
    CHECK_FALSE(s.try_insert(0, 7));
    CHECK_FALSE(s.try_insert(2, 5));
    CHECK(s.size() == 2);
    CHECK(s.contains(0, 5));
    CHECK_FALSE(s.contains(0, 6));
    CHECK(s.image_of(1) == 6);
    CHECK(s.preimage_of(6) == 1);
    CHECK_FALSE(s.image_of(3).has_value());
    CHECK(s.pairs() == std::vector<std::pair<int, int>>{{0, 5}, {1, 6}});
    CHECK(s.transposed_pairs() == std::vector<std::pair<int, int>>{{5, 0}, {6, 1}});
    CHECK_THROWS_AS(s.try_insert(-1, 0), std::invalid_argument);

    CHECK_THROWS_AS(SeedSet({{0, 1}, {0, 2}}), constraint_error);
    CHECK(SeedSet({{0, 1}, {1, 2}}).size() == 2);
}

TEST_CASE("seed extraction from high-degree close-profile pairs") {
    Graph g = Graph::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}});
    const CostMatrix z = profile_distance_matrix(g, g);

    const SeedSet seeds = extract_seeds(g, g, z, 4, 4, 0.1);
    CHECK(seeds.pairs() == std::vector<std::pair<int, int>>{{0, 0}});

    CHECK(extract_seeds(g, g, z, 6, 6, 0.1).empty());
    CHECK(extract_seeds(g, g, z, 0, 0, -1.0).empty());

    SECTION("conflicts resolve by smallest distance, then lowest indices") {
        CostMatrix crafted(3);
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v) crafted.at(u, v) = 1.0;
        crafted.at(0, 1) = 0.01;
        crafted.at(1, 1) = 0.02;
        Graph dense = Graph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
        const SeedSet byz = extract_seeds(dense, dense, crafted, 0, 0, 0.05);
        CHECK(byz.pairs() == std::vector<std::pair<int, int>>{{0, 1}});

        CostMatrix tied(3);
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v) tied.at(u, v) = 1.0;
        tied.at(0, 0) = 0.01;
        tied.at(0, 1) = 0.01;
        tied.at(1, 0) = 0.01;
        tied.at(1, 1) = 0.01;
        const SeedSet low = extract_seeds(dense, dense, tied, 0, 0, 0.05);
        CHECK(low.pairs() == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
    }
}

TEST_CASE("two-stage matching on crafted distance matrices") {
    SECTION("clean diagonal goes through stage 1") {
        CostMatrix z(2);
        z.at(0, 1) = 1.0;
        z.at(1, 0) = 1.0;
        CHECK(match_with_distance_matrix(z).is_identity());
    }
    SECTION("clean anti-diagonal") {
        CostMatrix z(2);
        z.at(0, 0) = 1.0;
        z.at(1, 1) = 1.0;
        CHECK(match_with_distance_matrix(z) == Permutation(std::vector<int>{1, 0}));
    }
    SECTION("all-equal entries fall back to the assignment solver") {
        CostMatrix z(3);
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v) z.at(u, v) = 0.5;
        CHECK(match_with_distance_matrix(z).is_identity());
    }
    SECTION("a boundary tie forces the fallback") {
        CostMatrix z(3);
        const double rows[3][3] = {{0.9, 0.0, 0.9}, {0.2, 0.2, 0.9}, {0.9, 0.9, 0.1}};
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v) z.at(u, v) = rows[u][v];
        CHECK(match_with_distance_matrix(z) == Permutation(std::vector<int>{1, 0, 2}));
    }
    SECTION("seeds only constrain the fallback stage") {
        CostMatrix strict(2);
        strict.at(0, 1) = 1.0;
        strict.at(1, 0) = 1.0;
        const SeedSet pin({{0, 1}});
        CHECK(match_with_distance_matrix(strict, &pin).is_identity());

        CostMatrix flat(2);
        for (int u = 0; u < 2; ++u)
            for (int v = 0; v < 2; ++v) flat.at(u, v) = 0.5;
        CHECK(match_with_distance_matrix(flat, &pin) ==
              Permutation(std::vector<int>{1, 0}));
    }
    SECTION("seeds outside the matrix are rejected") {
        CostMatrix z(2);
        const SeedSet bad({{0, 5}});
        CHECK_THROWS_AS(match_with_distance_matrix(z, &bad), constraint_error);
    }
    SECTION("empty input is rejected") {
        CHECK_THROWS_AS(match_with_distance_matrix(CostMatrix(0)), std::invalid_argument);
    }
}

TEST_CASE("stage 1 agrees with the assignment optimum whenever it fires") {
    Rng rng(RngSeed{93});
    int stage1_hits = 0;
    for (int rep = 0; rep < 150; ++rep) {
        const int n = 2 + static_cast<int>(rng.below(5));
        CostMatrix z(n);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) z.at(u, v) = rng.uniform01();

        struct Entry {
            double value;
            int row, col;
        };
        std::vector<Entry> entries;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v) entries.push_back({z.at(u, v), u, v});
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            return a.value < b.value;
        });
        std::vector<int> row_seen(n, 0), col_seen(n, 0);
        bool forms_permutation = true;
        for (int k = 0; k < n; ++k) {
            if (row_seen[entries[k].row]++ || col_seen[entries[k].col]++)
                forms_permutation = false;
        }
        if (!forms_permutation) continue;
        ++stage1_hits;
        const Permutation pi = match_with_distance_matrix(z);
        CHECK(total_cost(z, pi) == Catch::Approx(solve_min(z).objective).margin(1e-12));
    }
    CHECK(stage1_hits > 5);
}

TEST_CASE("matching recovers planted relabelings") {
    SECTION("identity on a self-match with separated profiles") {
        Graph g = sample_er(40, 0.35, RngSeed{94});
        REQUIRE(min_profile_gap(g) > 0.0);
        CHECK(match_degree_profiles(g, g).is_identity());
    }
    SECTION("a planted permutation is inverted") {
        Rng rng(RngSeed{95});
        for (int rep = 0; rep < 10; ++rep) {
            Graph g = sample_er(40, 0.35, RngSeed{950 + static_cast<std::uint64_t>(rep)});
            if (min_profile_gap(g) == 0.0) continue;
            const Permutation pi = random_permutation(40, rng);
            CHECK(match_degree_profiles(g, permute(g, pi)) == pi.inverse());
            CHECK(permute(permute(g, pi), match_degree_profiles(g, permute(g, pi))) == g);
        }
    }
    SECTION("brute force confirms the minimizer on small instances") {
        Rng rng(RngSeed{96});
        for (int rep = 0; rep < 40; ++rep) {
            const int n = 4 + static_cast<int>(rng.below(3));
            Graph g1 = sample_er(n, 0.5, RngSeed{960 + static_cast<std::uint64_t>(rep)});
            Graph g2 = sample_er(n, 0.5, RngSeed{9600 + static_cast<std::uint64_t>(rep)});
            const CostMatrix z = profile_distance_matrix(g1, g2);
            const Permutation pi = match_degree_profiles(g1, g2);
            const auto oracle = testutil::brute_force_min(z);
            CHECK(total_cost(z, pi) == Catch::Approx(oracle.objective).margin(1e-9));
        }
        // Independent pairs tie constantly (profile distances are coarse
        // rationals), so the permutation itself is only checkable on planted
        // pairs with separated profiles, where the zero-cost optimum is unique.
        int checked = 0;
        for (int rep = 0; rep < 200 && checked < 8; ++rep) {
            const int n = 6 + static_cast<int>(rng.below(3));
            Graph g = sample_er(n, 0.45, RngSeed{9900 + static_cast<std::uint64_t>(rep)});
            if (min_profile_gap(g) == 0.0) continue;
            const Permutation pi = random_permutation(n, rng);
            const CostMatrix z = profile_distance_matrix(g, permute(g, pi));
            const auto oracle = testutil::brute_force_min(z);
            REQUIRE(oracle.unique(1e-9));
            CHECK(match_degree_profiles(g, permute(g, pi)) == oracle.best);
            CHECK(oracle.best == pi.inverse());
            ++checked;
        }
        CHECK(checked == 8);
    }
    SECTION("matching is equivariant under relabeling the second graph") {
        Rng rng(RngSeed{97});
        int verified = 0;
        for (int rep = 0; rep < 200 && verified < 10; ++rep) {
            const int n = 6 + static_cast<int>(rng.below(3));
            Graph g = sample_er(n, 0.4, RngSeed{970 + static_cast<std::uint64_t>(rep)});
            if (min_profile_gap(g) == 0.0) continue;
            const Permutation pi = random_permutation(n, rng);
            const Permutation sigma = random_permutation(n, rng);
            Graph g2 = permute(g, pi);
            const Permutation base = match_degree_profiles(g, g2);
            const Permutation shifted = match_degree_profiles(g, permute(g2, sigma));
            CHECK(shifted == compose(sigma.inverse(), base));
            ++verified;
        }
        CHECK(verified == 10);
    }
}

TEST_CASE("seed expansion composes partial alignments") {
    SECTION("two graphs expand to exactly the input") {
        const std::vector<SeedSet> consecutive{SeedSet({{0, 3}, {1, 4}})};
        const PairwiseSeeds all = expand_seeds(consecutive);
        CHECK(all.graph_count() == 2);
        CHECK(all.at(0, 1) == consecutive[0]);
    }
    SECTION("chains compose through intermediates") {
        const std::vector<SeedSet> consecutive{
            SeedSet({{0, 1}, {2, 3}}), SeedSet({{1, 2}}), SeedSet({{2, 0}, {9, 9}})};
        const PairwiseSeeds all = expand_seeds(consecutive);
        CHECK(all.graph_count() == 4);
        CHECK(all.at(0, 2).pairs() == std::vector<std::pair<int, int>>{{0, 2}});
        CHECK(all.at(0, 3).pairs() == std::vector<std::pair<int, int>>{{0, 0}});
        CHECK(all.at(1, 3).pairs() == std::vector<std::pair<int, int>>{{1, 0}});
    }
    SECTION("a shared full alignment propagates everywhere") {
        const int n = 6;
        Rng rng(RngSeed{98});
        const Permutation f = random_permutation(n, rng);
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < n; ++u) pairs.emplace_back(u, f(u));
        const std::vector<SeedSet> consecutive(3, SeedSet(pairs));
        const PairwiseSeeds all = expand_seeds(consecutive);
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                Permutation expect = Permutation::identity(n);
                for (int hop = i; hop < j; ++hop) expect = compose(f, expect);
                std::vector<std::pair<int, int>> want;
                for (int u = 0; u < n; ++u) want.emplace_back(u, expect(u));
                CHECK(all.at(i, j) == SeedSet(want));
            }
        }
    }
    SECTION("three-hop chains propagate to the outermost pair") {
        const std::vector<SeedSet> consecutive{SeedSet({{0, 1}}), SeedSet({{1, 5}}),
                                               SeedSet({{5, 2}})};
        PairwiseSeeds all = expand_seeds(consecutive);
        CHECK(all.at(0, 2).pairs() == std::vector<std::pair<int, int>>{{0, 5}});
        CHECK(all.at(0, 3).pairs() == std::vector<std::pair<int, int>>{{0, 2}});
        CHECK(all.at(1, 3).pairs() == std::vector<std::pair<int, int>>{{1, 2}});
    }
    CHECK_THROWS_AS(expand_seeds({}), std::invalid_argument);
}

TEST_CASE("cleanup iteration count default") {
    CHECK(default_cleanup_iterations(1) == 1);
    CHECK(default_cleanup_iterations(2) == 1);
    CHECK(default_cleanup_iterations(3) == 2);
    CHECK(default_cleanup_iterations(1000) == 10);
    CHECK(default_cleanup_iterations(1024) == 10);
    CHECK(default_cleanup_iterations(1025) == 11);
}

TEST_CASE("cleanup score matrix counts aligned common neighbors") {
    Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
    const CostMatrix m = cleanup_score_matrix(path, path, Permutation::identity(3));
    const double expected[3][3] = {{1, 0, 1}, {0, 2, 0}, {1, 0, 1}};
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) CHECK(m.at(u, v) == expected[u][v]);

    const Permutation swap02(std::vector<int>{2, 1, 0});
    const CostMatrix ms = cleanup_score_matrix(path, path, swap02);
    for (int u = 0; u < 3; ++u)
        for (int v = 0; v < 3; ++v) CHECK(ms.at(u, v) == expected[u][v]);

    CHECK_THROWS_AS(cleanup_score_matrix(path, Graph(4), Permutation::identity(3)),
                    dimension_error);
}

TEST_CASE("cleanup steps match the brute-force argmax") {
    Rng rng(RngSeed{99});
    for (int rep = 0; rep < 25; ++rep) {
        const int n = 4 + static_cast<int>(rng.below(3));
        Graph g1 = sample_er(n, 0.5, RngSeed{990 + static_cast<std::uint64_t>(rep)});
        Graph g2 = sample_er(n, 0.5, RngSeed{9900 + static_cast<std::uint64_t>(rep)});
        Permutation pi = random_permutation(n, rng);
        for (int step = 0; step < 3; ++step) {
            const Permutation next = cleanup_pair(g1, g2, pi, 1);
            const auto oracle = testutil::brute_force_max(cleanup_score_matrix(g1, g2, pi));
            CHECK(testutil::assignment_cost(cleanup_score_matrix(g1, g2, pi), next) ==
                  oracle.objective);
            pi = next;
        }
    }
}

TEST_CASE("cleanup leaves a uniquely optimal alignment alone") {
    Rng rng(RngSeed{100});
    int verified = 0;
    for (int rep = 0; rep < 30 && verified < 8; ++rep) {
        Graph g = sample_er(6, 0.5, RngSeed{1000 + static_cast<std::uint64_t>(rep)});
        const auto oracle = testutil::brute_force_max(
            cleanup_score_matrix(g, g, Permutation::identity(6)));
        if (!oracle.unique() || !oracle.best.is_identity()) continue;
        CHECK(cleanup_pair(g, g, Permutation::identity(6), 4).is_identity());
        ++verified;
    }
    CHECK(verified == 8);

    CHECK_THROWS_AS(cleanup_pair(Graph(3), Graph(3), Permutation::identity(3), 0),
                    std::invalid_argument);
}

TEST_CASE("cleanup repairs a mildly corrupted alignment") {
    const int n = 150;
    const CorrParams cp{0.25, 0.95};
    int improved = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const CorrelatedPair pair = sample_correlated_er(n, cp, RngSeed{200 + seed});
        Rng rng(RngSeed{300 + seed});
        std::vector<int> images = pair.truth.images();
        for (int k = 0; k < 10; ++k) {
            const int a = static_cast<int>(rng.below(n));
            const int b = static_cast<int>(rng.below(n));
            std::swap(images[a], images[b]);
        }
        const Permutation corrupted(images);
        const double before = recovery_fraction(corrupted, pair.truth);
        REQUIRE(before < 1.0);
        const Permutation fixed =
            cleanup_pair(pair.first, pair.second, corrupted, default_cleanup_iterations(n));
        const double after = recovery_fraction(fixed, pair.truth);
        CHECK(after >= before);
        if (after > before) ++improved;
    }
    CHECK(improved >= 4);
}
