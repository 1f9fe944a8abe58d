#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "netrecover/io.hpp"
#include "netrecover/sampling.hpp"

using namespace netrecover;

namespace {

Graph roundtrip(const Graph& g) {
    std::ostringstream out;
    write_edge_list(out, g);
    std::istringstream in(out.str());
    return read_edge_list(in);
}

} // namespace

TEST_CASE("edge list round trip") {
    CHECK(roundtrip(Graph(0)) == Graph(0));
    CHECK(roundtrip(Graph(7)) == Graph(7));
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = sample_er(30, 0.3, RngSeed{static_cast<std::uint64_t>(trial)});
        CHECK(roundtrip(g) == g);
    }
}

TEST_CASE("edge list format is rejected when malformed") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_edge_list(in, "test");
    };
    CHECK(parse("n 3\n0 1\n\n1 2\n").edge_count() == 2);

    CHECK_THROWS_AS(parse(""), io_error);
    CHECK_THROWS_AS(parse("3\n"), io_error);
    CHECK_THROWS_AS(parse("nodes 3\n"), io_error);
    CHECK_THROWS_AS(parse("n -1\n"), io_error);
    CHECK_THROWS_AS(parse("n 3\n0\n"), io_error);
    CHECK_THROWS_AS(parse("n 3\n0 1 2\n"), io_error);
    CHECK_THROWS_AS(parse("n 3\n1 0\n"), io_error);
    CHECK_THROWS_AS(parse("n 3\n0 0\n"), io_error);
    CHECK_THROWS_AS(parse("n 3\n0 3\n"), io_error);
    CHECK_THROWS_AS(parse("n 3\n-1 1\n"), io_error);
    CHECK_THROWS_AS(parse("n 3\n0 1\n0 1\n"), io_error);
    CHECK_THROWS_AS(parse("n 3\nx y\n"), io_error);

    CHECK_THROWS_WITH(parse("n 3\n0 1\n0 1\n"),
                      Catch::Matchers::ContainsSubstring("test:3"));
}

TEST_CASE("missing files raise io errors") {
    CHECK_THROWS_AS(load_edge_list("/nonexistent/path.edges"), io_error);
    CHECK_THROWS_AS(load_permutation("/nonexistent/path.perm"), io_error);
}

TEST_CASE("permutation round trip") {
    Rng rng(RngSeed{5});
    for (int trial = 0; trial < 10; ++trial) {
        Permutation pi = random_permutation(1 + static_cast<int>(rng.below(20)), rng);
        std::ostringstream out;
        write_permutation(out, pi);
        std::istringstream in(out.str());
        CHECK(read_permutation(in) == pi);
    }

    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_permutation(in, "test");
    };
    CHECK(parse("2 0 1\n") == Permutation(std::vector<int>{2, 0, 1}));
    CHECK_THROWS_AS(parse(""), io_error);
    CHECK_THROWS_AS(parse("0 x 1\n"), io_error);
    CHECK_THROWS_AS(parse("0 0 1\n"), io_error);
    CHECK_THROWS_AS(parse("0 3 1\n"), io_error);
}

TEST_CASE("doubles survive text round trips unchanged") {
    const double values[] = {0.0,       1.0,        0.1,     1.0 / 3.0, 1e-17,
                             6.25e-2,   -0.75,      1e300,   4.9e-324,  0.6999999999999,
                             std::log(1000.0), 0.47717082994305578};
    for (double x : values) {
        CHECK(parse_double(format_double(x), "test") == x);
    }
    CHECK_THROWS_AS(parse_double("", "test"), io_error);
    CHECK_THROWS_AS(parse_double("1.2x", "test"), io_error);
    CHECK_THROWS_AS(parse_double("abc", "test"), io_error);
}
