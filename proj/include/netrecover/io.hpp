#pragma once

// Text formats for graphs and permutations.
//
// Edge list: first line "n <count>", then one "u v" line per edge with
// 0 <= u < v < n. Duplicate edges are rejected.
// Permutation: a single line of n space-separated images.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "netrecover/errors.hpp"
#include "netrecover/graph.hpp"

namespace netrecover {

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text, const std::string& origin) {
    double x = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, x);
    if (res.ec != std::errc() || res.ptr != last)
        throw io_error(origin + ": malformed number \"" + text + "\"");
    return x;
}

inline Graph read_edge_list(std::istream& in, const std::string& origin = "<stream>") {
    std::string line;
    if (!std::getline(in, line))
        throw io_error(origin + ": empty edge-list input");
    std::istringstream header(line);
    std::string tag;
    int n = -1;
    if (!(header >> tag >> n) || tag != "n" || n < 0)
        throw io_error(origin + ": expected header \"n <count>\", got \"" + line + "\"");
    Graph g(n);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream row(line);
        int u, v;
        if (!(row >> u)) {
            row.clear();
            std::string junk;
            if (row >> junk)
                throw io_error(origin + ":" + std::to_string(lineno) + ": non-integer token \"" +
                               junk + "\"");
            continue; // blank line
        }
        if (!(row >> v))
            throw io_error(origin + ":" + std::to_string(lineno) + ": expected \"u v\"");
        std::string rest;
        if (row >> rest)
            throw io_error(origin + ":" + std::to_string(lineno) + ": trailing token \"" +
                           rest + "\"");
        if (u < 0 || v < 0 || u >= n || v >= n || u >= v)
            throw io_error(origin + ":" + std::to_string(lineno) + ": edge (" +
                           std::to_string(u) + "," + std::to_string(v) +
                           ") violates 0 <= u < v < n");
        if (g.has_edge(u, v))
            throw io_error(origin + ":" + std::to_string(lineno) + ": duplicate edge (" +
                           std::to_string(u) + "," + std::to_string(v) + ")");
        g.set_edge(u, v, true);
    }
    return g;
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
    out << "n " << g.node_count() << "\n";
    g.for_each_edge([&out](int u, int v) { out << u << " " << v << "\n"; });
}

inline Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error(path + ": cannot open for reading");
    return read_edge_list(in, path);
}

inline void save_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw io_error(path + ": cannot open for writing");
    write_edge_list(out, g);
    if (!out) throw io_error(path + ": write failed");
}

inline Permutation read_permutation(std::istream& in, const std::string& origin = "<stream>") {
    std::string line;
    if (!std::getline(in, line))
        throw io_error(origin + ": empty permutation input");
    std::istringstream row(line);
    std::vector<int> images;
    int x;
    while (row >> x) images.push_back(x);
    if (!row.eof())
        throw io_error(origin + ": non-integer token in permutation line");
    try {
        return Permutation(std::move(images));
    } catch (const std::invalid_argument& e) {
        throw io_error(origin + ": " + e.what());
    }
}

inline void write_permutation(std::ostream& out, const Permutation& pi) {
    for (int u = 0; u < pi.size(); ++u) {
        if (u) out << " ";
        out << pi(u);
    }
    out << "\n";
}

inline Permutation load_permutation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error(path + ": cannot open for reading");
    return read_permutation(in, path);
}

inline void save_permutation(const std::string& path, const Permutation& pi) {
    std::ofstream out(path);
    if (!out) throw io_error(path + ": cannot open for writing");
    write_permutation(out, pi);
    if (!out) throw io_error(path + ": write failed");
}

} // namespace netrecover
