#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "citenet/graph.hpp"

namespace citenet {

/// Counters for input lines dropped while reading an edge list.
struct EdgeListStats {
    std::int64_t duplicate_edges = 0;
    std::int64_t self_loops = 0;

    std::int64_t dropped() const { return duplicate_edges + self_loops; }
};

struct LoadResult {
    Graph graph;
    EdgeListStats stats;
};

namespace detail {

inline bool parse_id(std::string_view tok, std::int64_t& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

}  // namespace detail

/// Reads a "u v" edge list. '#'-prefixed and blank lines are skipped.
/// Raw ids may be arbitrary integers; they are compacted to 0..n-1 in
/// first-appearance order. Self-loop and duplicate lines are dropped
/// and counted. A malformed line raises with its line number.
inline LoadResult read_edge_list(std::istream& in) {
    LoadResult result;
    std::unordered_map<std::int64_t, NodeId> id_map;
    std::string line;
    std::int64_t line_no = 0;

    const auto intern = [&](std::int64_t raw) {
        const auto it = id_map.find(raw);
        if (it != id_map.end()) return it->second;
        const NodeId fresh = result.graph.add_node();
        id_map.emplace(raw, fresh);
        return fresh;
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv(line);
        const auto start = sv.find_first_not_of(" \t\r");
        if (start == std::string_view::npos) continue;
        if (sv[start] == '#') continue;

        std::istringstream fields{std::string(sv.substr(start))};
        std::string a, b, extra;
        fields >> a >> b;
        if (b.empty() || (fields >> extra))
            throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                        ": expected exactly two node ids");
        std::int64_t u = 0, v = 0;
        if (!detail::parse_id(a, u) || !detail::parse_id(b, v))
            throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                        ": non-integer node id");

        if (u == v) {
            intern(u);
            ++result.stats.self_loops;
            continue;
        }
        const NodeId ni = intern(u);
        const NodeId nj = intern(v);
        if (!result.graph.add_edge(ni, nj)) ++result.stats.duplicate_edges;
    }
    return result;
}

inline LoadResult read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list file: " + path);
    return read_edge_list(in);
}

/// Writes each edge once as "u v" with u < v, ascending. Header comment
/// lines, if any, are emitted first with a '#' prefix.
inline void write_edge_list(std::ostream& out, const Graph& g,
                            const std::vector<std::string>& header_comments = {}) {
    for (const auto& c : header_comments) out << "# " << c << '\n';
    for (NodeId u = 0; u < g.node_count(); ++u) {
        std::vector<NodeId> nbrs(g.neighbors(u).begin(), g.neighbors(u).end());
        std::sort(nbrs.begin(), nbrs.end());
        for (const NodeId v : nbrs)
            if (u < v) out << u << ' ' << v << '\n';
    }
}

inline void write_edge_list_file(const std::string& path, const Graph& g,
                                 const std::vector<std::string>& header_comments = {}) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_edge_list(out, g, header_comments);
}

}  // namespace citenet
