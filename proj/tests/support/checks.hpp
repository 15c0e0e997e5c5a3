// Structural invariant checks used by several suites.
#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "citenet/graph.hpp"

namespace checks {

using citenet::Graph;
using citenet::NodeId;

// Full adjacency scan: no self-loops, no duplicate entries, symmetric
// lists, and degree sum equal to twice the edge count.
inline bool simple_and_symmetric(const Graph& g) {
    std::int64_t degree_sum = 0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
        const auto& nbrs = g.neighbors(i);
        degree_sum += static_cast<std::int64_t>(nbrs.size());
        std::set<NodeId> uniq(nbrs.begin(), nbrs.end());
        if (uniq.size() != nbrs.size()) return false;
        if (uniq.contains(i)) return false;
        for (const NodeId j : nbrs) {
            const auto& back = g.neighbors(j);
            if (std::find(back.begin(), back.end(), i) == back.end()) return false;
        }
    }
    return degree_sum == 2 * g.edge_count();
}

inline bool is_connected(const Graph& g) {
    if (g.node_count() == 0) return false;
    std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<NodeId> stack = {0};
    seen[0] = 1;
    NodeId count = 0;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        ++count;
        for (const NodeId v : g.neighbors(u))
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                stack.push_back(v);
            }
    }
    return count == g.node_count();
}

inline std::vector<std::pair<NodeId, NodeId>> edge_set(const Graph& g) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId i = 0; i < g.node_count(); ++i)
        for (const NodeId j : g.neighbors(i))
            if (i < j) edges.push_back({i, j});
    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace checks
