#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace citenet {

using NodeId = std::int32_t;

/// Undirected simple graph over dense node ids 0..n-1.
///
/// Node ids are assigned in insertion order, so a uniform draw over
/// [0, node_count) is a uniform node choice. Adjacency lists keep
/// insertion order; edge membership is tracked separately so add_edge
/// and has_edge are O(1). Self-loops and parallel edges are rejected.
///
/// A graph is mutated by a single writer during construction and is
/// safe for concurrent reads afterwards.
class Graph {
public:
    Graph() = default;

    explicit Graph(NodeId n) {
        adj_.resize(static_cast<std::size_t>(n));
    }

    NodeId add_node() {
        adj_.emplace_back();
        return static_cast<NodeId>(adj_.size() - 1);
    }

    /// Inserts edge {i, j}. Returns false (and leaves the graph unchanged)
    /// if i == j or the edge already exists. Throws on unknown ids.
    bool add_edge(NodeId i, NodeId j) {
        check_node(i);
        check_node(j);
        if (i == j) return false;
        if (!edges_.insert(edge_key(i, j)).second) return false;
        adj_[static_cast<std::size_t>(i)].push_back(j);
        adj_[static_cast<std::size_t>(j)].push_back(i);
        ++edge_count_;
        return true;
    }

    bool has_edge(NodeId i, NodeId j) const {
        check_node(i);
        check_node(j);
        if (i == j) return false;
        return edges_.contains(edge_key(i, j));
    }

    const std::vector<NodeId>& neighbors(NodeId i) const {
        check_node(i);
        return adj_[static_cast<std::size_t>(i)];
    }

    int degree(NodeId i) const {
        check_node(i);
        return static_cast<int>(adj_[static_cast<std::size_t>(i)].size());
    }

    NodeId node_count() const { return static_cast<NodeId>(adj_.size()); }

    std::int64_t edge_count() const { return edge_count_; }

    void reserve(NodeId n) {
        adj_.reserve(static_cast<std::size_t>(n));
        edges_.reserve(static_cast<std::size_t>(n) * 4);
    }

    std::vector<int> degree_sequence() const {
        std::vector<int> deg(adj_.size());
        for (std::size_t i = 0; i < adj_.size(); ++i) deg[i] = static_cast<int>(adj_[i].size());
        return deg;
    }

    /// Components as node-id lists, each sorted ascending. Ordered by
    /// smallest contained id, so the result is deterministic.
    std::vector<std::vector<NodeId>> connected_components() const {
        std::vector<std::vector<NodeId>> comps;
        std::vector<char> seen(adj_.size(), 0);
        std::vector<NodeId> queue;
        for (NodeId s = 0; s < node_count(); ++s) {
            if (seen[static_cast<std::size_t>(s)]) continue;
            queue.clear();
            queue.push_back(s);
            seen[static_cast<std::size_t>(s)] = 1;
            for (std::size_t head = 0; head < queue.size(); ++head) {
                const NodeId u = queue[head];
                for (const NodeId v : adj_[static_cast<std::size_t>(u)]) {
                    if (!seen[static_cast<std::size_t>(v)]) {
                        seen[static_cast<std::size_t>(v)] = 1;
                        queue.push_back(v);
                    }
                }
            }
            std::sort(queue.begin(), queue.end());
            comps.push_back(queue);
        }
        return comps;
    }

    /// Induced subgraph of the largest component, ids relabeled to
    /// 0..k-1 in ascending old-id order. Ties broken towards the
    /// component containing the smallest node id.
    Graph largest_component() const {
        if (node_count() == 0) throw std::domain_error("largest_component: empty graph");
        const auto comps = connected_components();
        const auto* best = &comps.front();
        for (const auto& c : comps)
            if (c.size() > best->size()) best = &c;
        return induced_subgraph(*best);
    }

    /// Induced subgraph on `nodes` (must be unique, existing ids);
    /// new ids follow the order given in `nodes`.
    Graph induced_subgraph(const std::vector<NodeId>& nodes) const {
        Graph sub(static_cast<NodeId>(nodes.size()));
        std::vector<NodeId> remap(adj_.size(), -1);
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            check_node(nodes[k]);
            remap[static_cast<std::size_t>(nodes[k])] = static_cast<NodeId>(k);
        }
        for (const NodeId u : nodes) {
            const NodeId nu = remap[static_cast<std::size_t>(u)];
            for (const NodeId v : adj_[static_cast<std::size_t>(u)]) {
                const NodeId nv = remap[static_cast<std::size_t>(v)];
                if (nv >= 0 && nu < nv) sub.add_edge(nu, nv);
            }
        }
        return sub;
    }

private:
    static std::uint64_t edge_key(NodeId i, NodeId j) {
        const auto lo = static_cast<std::uint64_t>(std::min(i, j));
        const auto hi = static_cast<std::uint64_t>(std::max(i, j));
        return (hi << 32) | lo;
    }

    void check_node(NodeId i) const {
        if (i < 0 || static_cast<std::size_t>(i) >= adj_.size())
            throw std::out_of_range("unknown node id " + std::to_string(i));
    }

    std::vector<std::vector<NodeId>> adj_;
    std::unordered_set<std::uint64_t> edges_;
    std::int64_t edge_count_ = 0;
};

}  // namespace citenet
