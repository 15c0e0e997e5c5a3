#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "citenet/graph.hpp"
#include "citenet/random.hpp"

namespace citenet {

/// Node -> community assignment with dense community ids.
struct Partition {
    std::vector<int> assignment;

    int community_count() const {
        int hi = -1;
        for (const int c : assignment) hi = std::max(hi, c);
        return hi + 1;
    }
};

inline Partition single_community(NodeId n) {
    return Partition{std::vector<int>(static_cast<std::size_t>(n), 0)};
}

inline Partition singleton_partition(NodeId n) {
    Partition part;
    part.assignment.resize(static_cast<std::size_t>(n));
    std::iota(part.assignment.begin(), part.assignment.end(), 0);
    return part;
}

/// Newman-Girvan modularity: Q = sum_c [ m_c/m - (d_c/(2m))^2 ], where
/// m_c counts intra-community edges and d_c sums community degrees.
inline double modularity(const Graph& g, const Partition& part) {
    if (g.edge_count() == 0) throw std::domain_error("modularity: graph has no edges");
    if (part.assignment.size() != static_cast<std::size_t>(g.node_count()))
        throw std::invalid_argument("modularity: partition size does not match graph");
    const int ncomm = part.community_count();
    std::vector<std::int64_t> intra(static_cast<std::size_t>(ncomm), 0);
    std::vector<std::int64_t> deg_sum(static_cast<std::size_t>(ncomm), 0);
    for (NodeId i = 0; i < g.node_count(); ++i) {
        const int ci = part.assignment[static_cast<std::size_t>(i)];
        if (ci < 0) throw std::invalid_argument("modularity: negative community id");
        deg_sum[static_cast<std::size_t>(ci)] += g.degree(i);
        for (const NodeId j : g.neighbors(i)) {
            if (j < i) continue;
            if (ci == part.assignment[static_cast<std::size_t>(j)])
                ++intra[static_cast<std::size_t>(ci)];
        }
    }
    const double m = static_cast<double>(g.edge_count());
    double q = 0.0;
    for (int c = 0; c < ncomm; ++c) {
        const double frac = static_cast<double>(intra[static_cast<std::size_t>(c)]) / m;
        const double dfrac = static_cast<double>(deg_sum[static_cast<std::size_t>(c)]) / (2.0 * m);
        q += frac - dfrac * dfrac;
    }
    return q;
}

namespace detail {

// Weighted multigraph used between aggregation levels. Each off-diagonal
// edge is stored in both endpoint lists; self-loops are kept separately
// and count twice towards the weighted degree.
struct LevelGraph {
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<double> self_loop;
    std::vector<double> wdeg;
    double total_weight = 0.0;

    int size() const { return static_cast<int>(adj.size()); }
};

inline LevelGraph level_from_graph(const Graph& g) {
    LevelGraph lg;
    const std::size_t n = static_cast<std::size_t>(g.node_count());
    lg.adj.resize(n);
    lg.self_loop.assign(n, 0.0);
    lg.wdeg.assign(n, 0.0);
    for (NodeId i = 0; i < g.node_count(); ++i) {
        lg.adj[static_cast<std::size_t>(i)].reserve(g.neighbors(i).size());
        for (const NodeId j : g.neighbors(i))
            lg.adj[static_cast<std::size_t>(i)].push_back({j, 1.0});
        lg.wdeg[static_cast<std::size_t>(i)] = static_cast<double>(g.degree(i));
    }
    lg.total_weight = static_cast<double>(g.edge_count());
    return lg;
}

// One round of local moving; returns true if any node changed community.
inline bool local_moving(const LevelGraph& lg, std::vector<int>& comm, Rng& rng) {
    const int n = lg.size();
    std::vector<double> comm_weight(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        comm_weight[static_cast<std::size_t>(comm[static_cast<std::size_t>(i)])] +=
            lg.wdeg[static_cast<std::size_t>(i)];

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);

    std::vector<int> seen_comms;
    std::vector<double> w_to_comm(static_cast<std::size_t>(n), 0.0);
    const double two_m = 2.0 * lg.total_weight;
    constexpr double kGainEps = 1e-12;

    bool improved = false;
    for (;;) {
        rng.shuffle(order);
        int moves = 0;
        for (const int i : order) {
            const int old_comm = comm[static_cast<std::size_t>(i)];
            seen_comms.clear();
            for (const auto& [j, w] : lg.adj[static_cast<std::size_t>(i)]) {
                const int cj = comm[static_cast<std::size_t>(j)];
                // weights are strictly positive, so zero means unseen
                if (w_to_comm[static_cast<std::size_t>(cj)] == 0.0) seen_comms.push_back(cj);
                w_to_comm[static_cast<std::size_t>(cj)] += w;
            }
            comm_weight[static_cast<std::size_t>(old_comm)] -= lg.wdeg[static_cast<std::size_t>(i)];

            // score against the detached node; ties keep the current community
            const double ki = lg.wdeg[static_cast<std::size_t>(i)];
            double best_score = w_to_comm[static_cast<std::size_t>(old_comm)] -
                                comm_weight[static_cast<std::size_t>(old_comm)] * ki / two_m;
            int best_comm = old_comm;
            for (const int c : seen_comms) {
                if (c == old_comm) continue;
                const double score = w_to_comm[static_cast<std::size_t>(c)] -
                                     comm_weight[static_cast<std::size_t>(c)] * ki / two_m;
                if (score > best_score + kGainEps) {
                    best_score = score;
                    best_comm = c;
                }
            }

            comm[static_cast<std::size_t>(i)] = best_comm;
            comm_weight[static_cast<std::size_t>(best_comm)] += ki;
            if (best_comm != old_comm) ++moves;

            for (const int c : seen_comms) w_to_comm[static_cast<std::size_t>(c)] = 0.0;
            w_to_comm[static_cast<std::size_t>(old_comm)] = 0.0;
        }
        if (moves == 0) break;
        improved = true;
    }
    return improved;
}

inline int renumber_dense(std::vector<int>& comm) {
    std::unordered_map<int, int> remap;
    remap.reserve(comm.size());
    int next = 0;
    for (int& c : comm) {
        const auto [it, fresh] = remap.try_emplace(c, next);
        if (fresh) ++next;
        c = it->second;
    }
    return next;
}

inline LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& comm, int ncomm) {
    LevelGraph agg;
    agg.adj.resize(static_cast<std::size_t>(ncomm));
    agg.self_loop.assign(static_cast<std::size_t>(ncomm), 0.0);
    agg.wdeg.assign(static_cast<std::size_t>(ncomm), 0.0);
    agg.total_weight = lg.total_weight;

    std::unordered_map<std::uint64_t, double> between;
    for (int i = 0; i < lg.size(); ++i) {
        const int ci = comm[static_cast<std::size_t>(i)];
        agg.self_loop[static_cast<std::size_t>(ci)] += lg.self_loop[static_cast<std::size_t>(i)];
        for (const auto& [j, w] : lg.adj[static_cast<std::size_t>(i)]) {
            if (j < i) continue;
            const int cj = comm[static_cast<std::size_t>(j)];
            if (ci == cj) {
                agg.self_loop[static_cast<std::size_t>(ci)] += w;
            } else {
                const std::uint64_t key =
                    (static_cast<std::uint64_t>(std::max(ci, cj)) << 32) |
                    static_cast<std::uint64_t>(std::min(ci, cj));
                between[key] += w;
            }
        }
    }
    for (const auto& [key, w] : between) {
        const int a = static_cast<int>(key >> 32);
        const int b = static_cast<int>(key & 0xffffffffull);
        agg.adj[static_cast<std::size_t>(a)].push_back({b, w});
        agg.adj[static_cast<std::size_t>(b)].push_back({a, w});
    }
    for (int c = 0; c < ncomm; ++c) {
        double d = 2.0 * agg.self_loop[static_cast<std::size_t>(c)];
        for (const auto& [j, w] : agg.adj[static_cast<std::size_t>(c)]) d += w;
        agg.wdeg[static_cast<std::size_t>(c)] = d;
    }
    // deterministic neighbor order regardless of hash-map iteration
    for (auto& nbrs : agg.adj) std::sort(nbrs.begin(), nbrs.end());
    return agg;
}

}  // namespace detail

/// Multi-stage greedy modularity optimization: local node moves until no
/// gain, aggregate communities into super-nodes, repeat. Node visit order
/// is shuffled per pass with the supplied rng, so a fixed seed makes the
/// result reproducible.
inline Partition louvain(const Graph& g, Rng& rng) {
    if (g.edge_count() == 0) throw std::domain_error("louvain: graph has no edges");

    detail::LevelGraph lg = detail::level_from_graph(g);
    std::vector<int> node_to_comm(static_cast<std::size_t>(g.node_count()));
    std::iota(node_to_comm.begin(), node_to_comm.end(), 0);

    for (;;) {
        std::vector<int> comm(static_cast<std::size_t>(lg.size()));
        std::iota(comm.begin(), comm.end(), 0);
        const bool moved = detail::local_moving(lg, comm, rng);
        if (!moved) break;
        const int ncomm = detail::renumber_dense(comm);
        for (int& c : node_to_comm) c = comm[static_cast<std::size_t>(c)];
        if (ncomm == lg.size()) break;
        lg = detail::aggregate(lg, comm, ncomm);
    }

    Partition part{std::move(node_to_comm)};
    detail::renumber_dense(part.assignment);
    return part;
}

inline Partition louvain(const Graph& g, std::uint64_t seed) {
    Rng rng(seed);
    return louvain(g, rng);
}

}  // namespace citenet
