#pragma once

#include <cstdint>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "citenet/graph.hpp"
#include "citenet/random.hpp"

namespace citenet {

enum class ModelKind { FF, BTF, CPY, CIT };

inline const char* model_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::FF: return "ff";
        case ModelKind::BTF: return "btf";
        case ModelKind::CPY: return "cpy";
        case ModelKind::CIT: return "cit";
    }
    return "?";
}

inline ModelKind parse_model(const std::string& name) {
    if (name == "ff") return ModelKind::FF;
    if (name == "btf") return ModelKind::BTF;
    if (name == "cpy") return ModelKind::CPY;
    if (name == "cit") return ModelKind::CIT;
    throw std::invalid_argument("unknown model '" + name + "' (expected ff, btf, cpy or cit)");
}

/// Full recipe for one reproducible realization.
struct ModelParams {
    ModelKind kind = ModelKind::CIT;
    NodeId n = 0;          // target size of the largest component
    double p = 0.0;        // burning probability, [0, 1/2)
    double q = 0.0;        // linking probability, [0, 1); unused by FF
    std::uint64_t seed = 0;

    void validate() const {
        if (n < 2) throw std::invalid_argument("model: n must be >= 2");
        if (!(p >= 0.0 && p < 0.5)) throw std::invalid_argument("model: p must lie in [0, 0.5)");
        if (!(q >= 0.0 && q < 1.0)) throw std::invalid_argument("model: q must lie in [0, 1)");
    }

    std::string describe() const {
        std::ostringstream os;
        os << "model=" << model_name(kind) << " n=" << n << " p=" << p << " q=" << q
           << " seed=" << seed;
        return os.str();
    }
};

/// Per-insertion bookkeeping. `burned` and `linked` may intersect
/// arbitrarily; a node enters each at most once per episode.
struct EpisodeState {
    std::unordered_set<NodeId> burned;
    std::unordered_set<NodeId> linked;
    std::deque<NodeId> frontier;  // BFS queue of ambassadors
};

struct EpisodeResult {
    int links_formed = 0;
    int nodes_burned = 0;      // ambassadors visited; the new node is not counted
    NodeId ambassador = -1;    // initial ambassador
    int dropped_links = 0;     // add_edge refusals; expected to stay 0
};

/// Running counters over one growth run.
struct GenerationLog {
    std::int64_t episodes = 0;
    std::int64_t isolated_discards = 0;      // episodes that formed zero links
    std::int64_t dropped_duplicate_edges = 0;
    std::int64_t burned_total = 0;

    double burned_per_episode() const {
        return episodes > 0 ? static_cast<double>(burned_total) / static_cast<double>(episodes)
                            : 0.0;
    }
};

namespace detail {

// Uniform ambassador over the nodes that take part in the network, i.e.
// nodes with at least one link. Isolated leftovers of failed episodes can
// never be reached by any future link, so admitting them as ambassadors
// would starve the growth: the isolated pool then grows without bound and
// the per-episode statistics drift away from their large-n limits. While
// the graph has no edges at all (the seed node of a fresh burning run)
// the draw falls back to every node.
inline NodeId choose_ambassador(const Graph& g, Rng& rng) {
    const auto n = static_cast<std::uint64_t>(g.node_count());
    if (g.edge_count() == 0) return static_cast<NodeId>(rng.uniform_index(n));
    for (;;) {
        const NodeId a = static_cast<NodeId>(rng.uniform_index(n));
        if (g.degree(a) > 0) return a;
    }
}

// Unburned/unlinked neighbors of `a`, excluding the node being inserted.
inline std::vector<NodeId> episode_candidates(const Graph& g, NodeId a, NodeId inserting,
                                              const std::unordered_set<NodeId>& taken) {
    std::vector<NodeId> out;
    const auto& nbrs = g.neighbors(a);
    out.reserve(nbrs.size());
    for (const NodeId v : nbrs)
        if (v != inserting && !taken.contains(v)) out.push_back(v);
    return out;
}

}  // namespace detail

/// One burn-and-link episode. The new node picks a uniform ambassador and
/// burns it; every burned node receives a link with probability
/// `link_prob` (1 collapses to plain burning-with-links, a fixed
/// probability q gives the thinned variant). From each burned node the
/// fire spreads to a geometric number of its unburned neighbors, which
/// join the ambassador frontier.
inline EpisodeResult insert_node_ff(Graph& g, double p, Rng& rng, double link_prob = 1.0) {
    if (g.node_count() == 0) throw std::invalid_argument("insert_node_ff: graph is empty");
    const double burn_mean = p / (1.0 - p);
    const NodeId ambassador = detail::choose_ambassador(g, rng);
    const NodeId node = g.add_node();

    EpisodeState st;
    EpisodeResult res;
    res.ambassador = ambassador;

    const auto burn = [&](NodeId v) {
        st.burned.insert(v);
        if (rng.bernoulli(link_prob)) {
            if (g.add_edge(node, v))
                ++res.links_formed;
            else
                ++res.dropped_links;
        }
        st.frontier.push_back(v);
    };

    burn(ambassador);
    while (!st.frontier.empty()) {
        const NodeId a = st.frontier.front();
        st.frontier.pop_front();
        const std::int64_t fanout = rng.geometric_count(burn_mean);
        if (fanout <= 0) continue;
        auto chosen = rng.sample_subset(detail::episode_candidates(g, a, node, st.burned),
                                        static_cast<std::size_t>(fanout));
        for (const NodeId v : chosen) burn(v);
    }
    res.nodes_burned = static_cast<int>(st.burned.size());
    return res;
}

/// One copying episode. Burning traverses the network exactly as in
/// insert_node_ff but forms no links by itself; per popped ambassador the
/// new node independently cites a geometric number of that ambassador's
/// not-yet-linked neighbors. With `link_ambassador` the ambassador itself
/// is cited as well (copy variant); without it the ambassador is never
/// linked directly, though it may still be cited as a neighbor of another
/// ambassador.
inline EpisodeResult insert_node_cit(Graph& g, double p, double q, Rng& rng,
                                     bool link_ambassador = false) {
    if (g.node_count() == 0) throw std::invalid_argument("insert_node_cit: graph is empty");
    const double burn_mean = p / (1.0 - p);
    const double link_mean = q / (1.0 - q);
    const NodeId ambassador = detail::choose_ambassador(g, rng);
    const NodeId node = g.add_node();

    EpisodeState st;
    EpisodeResult res;
    res.ambassador = ambassador;

    const auto link_to = [&](NodeId v) {
        st.linked.insert(v);
        if (g.add_edge(node, v))
            ++res.links_formed;
        else
            ++res.dropped_links;
    };

    st.burned.insert(ambassador);
    st.frontier.push_back(ambassador);
    while (!st.frontier.empty()) {
        const NodeId a = st.frontier.front();
        st.frontier.pop_front();

        const std::int64_t burn_fanout = rng.geometric_count(burn_mean);
        if (burn_fanout > 0) {
            auto next = rng.sample_subset(detail::episode_candidates(g, a, node, st.burned),
                                          static_cast<std::size_t>(burn_fanout));
            for (const NodeId v : next) {
                st.burned.insert(v);
                st.frontier.push_back(v);
            }
        }

        const std::int64_t link_fanout = rng.geometric_count(link_mean);
        if (link_fanout > 0) {
            auto cited = rng.sample_subset(detail::episode_candidates(g, a, node, st.linked),
                                           static_cast<std::size_t>(link_fanout));
            for (const NodeId v : cited) link_to(v);
        }

        if (link_ambassador && !st.linked.contains(a)) link_to(a);
    }
    res.nodes_burned = static_cast<int>(st.burned.size());
    return res;
}

inline EpisodeResult insert_node(Graph& g, const ModelParams& params, Rng& rng) {
    switch (params.kind) {
        case ModelKind::FF: return insert_node_ff(g, params.p, rng, 1.0);
        case ModelKind::BTF: return insert_node_ff(g, params.p, rng, params.q);
        case ModelKind::CPY: return insert_node_cit(g, params.p, params.q, rng, true);
        case ModelKind::CIT: return insert_node_cit(g, params.p, params.q, rng, false);
    }
    throw std::logic_error("insert_node: bad model kind");
}

namespace detail {

// Union-find over episode components. Every link of one episode lands in
// the initial ambassador's component, so one union per episode tracks
// component sizes exactly.
class ComponentTracker {
public:
    void add_node() {
        parent_.push_back(static_cast<NodeId>(parent_.size()));
        size_.push_back(1);
    }

    NodeId find(NodeId v) {
        while (parent_[static_cast<std::size_t>(v)] != v) {
            parent_[static_cast<std::size_t>(v)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
            v = parent_[static_cast<std::size_t>(v)];
        }
        return v;
    }

    NodeId unite(NodeId a, NodeId b) {
        NodeId ra = find(a), rb = find(b);
        if (ra == rb) return size_[static_cast<std::size_t>(ra)];
        if (size_[static_cast<std::size_t>(ra)] < size_[static_cast<std::size_t>(rb)])
            std::swap(ra, rb);
        parent_[static_cast<std::size_t>(rb)] = ra;
        size_[static_cast<std::size_t>(ra)] += size_[static_cast<std::size_t>(rb)];
        return size_[static_cast<std::size_t>(ra)];
    }

private:
    std::vector<NodeId> parent_;
    std::vector<NodeId> size_;
};

}  // namespace detail

/// Grows a network until the largest component holds exactly params.n
/// nodes and returns that component (ids relabeled). Episodes that form
/// no links leave isolated nodes behind; component extraction removes
/// them. Gives up after 100 * n episodes.
inline Graph grow_to_component(const ModelParams& params, GenerationLog* log_out = nullptr) {
    params.validate();
    Rng rng(params.seed);
    Graph g;
    detail::ComponentTracker comps;
    NodeId largest = 1;

    if (params.kind == ModelKind::FF || params.kind == ModelKind::BTF) {
        g.add_node();  // starts from a single node
        comps.add_node();
    } else {
        g.add_node();  // starts from a single link
        g.add_node();
        g.add_edge(0, 1);
        comps.add_node();
        comps.add_node();
        largest = comps.unite(0, 1);
    }
    g.reserve(params.n);

    GenerationLog log;
    const std::int64_t budget = 100LL * static_cast<std::int64_t>(params.n);
    while (largest < params.n) {
        if (log.episodes >= budget)
            throw std::runtime_error(
                "growth stalled after " + std::to_string(log.episodes) +
                " episodes without reaching the target component size (" + params.describe() + ")");
        const EpisodeResult ep = insert_node(g, params, rng);
        comps.add_node();
        ++log.episodes;
        log.burned_total += ep.nodes_burned;
        log.dropped_duplicate_edges += ep.dropped_links;
        if (ep.links_formed == 0) {
            ++log.isolated_discards;
        } else {
            const NodeId sz = comps.unite(g.node_count() - 1, ep.ambassador);
            if (sz > largest) largest = sz;
        }
    }

    if (log_out != nullptr) *log_out = log;
    return g.largest_component();
}

/// Grow one realization and report its log.
inline std::pair<Graph, GenerationLog> generate(const ModelParams& params) {
    GenerationLog log;
    Graph g = grow_to_component(params, &log);
    return {std::move(g), log};
}

}  // namespace citenet
