#include <catch2/catch_amalgamated.hpp>

#include "citenet/graph.hpp"
#include "citenet/random.hpp"
#include "support/builders.hpp"
#include "support/checks.hpp"
#include "support/oracles.hpp"

using citenet::Graph;
using citenet::NodeId;

TEST_CASE("node ids are dense and sequential", "[graph]") {
    Graph g;
    REQUIRE(g.add_node() == 0);
    REQUIRE(g.node_count() == 1);

    Graph g5(5);
    REQUIRE(g5.add_node() == 5);

    Graph g2;
    const NodeId a = g2.add_node();
    const NodeId b = g2.add_node();
    REQUIRE(a != b);
}

TEST_CASE("add_edge enforces the simple-graph rules", "[graph]") {
    Graph g(2);
    REQUIRE(g.add_edge(0, 1));
    REQUIRE(g.edge_count() == 1);
    REQUIRE(g.has_edge(1, 0));

    REQUIRE_FALSE(g.add_edge(0, 0));
    REQUIRE_FALSE(g.add_edge(0, 1));
    REQUIRE_FALSE(g.add_edge(1, 0));
    REQUIRE(g.edge_count() == 1);

    REQUIRE_THROWS_AS(g.add_edge(0, 7), std::out_of_range);
    REQUIRE_THROWS_AS(g.degree(-1), std::out_of_range);
}

TEST_CASE("neighbors and degree", "[graph]") {
    const Graph tri = builders::complete(3);
    for (NodeId i = 0; i < 3; ++i) REQUIRE(tri.degree(i) == 2);

    Graph isolated(1);
    REQUIRE(isolated.neighbors(0).empty());
    REQUIRE(isolated.degree(0) == 0);

    const Graph s = builders::star(3);
    REQUIRE(s.degree(0) == 3);
    REQUIRE(s.degree(1) == 1);
}

TEST_CASE("connected components partition the node set", "[graph]") {
    Graph g(4);
    g.add_edge(0, 1);
    g.add_edge(2, 3);
    const auto comps = g.connected_components();
    REQUIRE(comps.size() == 2);
    REQUIRE(comps[0].size() == 2);
    REQUIRE(comps[1].size() == 2);

    const Graph c = builders::cycle(6);
    REQUIRE(c.connected_components().size() == 1);
}

TEST_CASE("largest component of K3 plus an isolated node", "[graph]") {
    Graph g = builders::complete(3);
    g.add_node();
    // oracle: brute-force reachability
    const auto comps = oracle::components(g);
    std::size_t biggest = 0;
    for (const auto& comp : comps) biggest = std::max(biggest, comp.size());
    REQUIRE(biggest == 3);

    const Graph lc = g.largest_component();
    REQUIRE(lc.node_count() == 3);
    REQUIRE(lc.edge_count() == 3);
    REQUIRE(checks::simple_and_symmetric(lc));
}

TEST_CASE("largest_component on an empty graph is an error", "[graph]") {
    const Graph g;
    REQUIRE_THROWS_AS(g.largest_component(), std::domain_error);
}

TEST_CASE("random graphs keep the structural invariants", "[graph]") {
    citenet::Rng rng(20240611);
    for (int trial = 0; trial < 50; ++trial) {
        const NodeId n = 2 + static_cast<NodeId>(rng.uniform_index(12));
        const Graph g = builders::random_graph(rng, n, rng.uniform01());
        REQUIRE(checks::simple_and_symmetric(g));

        // components partition the node set and match the oracle
        const auto comps = g.connected_components();
        const auto expected = oracle::components(g);
        REQUIRE(comps == expected);
        std::size_t covered = 0;
        for (const auto& comp : comps) covered += comp.size();
        REQUIRE(covered == static_cast<std::size_t>(n));
    }
}

TEST_CASE("largest_component relabels but preserves structure", "[graph]") {
    citenet::Rng rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const Graph g = builders::random_graph(rng, 10, 0.15);
        const auto comps = oracle::components(g);
        const auto* best = &comps.front();
        for (const auto& comp : comps)
            if (comp.size() > best->size()) best = &comp;

        const Graph lc = g.largest_component();
        REQUIRE(lc.node_count() == static_cast<NodeId>(best->size()));
        REQUIRE(checks::simple_and_symmetric(lc));
        // edges survive the relabeling: old ids sorted ascending map to 0..k-1
        std::int64_t expected_edges = 0;
        for (std::size_t a = 0; a < best->size(); ++a)
            for (std::size_t b = a + 1; b < best->size(); ++b)
                if (g.has_edge((*best)[a], (*best)[b])) {
                    ++expected_edges;
                    REQUIRE(lc.has_edge(static_cast<NodeId>(a), static_cast<NodeId>(b)));
                }
        REQUIRE(lc.edge_count() == expected_edges);
    }
}
