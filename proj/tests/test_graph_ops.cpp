#include <gtest/gtest.h>

#include "nbperc/generators.hpp"
#include "nbperc/graph_ops.hpp"
#include "oracles.hpp"

using namespace nbperc;
using nbperc::oracle::make_graph;

TEST(Backbone, PathIsEmpty) {
    auto bb = backbone(generate(FamilySpec::path(5)));
    EXPECT_EQ(bb.graph.order(), 0u);
}

TEST(Backbone, PendantStripped) {
    auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
    auto bb = backbone(g);
    EXPECT_EQ(bb.graph, generate(FamilySpec::cycle(3)));
    EXPECT_EQ(bb.original, (std::vector<Vertex>{0, 1, 2}));
}

TEST(Backbone, CycleUnchanged) {
    auto c = generate(FamilySpec::cycle(8));
    EXPECT_EQ(backbone(c).graph, c);
}

TEST(Backbone, KeepsPathBetweenCycles) {
    auto g = oracle::two_triangles(4);
    auto bb = backbone(g);
    EXPECT_EQ(bb.graph.order(), g.order());
    auto decorated = oracle::decorated_cycle(5, 2, 2);
    EXPECT_EQ(backbone(decorated).graph, generate(FamilySpec::cycle(5)));
}

TEST(Backbone, IdempotentAndEmptyExactlyForForests) {
    auto all = oracle::cyclic_corpus();
    for (auto& f : oracle::forest_corpus()) all.push_back(f);
    all.push_back({"mixed", make_graph(7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 6}})});
    for (const auto& [name, g] : all) {
        auto once = backbone(g).graph;
        EXPECT_EQ(backbone(once).graph, once) << name;
        EXPECT_EQ(once.order() == 0, is_forest(g)) << name;
        if (once.order() > 0) {
            EXPECT_GE(once.min_degree(), 2u) << name;
        }
    }
}

TEST(FindBridges, Examples) {
    EXPECT_EQ(find_bridges(generate(FamilySpec::path(4))).size(), 3u);
    EXPECT_TRUE(find_bridges(generate(FamilySpec::cycle(5))).empty());
    auto joined = make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
    EXPECT_EQ(find_bridges(joined), (std::vector<Edge>{{2, 3}}));
}

TEST(FindBridges, AgreesWithBruteForce) {
    std::vector<Graph> graphs;
    for (const auto& ng : oracle::cyclic_corpus()) graphs.push_back(ng.graph);
    for (const auto& ng : oracle::forest_corpus())
        if (is_connected(ng.graph)) graphs.push_back(ng.graph);
    for (std::uint64_t s = 1; s <= 20; ++s)
        graphs.push_back(oracle::giant(generate(FamilySpec::binomial_random(30, 0.08, 100 + s))));
    for (const auto& g : graphs) EXPECT_EQ(find_bridges(g), oracle::brute_force_bridges(g));
}

TEST(FindBridges, DisconnectedInputNamesComponents) {
    auto g = make_graph(5, {{0, 1}, {2, 3}, {3, 4}});
    try {
        find_bridges(g);
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("2 components"), std::string::npos) << e.what();
    }
}

TEST(ScuTruncation, CycleUnrollsToPath) {
    auto t = scu_truncation(generate(FamilySpec::cycle(4)), Edge(0, 3), 3);
    EXPECT_EQ(t.order(), 12u);
    EXPECT_EQ(t.size(), 11u);
    EXPECT_TRUE(is_connected(t));
    EXPECT_TRUE(is_forest(t));
    EXPECT_EQ(t.max_degree(), 2u);
}

TEST(ScuTruncation, TriangleTwoCopies) {
    auto t = scu_truncation(generate(FamilySpec::cycle(3)), Edge(0, 1), 2);
    EXPECT_EQ(t.order(), 6u);
    EXPECT_EQ(t.size(), 5u);
    EXPECT_TRUE(is_forest(t));
    EXPECT_TRUE(is_connected(t));
    // source 1 of copy 0 links to sink 0 of copy 1
    EXPECT_TRUE(t.has_edge(1, 3));
}

TEST(ScuTruncation, SingleCopyDeletesEdge) {
    auto g = oracle::petersen();
    auto t = scu_truncation(g, Edge(0, 1), 1);
    EXPECT_EQ(t.order(), g.order());
    EXPECT_EQ(t.size(), g.size() - 1);
    EXPECT_FALSE(t.has_edge(0, 1));
}

TEST(ScuTruncation, CountsMatchFormula) {
    for (const auto& [name, g] : oracle::cyclic_corpus()) {
        auto bridges = find_bridges(g);
        for (const auto& b : g.edges()) {
            if (std::binary_search(bridges.begin(), bridges.end(), b)) continue;
            for (std::size_t k : {1, 2, 5}) {
                auto t = scu_truncation(g, b, k);
                EXPECT_EQ(t.order(), k * g.order()) << name;
                EXPECT_EQ(t.size(), k * g.size() - 1) << name;
                EXPECT_TRUE(is_connected(t)) << name;
            }
            break;
        }
    }
}

TEST(ScuTruncation, Errors) {
    auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
    EXPECT_THROW(scu_truncation(g, Edge(2, 3), 2), InputError);
    EXPECT_THROW(scu_truncation(g, Edge(0, 3), 2), InputError);
    EXPECT_THROW(scu_truncation(g, Edge(0, 1), 0), InputError);
}

TEST(ScuTruncation, SharedVertexTrianglesSpectrumBelowOriginal) {
    // bowtie: two triangles sharing vertex 0
    auto g = make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
    auto t = scu_truncation(g, Edge(1, 2), 2);
    EXPECT_EQ(t.order(), 10u);
    EXPECT_LE(oracle::dense_adjacency_radius(t), oracle::dense_adjacency_radius(g) + 1e-12);
}
