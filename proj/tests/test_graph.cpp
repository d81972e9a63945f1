#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "nbperc/generators.hpp"
#include "nbperc/graph.hpp"
#include "oracles.hpp"

using namespace nbperc;

TEST(ParseEdgeList, Triangle) {
    auto parsed = parse_edge_list("0 1\n1 2\n2 0");
    EXPECT_EQ(parsed.graph.order(), 3u);
    EXPECT_EQ(parsed.graph.size(), 3u);
    EXPECT_EQ(parsed.duplicates, 0u);
}

TEST(ParseEdgeList, DuplicatesCollapsed) {
    auto parsed = parse_edge_list("0 1\n0 1");
    EXPECT_EQ(parsed.graph.order(), 2u);
    EXPECT_EQ(parsed.graph.size(), 1u);
    EXPECT_EQ(parsed.duplicates, 1u);
    // reversed orientation is the same undirected edge
    EXPECT_EQ(parse_edge_list("3 4\n4 3\n").duplicates, 1u);
}

TEST(ParseEdgeList, SelfLoopRejected) {
    EXPECT_THROW(parse_edge_list("0 0"), InputError);
}

TEST(ParseEdgeList, BadTokenReportsLine) {
    try {
        parse_edge_list("0 1\n# comment\n1 x\n");
        FAIL() << "expected a parse error";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_edge_list("0 1 2\n"), InputError);
    EXPECT_THROW(parse_edge_list("-1 2\n"), InputError);
}

TEST(ParseEdgeList, CommentsAndBlanks) {
    auto parsed = parse_edge_list("# header\n\n0 1   # trailing\n  1 2\n\n");
    EXPECT_EQ(parsed.graph.size(), 2u);
}

TEST(ParseEdgeList, SparseIdsCompacted) {
    auto parsed = parse_edge_list("10 20\n20 35\n");
    EXPECT_EQ(parsed.graph.order(), 3u);
    EXPECT_EQ(parsed.labels, (std::vector<std::uint64_t>{10, 20, 35}));
    EXPECT_TRUE(parsed.graph.has_edge(0, 1));
    EXPECT_TRUE(parsed.graph.has_edge(1, 2));
}

TEST(ParseEdgeList, NodesHeaderKeepsIsolatedVertices) {
    auto parsed = parse_edge_list("# nodes 6\n0 1\n4 5\n");
    EXPECT_EQ(parsed.graph.order(), 6u);
    EXPECT_EQ(parsed.graph.degree(2), 0u);
    EXPECT_THROW(parse_edge_list("# nodes 3\n0 5\n"), InputError);
}

TEST(ParseEdgeList, WriteReadRoundTrip) {
    auto g = generate(FamilySpec::binomial_random(50, 0.05, 11));
    std::ostringstream os;
    write_edge_list(os, g);
    auto back = parse_edge_list(os.str());
    EXPECT_EQ(back.graph, g);
}

TEST(Graph, InvariantsOnGenerated) {
    for (const auto& [name, g] : oracle::cyclic_corpus()) {
        std::size_t deg_sum = 0;
        for (Vertex v = 0; v < g.order(); ++v) {
            deg_sum += g.degree(v);
            auto nb = g.neighbors(v);
            EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end())) << name;
            for (Vertex w : nb) {
                EXPECT_NE(w, v) << name;
                EXPECT_TRUE(g.has_edge(w, v)) << name;
            }
            EXPECT_EQ(std::adjacent_find(nb.begin(), nb.end()), nb.end()) << name;
        }
        EXPECT_EQ(deg_sum, 2 * g.size()) << name;
        for (const auto& e : g.edges()) EXPECT_LT(e.u, e.v);
    }
}

TEST(Graph, FromEdgesRejectsNonSimple) {
    EXPECT_THROW(Graph::from_edges(3, {{1, 1}}), InputError);
    EXPECT_THROW(Graph::from_edges(3, {{0, 1}, {1, 0}}), InputError);
    EXPECT_THROW(Graph::from_edges(2, {{0, 2}}), InputError);
}

TEST(DegreeMoment, Examples) {
    EXPECT_DOUBLE_EQ(degree_moment(generate(FamilySpec::cycle(6)), 2), 4.0);
    auto star = generate(FamilySpec::regular_tree(4, 1));
    EXPECT_DOUBLE_EQ(degree_moment(star, 1), 1.6);
    EXPECT_THROW(degree_moment(Graph{}, 1), InputError);
}

TEST(DegreeMoment, MatchesDirectSummation) {
    auto g = generate(FamilySpec::chain_tree(3, 1, 1, 3));
    // Independent: backbone vertices of generation < 3 have degree 4 (3
    // backbone + 1 chain, root included), boundary backbone vertices
    // degree 2, chain ends degree 1.
    std::size_t interior = 1 + 3 + 6, boundary = 12, leaves = 22;
    ASSERT_EQ(g.order(), interior + boundary + leaves);
    double expected = (interior * 16.0 + boundary * 4.0 + leaves * 1.0) / static_cast<double>(g.order());
    EXPECT_DOUBLE_EQ(degree_moment(g, 2), expected);
}

TEST(Generate, TreeCounts) {
    auto t = generate(FamilySpec::regular_tree(3, 2));
    EXPECT_EQ(t.order(), 10u);
    EXPECT_EQ(t.size(), 9u);
    auto c = generate(FamilySpec::chain_tree(3, 1, 2, 1));
    EXPECT_EQ(c.order(), 12u);
    EXPECT_EQ(c.size(), 11u);
}

TEST(Generate, ChainTreeStructure) {
    auto layout = generate_tree_layout(FamilySpec::chain_tree(4, 2, 3, 3));
    const auto& g = layout.graph;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (layout.generation[v] < 0) {
            EXPECT_LE(g.degree(v), 2u);
            continue;
        }
        std::size_t backbone_nb = 0, chain_nb = 0;
        for (Vertex w : g.neighbors(v)) (layout.generation[w] >= 0 ? backbone_nb : chain_nb)++;
        EXPECT_EQ(chain_nb, 2u);
        if (layout.generation[v] < 3)
            EXPECT_EQ(backbone_nb, 4u);
        else
            EXPECT_EQ(backbone_nb, 1u);
    }
}

TEST(Generate, RandomRegularDegrees) {
    auto g = generate(FamilySpec::random_regular(3, 100, 7));
    EXPECT_EQ(g.order(), 100u);
    for (Vertex v = 0; v < g.order(); ++v) EXPECT_EQ(g.degree(v), 3u);
}

TEST(Generate, Deterministic) {
    EXPECT_EQ(generate(FamilySpec::random_regular(4, 200, 5)), generate(FamilySpec::random_regular(4, 200, 5)));
    EXPECT_EQ(generate(FamilySpec::binomial_random(300, 0.02, 5)),
              generate(FamilySpec::binomial_random(300, 0.02, 5)));
    EXPECT_NE(generate(FamilySpec::random_regular(4, 200, 5)), generate(FamilySpec::random_regular(4, 200, 6)));
}

TEST(Generate, BinomialMeanDegree) {
    const std::size_t n = 4000;
    auto g = generate(FamilySpec::binomial_random(n, 4.0 / (n - 1), 2));
    double mean = 2.0 * static_cast<double>(g.size()) / n;
    // m ~ Binomial(n(n-1)/2, p): sd of the mean degree is about 0.045
    EXPECT_NEAR(mean, 4.0, 0.2);
}

TEST(Generate, ParameterErrors) {
    EXPECT_THROW(generate(FamilySpec::chain_tree(2, 1, 1, 2)), InputError);
    EXPECT_THROW(generate(FamilySpec::chain_tree(3, 0, 1, 2)), InputError);
    EXPECT_THROW(generate(FamilySpec::cycle(2)), InputError);
    EXPECT_THROW(generate(FamilySpec::random_regular(3, 11, 1)), InputError);
    FamilySpec no_seed = FamilySpec::random_regular(3, 10, 1);
    no_seed.seed.reset();
    EXPECT_THROW(generate(no_seed), InputError);
    EXPECT_THROW(generate(FamilySpec::binomial_random(10, 1.5, 1)), InputError);
    EXPECT_THROW(family_from_string("lattice"), InputError);
    EXPECT_EQ(family_from_string("chain_tree"), Family::chain_tree);
}
