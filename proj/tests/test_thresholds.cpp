#include <gtest/gtest.h>

#include "nbperc/generators.hpp"
#include "nbperc/thresholds.hpp"
#include "oracles.hpp"

using namespace nbperc;
using nbperc::oracle::make_graph;

TEST(BoundsReport, CompleteGraph) {
    auto r = bounds_report(generate(FamilySpec::complete(4)));
    EXPECT_EQ(r.n, 4u);
    EXPECT_EQ(r.m, 6u);
    EXPECT_NEAR(*r.bound_nb, 0.5, 1e-10);
    EXPECT_NEAR(*r.bound_maxdeg, 0.5, 1e-15);
    EXPECT_NEAR(*r.bound_adjacency, 1.0 / 3.0, 1e-10);
    // <d> = 3, <d^2> = 9
    EXPECT_NEAR(*r.estimate_random, 0.5, 1e-15);
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(r.strict_chain_holds());
}

TEST(BoundsReport, Cycle) {
    auto r = bounds_report(generate(FamilySpec::cycle(8)));
    EXPECT_NEAR(*r.bound_nb, 1.0, 1e-10);
    EXPECT_NEAR(*r.bound_maxdeg, 1.0, 1e-15);
    EXPECT_NEAR(*r.bound_adjacency, 0.5, 1e-10);
    EXPECT_NEAR(*r.estimate_random, 1.0, 1e-15);
}

TEST(BoundsReport, StarIsForest) {
    auto r = bounds_report(generate(FamilySpec::regular_tree(5, 1)));
    EXPECT_TRUE(r.forest);
    EXPECT_FALSE(r.bound_nb.has_value());
    EXPECT_NE(r.bound_nb_reason.find("forest"), std::string::npos);
    EXPECT_NEAR(*r.bound_maxdeg, 0.25, 1e-15);
    EXPECT_NEAR(*r.bound_adjacency, 1.0 / std::sqrt(5.0), 1e-9);
    EXPECT_EQ(r.nb_rho, 0.0);
}

TEST(BoundsReport, SingleEdgeHasNoMaxDegreeBound) {
    auto r = bounds_report(make_graph(2, {{0, 1}}));
    EXPECT_FALSE(r.bound_maxdeg.has_value());
    EXPECT_FALSE(r.bound_maxdeg_reason.empty());
    // every degree 1: <d^2> = <d>
    EXPECT_FALSE(r.estimate_random.has_value());
    EXPECT_FALSE(r.estimate_random_reason.empty());
    EXPECT_THROW(bounds_report(Graph::from_edges(4, {})), InputError);
}

TEST(BoundsReport, JsonNullsCarryReasons) {
    auto j = to_json(bounds_report(generate(FamilySpec::path(4))));
    EXPECT_TRUE(j["bound_nb"].is_null());
    EXPECT_TRUE(j["bound_nb_reason"].is_string());
    EXPECT_TRUE(j["bound_maxdeg"].is_number());
    EXPECT_FALSE(j.contains("bound_maxdeg_reason"));
    for (auto key : {"n", "m", "d_max", "d_min", "estimate_random", "bound_adjacency", "nb_rho", "adjacency_rho",
                     "forest", "connected", "converged", "strict_chain_holds"})
        EXPECT_TRUE(j.contains(key)) << key;
}

TEST(BoundsReport, ChainOrderingOnCorpus) {
    const double tol = 1e-10;
    for (const auto& [name, g] : oracle::cyclic_corpus()) {
        auto r = bounds_report(g, tol);
        ASSERT_TRUE(r.bound_nb && r.bound_adjacency) << name;
        EXPECT_LT(*r.bound_adjacency, *r.bound_nb) << name;
        EXPECT_LE(*r.bound_maxdeg, *r.bound_nb + tol) << name;
        EXPECT_LE(*r.bound_nb, 1.0 + tol) << name;
        EXPECT_TRUE(r.strict_chain_holds()) << name;
    }
}

TEST(BoundsReport, RegularGraphsEstimateEqualsBound) {
    for (int d : {3, 4, 6}) {
        auto r = bounds_report(generate(FamilySpec::random_regular(d, 200, 9)));
        EXPECT_NEAR(*r.estimate_random, 1.0 / (d - 1), 1e-12);
        EXPECT_NEAR(*r.bound_nb, 1.0 / (d - 1), 1e-9);
        EXPECT_NEAR(*r.bound_maxdeg, 1.0 / (d - 1), 1e-15);
    }
}

TEST(TreeReach, SingleEdge) {
    auto g = make_graph(2, {{0, 1}});
    EXPECT_NEAR(tree_reach_probability(g, 0, 0.7, {1}).reach_probability, 0.7, 1e-15);
    EXPECT_EQ(tree_reach_probability(g, 0, 0.7, {}).reach_probability, 0.0);
}

TEST(TreeReach, PathNeedsEveryVertexOpen) {
    auto g = generate(FamilySpec::path(5));
    EXPECT_NEAR(tree_reach_probability(g, 0, 0.6, {4}).reach_probability, std::pow(0.6, 4), 1e-15);
    EXPECT_NEAR(tree_reach_probability(g, 2, 0.6, {0, 4}).reach_probability, 1 - std::pow(1 - 0.36, 2), 1e-15);
}

TEST(TreeReach, RegularTreeMatchesGenerationRecursion) {
    for (int depth : {1, 4, 10}) {
        auto tree = clamped_tree(FamilySpec::regular_tree(3, depth), depth);
        for (double p : {0.2, 0.5, 0.6, 0.9}) {
            double got = tree_reach_probability(tree.graph, 0, p, tree.boundary).reach_probability;
            EXPECT_NEAR(got, oracle::regular_tree_reach(3, depth, p), 1e-12) << depth << " " << p;
        }
    }
}

TEST(TreeReach, QValuesCoverAllEdges) {
    auto tree = clamped_tree(FamilySpec::regular_tree(3, 3), 3);
    auto res = tree_reach_probability(tree.graph, 0, 0.5, tree.boundary);
    EXPECT_EQ(res.q_values.size(), tree.graph.size());
    EXPECT_EQ(res.depth, 3u);
    for (const auto& dq : res.q_values) {
        EXPECT_GE(dq.q, 0.0);
        EXPECT_LE(dq.q, 1.0);
        EXPECT_TRUE(tree.graph.has_edge(dq.from, dq.to));
    }
}

TEST(TreeReach, MonotoneInPAndDepth) {
    for (auto spec : {FamilySpec::regular_tree(3, 1), FamilySpec::chain_tree(3, 2, 2, 1)}) {
        double prev_depth = 1.0;
        for (int depth = 2; depth <= 8; ++depth) {
            auto tree = clamped_tree(spec, depth);
            double prev_p = 0.0;
            for (int i = 0; i <= 20; ++i) {
                double r = tree_reach_probability(tree.graph, 0, i / 20.0, tree.boundary).reach_probability;
                EXPECT_GE(r, prev_p - 1e-15);
                prev_p = r;
            }
            double at = tree_reach_probability(tree.graph, 0, 0.55, tree.boundary).reach_probability;
            EXPECT_LE(at, prev_depth + 1e-15);
            prev_depth = at;
        }
    }
}

TEST(TreeReach, Errors) {
    auto g = generate(FamilySpec::path(4));
    EXPECT_THROW(tree_reach_probability(generate(FamilySpec::cycle(4)), 0, 0.5, {}), InputError);
    EXPECT_THROW(tree_reach_probability(g, 0, 0.5, {1}), InputError);
    EXPECT_THROW(tree_reach_probability(g, 0, 0.5, {0}), InputError);
    EXPECT_THROW(tree_reach_probability(g, 9, 0.5, {3}), InputError);
    EXPECT_THROW(tree_reach_probability(g, 0, 1.5, {3}), InputError);
}

TEST(ClampedTree, ChainTreeBoundaryIsLeaves) {
    auto tree = clamped_tree(FamilySpec::chain_tree(3, 2, 2, 1), 4);
    // backbone 1 + 3 + 6 + 12 + 24; chains on the 22 interior vertices
    EXPECT_EQ(tree.boundary.size(), 24u);
    EXPECT_EQ(tree.graph.order(), 46u + 22u * 4u);
    for (Vertex b : tree.boundary) EXPECT_EQ(tree.graph.degree(b), 1u);
}

TEST(TreeThresholdEstimate, RegularTree) {
    auto est = tree_threshold_estimate(FamilySpec::regular_tree(3, 1), {6, 8, 10, 12, 14});
    EXPECT_NEAR(est.estimate, 0.5, 0.02);
    EXPECT_EQ(est.sequence.size(), 5u);
    for (std::size_t i = 1; i < est.sequence.size(); ++i)
        EXPECT_GT(est.sequence[i].second, est.sequence[i - 1].second);
    EXPECT_LT(est.deepest, 0.5);
}

TEST(TreeThresholdEstimate, ChainTree) {
    auto est = tree_threshold_estimate(FamilySpec::chain_tree(3, 2, 2, 1), {6, 8, 10, 12, 14});
    EXPECT_NEAR(est.estimate, 0.5, 0.03);
}

TEST(TreeThresholdEstimate, BinaryBranchingPathDriftsToOne) {
    auto shallow = tree_threshold_estimate(FamilySpec::regular_tree(2, 1), {8});
    auto deep = tree_threshold_estimate(FamilySpec::regular_tree(2, 1), {64});
    EXPECT_GT(deep.deepest, shallow.deepest);
    EXPECT_GT(deep.deepest, 0.85);
}

TEST(TreeThresholdEstimate, Errors) {
    EXPECT_THROW(tree_threshold_estimate(FamilySpec::cycle(5), {4}), InputError);
    EXPECT_THROW(tree_threshold_estimate(FamilySpec::regular_tree(3, 1), {}), InputError);
    EXPECT_THROW(tree_threshold_estimate(FamilySpec::regular_tree(3, 1), {6, 4}), InputError);
    EXPECT_THROW(tree_threshold_estimate(FamilySpec::regular_tree(3, 1), {4}, 0.0), InputError);
}

TEST(UncorrelatedFormula, BinomialGraph) {
    const std::size_t n = 10000;
    auto g = generate(FamilySpec::binomial_random(n, 4.0 / (n - 1), 17));
    double k1 = degree_moment(g, 1), k2 = degree_moment(g, 2);
    double rho = nb_spectral_radius(g).rho;
    EXPECT_LE(std::abs(rho - (k2 / k1 - 1.0)) / rho, 0.05);
}
