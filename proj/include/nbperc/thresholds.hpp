#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nbperc/error.hpp"
#include "nbperc/generators.hpp"
#include "nbperc/graph.hpp"
#include "nbperc/graph_ops.hpp"
#include "nbperc/pattern.hpp"
#include "nbperc/spectral.hpp"

namespace nbperc {

/// Threshold estimates and lower bounds for one finite graph.
///
/// Ordering that must hold on any graph with a cycle:
///   bound_adjacency < bound_nb,  bound_maxdeg <= bound_nb (+tol).
/// estimate_random is the uncorrelated random-graph heuristic and is
/// never treated as a bound.
struct BoundsReport {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t d_max = 0;
    std::size_t d_min = 0;
    std::optional<double> estimate_random;
    std::optional<double> bound_maxdeg;
    std::optional<double> bound_nb;
    std::optional<double> bound_adjacency;
    double nb_rho = 0.0;
    double adjacency_rho = 0.0;
    bool forest = false;
    bool connected = false;
    bool converged = false;
    std::size_t nb_iterations = 0;

    std::string estimate_random_reason;
    std::string bound_maxdeg_reason;
    std::string bound_nb_reason;
    std::string bound_adjacency_reason;

    /// bound_adjacency < bound_nb, or vacuously true if either is undefined.
    bool strict_chain_holds() const {
        if (!bound_nb || !bound_adjacency) return true;
        return *bound_adjacency < *bound_nb;
    }
};

inline BoundsReport bounds_report(const Graph& g, double tol = 1e-10) {
    if (g.size() == 0) throw InputError("bounds_report: graph has no edges");
    BoundsReport r;
    r.n = g.order();
    r.m = g.size();
    r.d_max = g.max_degree();
    r.d_min = g.min_degree();
    r.forest = is_forest(g);
    r.connected = is_connected(g);

    const double k1 = degree_moment(g, 1);
    const double k2 = degree_moment(g, 2);
    if (k2 - k1 > 0.0) {
        r.estimate_random = k1 / (k2 - k1);
        r.estimate_random_reason = "heuristic (uncorrelated random-graph formula)";
    } else {
        r.estimate_random_reason = "undefined: <d^2> = <d>";
    }

    if (r.d_max > 1) {
        r.bound_maxdeg = 1.0 / static_cast<double>(r.d_max - 1);
    } else {
        r.bound_maxdeg_reason = "undefined: maximum degree <= 1";
    }

    SpectralOptions opt;
    opt.tol = tol;
    auto nb = nb_spectral_radius(g, opt);
    auto adj = adjacency_spectral(g, opt);
    r.nb_rho = nb.rho;
    r.nb_iterations = nb.iterations;
    r.adjacency_rho = adj.rho;
    r.converged = nb.converged && adj.converged;
    if (r.forest) {
        r.bound_nb_reason = "not applicable: finite forest, threshold 1 on any finite graph";
    } else {
        r.bound_nb = 1.0 / nb.rho;
    }
    r.bound_adjacency = 1.0 / adj.rho;
    return r;
}

inline nlohmann::json to_json(const BoundsReport& r) {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    nlohmann::json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["d_max"] = r.d_max;
    j["d_min"] = r.d_min;
    j["estimate_random"] = opt(r.estimate_random);
    j["estimate_random_reason"] = r.estimate_random_reason;
    j["bound_maxdeg"] = opt(r.bound_maxdeg);
    if (!r.bound_maxdeg) j["bound_maxdeg_reason"] = r.bound_maxdeg_reason;
    j["bound_nb"] = opt(r.bound_nb);
    if (!r.bound_nb) j["bound_nb_reason"] = r.bound_nb_reason;
    j["bound_adjacency"] = opt(r.bound_adjacency);
    j["nb_rho"] = r.nb_rho;
    j["adjacency_rho"] = r.adjacency_rho;
    j["forest"] = r.forest;
    j["connected"] = r.connected;
    j["converged"] = r.converged;
    j["strict_chain_holds"] = r.strict_chain_holds();
    return j;
}

/// Q on one directed edge: probability that `from`, open, is joined only to
/// a finite cluster through `to`.
struct DirectedQ {
    Vertex from;
    Vertex to;
    double q;
};

struct TreeSolveResult {
    double p = 0.0;
    double reach_probability = 0.0;
    /// Largest distance from the root to a boundary vertex (0 if none).
    std::size_t depth = 0;
    std::vector<DirectedQ> q_values;
};

/// Probability that an open root connects to the boundary of a finite tree.
///
/// One leaf-to-root sweep of Q_ij = prod_{l ~ j, l != i} (1 - p + p Q_jl),
/// with Q = 0 on edges into a boundary vertex (the boundary stands in for
/// infinity) and Q = 1 into any other leaf.
inline TreeSolveResult tree_reach_probability(const Graph& g, Vertex root, double p,
                                              const std::vector<Vertex>& boundary) {
    if (root >= g.order()) throw InputError("root vertex " + std::to_string(root) + " is not in the graph");
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("occupation probability must lie in [0, 1]");
    if (g.size() + 1 != g.order() || !is_connected(g))
        throw InputError("tree_reach_probability needs a tree (connected, no cycles)");
    std::vector<bool> is_boundary(g.order(), false);
    for (Vertex b : boundary) {
        if (b >= g.order()) throw InputError("boundary vertex " + std::to_string(b) + " is not in the graph");
        if (g.degree(b) > 1) throw InputError("boundary vertex " + std::to_string(b) + " is not a leaf");
        if (b == root) throw InputError("root cannot be a boundary vertex");
        is_boundary[b] = true;
    }

    constexpr auto none = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> order{root}, parent(g.order(), none);
    std::vector<std::size_t> dist(g.order(), 0);
    parent[root] = root;
    for (std::size_t k = 0; k < order.size(); ++k) {
        Vertex v = order[k];
        for (Vertex w : g.neighbors(v)) {
            if (parent[w] == none) {
                parent[w] = v;
                dist[w] = dist[v] + 1;
                order.push_back(w);
            }
        }
    }

    TreeSolveResult out;
    out.p = p;
    // q[j] = Q_{parent(j), j}
    std::vector<double> q(g.order(), 1.0);
    std::vector<double> prod(g.order(), 1.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex j = *it;
        if (j == root) break;
        q[j] = is_boundary[j] ? 0.0 : prod[j];
        if (is_boundary[j]) out.depth = std::max(out.depth, dist[j]);
        prod[parent[j]] *= 1.0 - p + p * q[j];
        out.q_values.push_back({parent[j], j, q[j]});
    }
    out.reach_probability = 1.0 - prod[root];
    return out;
}

struct TreeThresholdEstimate {
    /// Extrapolated threshold: exp(c0) from the fit ln p_k = c0 + c1 / k.
    double estimate = 0.0;
    /// Raw eta-crossing at the deepest truncation.
    double deepest = 0.0;
    std::vector<std::pair<int, double>> sequence;
    double slope = 0.0;
};

/// Boundary-clamped truncation of a tree family: backbone generations
/// 0..depth, with the depth-`depth` backbone vertices as leaves and boundary.
struct ClampedTree {
    Graph graph;
    std::vector<Vertex> boundary;
};

inline ClampedTree clamped_tree(const FamilySpec& family, int depth) {
    if (depth < 1) throw InputError("truncation depth must be at least 1");
    FamilySpec spec = family;
    spec.depth = depth;
    auto layout = generate_tree_layout(spec);
    const Graph& g = layout.graph;
    // Keep everything reachable from the root without passing through a
    // boundary vertex; this drops decorations hanging off the boundary.
    std::vector<bool> keep(g.order(), false);
    std::vector<Vertex> stack{0};
    keep[0] = true;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        if (layout.generation[v] == depth) continue;
        for (Vertex w : g.neighbors(v)) {
            if (!keep[w]) {
                keep[w] = true;
                stack.push_back(w);
            }
        }
    }
    auto sub = induced_subgraph(g, keep);
    ClampedTree out;
    out.graph = std::move(sub.graph);
    for (Vertex i = 0; i < out.graph.order(); ++i)
        if (layout.generation[sub.original[i]] == depth) out.boundary.push_back(i);
    return out;
}

/// Threshold of an infinite tree family from finite truncations.
///
/// For each depth k, bisects p until the root-to-boundary reach equals eta.
/// Below threshold the reach decays like C (rho p)^k, so the crossings obey
/// ln p_k ~ ln p_c + a / k; the estimate is that fit's intercept over all
/// depths. The raw sequence is returned for inspection.
inline TreeThresholdEstimate tree_threshold_estimate(const FamilySpec& family, std::vector<int> depths,
                                                     double eta = 1e-3, double tol = 1e-4) {
    if (!family.is_tree_family())
        throw InputError(std::string(to_string(family.family)) + " is not a tree family");
    if (!(eta > 0.0 && eta < 0.5)) throw InputError("eta must lie in (0, 0.5)");
    if (!(tol > 0.0)) throw InputError("bisection tolerance must be positive");
    if (depths.empty()) throw InputError("at least one depth is required");
    if (!std::is_sorted(depths.begin(), depths.end()) ||
        std::adjacent_find(depths.begin(), depths.end()) != depths.end())
        throw InputError("depths must be strictly increasing");

    TreeThresholdEstimate out;
    for (int k : depths) {
        auto tree = clamped_tree(family, k);
        double lo = 0.0, hi = 1.0;
        while (hi - lo > tol) {
            double mid = 0.5 * (lo + hi);
            if (tree_reach_probability(tree.graph, 0, mid, tree.boundary).reach_probability < eta)
                lo = mid;
            else
                hi = mid;
        }
        out.sequence.emplace_back(k, 0.5 * (lo + hi));
    }
    out.deepest = out.sequence.back().second;
    if (out.sequence.size() == 1) {
        out.estimate = out.deepest;
        return out;
    }
    // Least squares for ln p_k = c0 + c1 * (1/k).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto cnt = static_cast<double>(out.sequence.size());
    for (auto [k, pk] : out.sequence) {
        double x = 1.0 / k, y = std::log(pk);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    out.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    double c0 = (sy - out.slope * sx) / cnt;
    out.estimate = std::clamp(std::exp(c0), 0.0, 1.0);
    return out;
}

/// Exact site-percolation threshold of the pattern's tree, 1 / rho.
inline double pattern_threshold(const QuotientPattern& p) {
    double rho = pattern_hashimoto(p).rho;
    if (rho < 1.0 - 1e-9)
        throw InvalidPattern("pattern non-backtracking radius " + std::to_string(rho) +
                             " < 1: the pattern does not describe an infinite tree with a backbone");
    return std::min(1.0, 1.0 / rho);
}

} // namespace nbperc
