#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <string>
#include <vector>

#include "nbperc/error.hpp"
#include "nbperc/graph.hpp"

namespace nbperc {

struct Components {
    /// label[v] in [0, count)
    std::vector<std::uint32_t> label;
    std::size_t count = 0;

    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> s(count, 0);
        for (auto l : label) ++s[l];
        return s;
    }
};

inline Components connected_components(const Graph& g) {
    constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
    Components c;
    c.label.assign(g.order(), unset);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (c.label[s] != unset) continue;
        auto id = static_cast<std::uint32_t>(c.count++);
        c.label[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex w : g.neighbors(v)) {
                if (c.label[w] == unset) {
                    c.label[w] = id;
                    stack.push_back(w);
                }
            }
        }
    }
    return c;
}

inline bool is_connected(const Graph& g) { return connected_components(g).count <= 1; }

/// A forest has m = n - (number of components).
inline bool is_forest(const Graph& g) {
    return g.size() + connected_components(g).count == g.order();
}

/// Graph restricted to a vertex subset, plus the map back to original ids.
struct Subgraph {
    Graph graph;
    std::vector<Vertex> original;
};

/// Induced subgraph on the vertices with keep[v] set. Relative vertex
/// order is preserved.
inline Subgraph induced_subgraph(const Graph& g, const std::vector<bool>& keep) {
    constexpr auto none = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> remap(g.order(), none);
    Subgraph out;
    for (Vertex v = 0; v < g.order(); ++v) {
        if (keep[v]) {
            remap[v] = static_cast<Vertex>(out.original.size());
            out.original.push_back(v);
        }
    }
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        if (remap[e.u] != none && remap[e.v] != none) edges.emplace_back(remap[e.u], remap[e.v]);
    out.graph = Graph::from_edges(out.original.size(), std::move(edges));
    return out;
}

/// Splits a graph into its connected components, in order of smallest vertex id.
inline std::vector<Subgraph> split_components(const Graph& g) {
    auto comps = connected_components(g);
    std::vector<Subgraph> parts;
    parts.reserve(comps.count);
    for (std::size_t c = 0; c < comps.count; ++c) {
        std::vector<bool> keep(g.order());
        for (Vertex v = 0; v < g.order(); ++v) keep[v] = comps.label[v] == c;
        parts.push_back(induced_subgraph(g, keep));
    }
    return parts;
}

/// Recursively strips vertices of degree at most one. The result has
/// minimum degree >= 2 or no vertices at all (exactly when g is a forest).
inline Subgraph backbone(const Graph& g) {
    std::vector<std::size_t> deg(g.order());
    std::vector<bool> alive(g.order(), true);
    std::deque<Vertex> queue;
    for (Vertex v = 0; v < g.order(); ++v) {
        deg[v] = g.degree(v);
        if (deg[v] <= 1) queue.push_back(v);
    }
    while (!queue.empty()) {
        Vertex v = queue.front();
        queue.pop_front();
        if (!alive[v]) continue;
        alive[v] = false;
        for (Vertex w : g.neighbors(v)) {
            if (alive[w] && --deg[w] == 1) queue.push_back(w);
        }
    }
    return induced_subgraph(g, alive);
}

/// Edges whose removal disconnects the graph (iterative lowlink DFS).
/// Throws InputError if g is disconnected.
inline std::vector<Edge> find_bridges(const Graph& g) {
    auto comps = connected_components(g);
    if (comps.count > 1) {
        auto sizes = comps.sizes();
        std::string msg = "find_bridges requires a connected graph; found " +
                          std::to_string(comps.count) + " components of sizes";
        for (std::size_t i = 0; i < sizes.size() && i < 8; ++i) msg += " " + std::to_string(sizes[i]);
        if (sizes.size() > 8) msg += " ...";
        throw InputError(msg);
    }
    std::vector<Edge> bridges;
    if (g.order() == 0) return bridges;

    constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> disc(g.order(), unvisited), low(g.order(), 0);
    struct Frame {
        Vertex v;
        Vertex parent;
        std::size_t next;
    };
    std::vector<Frame> stack;
    std::size_t timer = 0;
    disc[0] = low[0] = timer++;
    stack.push_back({0, 0, 0});
    while (!stack.empty()) {
        auto& f = stack.back();
        auto nb = g.neighbors(f.v);
        if (f.next < nb.size()) {
            Vertex w = nb[f.next++];
            // Simple graph: skipping the parent id skips exactly the tree edge.
            if (w == f.parent && f.v != 0) continue;
            if (disc[w] == unvisited) {
                disc[w] = low[w] = timer++;
                stack.push_back({w, f.v, 0});
            } else {
                low[f.v] = std::min(low[f.v], disc[w]);
            }
        } else {
            Frame done = f;
            stack.pop_back();
            if (!stack.empty()) {
                Vertex p = stack.back().v;
                low[p] = std::min(low[p], low[done.v]);
                if (low[done.v] > disc[p]) bridges.emplace_back(p, done.v);
            }
        }
    }
    std::sort(bridges.begin(), bridges.end());
    return bridges;
}

/// Finite section of the single-cycle unwrapping at edge b = (u, v).
///
/// Copy i occupies vertex ids [i*n, (i+1)*n) and holds G' = (V, E \ b).
/// The source (v) of copy i is joined to the sink (u) of copy i+1 by a
/// fresh edge, the image of b. Chain ends stay open, so the result has
/// k*n vertices and k*m - 1 edges.
inline Graph scu_truncation(const Graph& g, Edge b, std::size_t copies) {
    if (copies < 1) throw InputError("scu_truncation needs at least one copy");
    if (!g.has_edge(b.u, b.v)) {
        std::ostringstream os;
        os << "edge " << b << " is not in the graph";
        throw InputError(os.str());
    }
    auto bridges = find_bridges(g);
    if (std::binary_search(bridges.begin(), bridges.end(), b)) {
        std::ostringstream os;
        os << "edge " << b << " is a bridge; the graph without it is disconnected";
        throw InputError(os.str());
    }
    const std::size_t n = g.order();
    if (copies * n > std::numeric_limits<Vertex>::max())
        throw InputError("scu_truncation result too large");
    const Vertex sink = b.u;
    const Vertex source = b.v;
    std::vector<Edge> edges;
    edges.reserve(copies * g.size());
    for (std::size_t i = 0; i < copies; ++i) {
        auto base = static_cast<Vertex>(i * n);
        for (const auto& e : g.edges())
            if (e != b) edges.emplace_back(base + e.u, base + e.v);
        if (i + 1 < copies)
            edges.emplace_back(base + source, static_cast<Vertex>(base + n + sink));
    }
    return Graph::from_edges(copies * n, std::move(edges));
}

} // namespace nbperc
