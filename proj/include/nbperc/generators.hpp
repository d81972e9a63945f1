#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nbperc/error.hpp"
#include "nbperc/graph.hpp"

namespace nbperc {

enum class Family { regular_tree, chain_tree, cycle, complete, path, random_regular, binomial_random };

inline std::string_view to_string(Family f) {
    switch (f) {
    case Family::regular_tree: return "regular_tree";
    case Family::chain_tree: return "chain_tree";
    case Family::cycle: return "cycle";
    case Family::complete: return "complete";
    case Family::path: return "path";
    case Family::random_regular: return "random_regular";
    case Family::binomial_random: return "binomial_random";
    }
    return "unknown";
}

inline Family family_from_string(std::string_view name) {
    for (auto f : {Family::regular_tree, Family::chain_tree, Family::cycle, Family::complete, Family::path,
                   Family::random_regular, Family::binomial_random})
        if (to_string(f) == name) return f;
    throw InputError("unknown graph family '" + std::string(name) + "'");
}

/// Parameters of a generated graph family. Only the fields a family uses
/// are read:
///   regular_tree    d, depth
///   chain_tree      d, r, L, depth
///   cycle/complete/path   n
///   random_regular  d, n, seed
///   binomial_random n, edge_probability, seed
struct FamilySpec {
    Family family = Family::cycle;
    int d = 3;
    int r = 1;
    int L = 1;
    int depth = 1;
    std::size_t n = 0;
    double edge_probability = 0.0;
    std::optional<std::uint64_t> seed;
    /// Pairing-model attempts before random_regular gives up.
    std::size_t max_attempts = 1'000'000;

    static FamilySpec regular_tree(int d, int depth) {
        FamilySpec s;
        s.family = Family::regular_tree;
        s.d = d;
        s.depth = depth;
        return s;
    }
    static FamilySpec chain_tree(int d, int r, int L, int depth) {
        FamilySpec s;
        s.family = Family::chain_tree;
        s.d = d;
        s.r = r;
        s.L = L;
        s.depth = depth;
        return s;
    }
    static FamilySpec cycle(std::size_t n) { return simple(Family::cycle, n); }
    static FamilySpec complete(std::size_t n) { return simple(Family::complete, n); }
    static FamilySpec path(std::size_t n) { return simple(Family::path, n); }
    static FamilySpec random_regular(int d, std::size_t n, std::uint64_t seed) {
        FamilySpec s = simple(Family::random_regular, n);
        s.d = d;
        s.seed = seed;
        return s;
    }
    static FamilySpec binomial_random(std::size_t n, double p, std::uint64_t seed) {
        FamilySpec s = simple(Family::binomial_random, n);
        s.edge_probability = p;
        s.seed = seed;
        return s;
    }

    bool is_tree_family() const { return family == Family::regular_tree || family == Family::chain_tree; }

    void validate() const {
        auto bad = [&](const std::string& what) {
            return InputError(std::string(to_string(family)) + ": " + what);
        };
        switch (family) {
        case Family::regular_tree:
            if (d < 2) throw bad("requires d >= 2");
            if (depth < 0) throw bad("requires depth >= 0");
            break;
        case Family::chain_tree:
            if (d < 3) throw bad("requires d >= 3");
            if (r < 1) throw bad("requires r >= 1");
            if (L < 1) throw bad("requires L >= 1");
            if (depth < 0) throw bad("requires depth >= 0");
            break;
        case Family::cycle:
            if (n < 3) throw bad("requires n >= 3");
            break;
        case Family::complete:
        case Family::path:
            if (n < 1) throw bad("requires n >= 1");
            break;
        case Family::random_regular:
            if (!seed) throw bad("requires a seed");
            if (d < 1) throw bad("requires d >= 1");
            if (n <= static_cast<std::size_t>(d)) throw bad("requires n > d");
            if ((n * static_cast<std::size_t>(d)) % 2 != 0) throw bad("requires n*d even");
            break;
        case Family::binomial_random:
            if (!seed) throw bad("requires a seed");
            if (n < 1) throw bad("requires n >= 1");
            if (!(edge_probability >= 0.0 && edge_probability <= 1.0))
                throw bad("edge probability must lie in [0, 1]");
            break;
        }
    }

private:
    static FamilySpec simple(Family f, std::size_t n) {
        FamilySpec s;
        s.family = f;
        s.n = n;
        return s;
    }
};

/// A generated tree together with the backbone generation of each vertex
/// (-1 for vertices on pendant chains).
struct TreeLayout {
    Graph graph;
    std::vector<int> generation;
};

namespace detail {

inline TreeLayout build_tree(const FamilySpec& spec) {
    const std::size_t d = static_cast<std::size_t>(spec.d);
    std::vector<Edge> edges;
    std::vector<int> generation{0};
    std::vector<Vertex> frontier{0};
    for (int g = 1; g <= spec.depth; ++g) {
        std::vector<Vertex> next;
        for (Vertex v : frontier) {
            std::size_t children = v == 0 ? d : d - 1;
            for (std::size_t c = 0; c < children; ++c) {
                auto w = static_cast<Vertex>(generation.size());
                generation.push_back(g);
                edges.emplace_back(v, w);
                next.push_back(w);
            }
        }
        frontier = std::move(next);
    }
    if (spec.family == Family::chain_tree) {
        const std::size_t backbone_size = generation.size();
        for (std::size_t b = 0; b < backbone_size; ++b) {
            for (int c = 0; c < spec.r; ++c) {
                auto prev = static_cast<Vertex>(b);
                for (int k = 0; k < spec.L; ++k) {
                    auto w = static_cast<Vertex>(generation.size());
                    generation.push_back(-1);
                    edges.emplace_back(prev, w);
                    prev = w;
                }
            }
        }
    }
    TreeLayout out;
    out.graph = Graph::from_edges(generation.size(), std::move(edges));
    out.generation = std::move(generation);
    return out;
}

// Pairing model: draw a uniform random matching of the n*d stubs and reject
// the whole attempt on the first loop or repeated edge.
inline Graph random_regular(const FamilySpec& spec) {
    const std::size_t n = spec.n;
    const std::size_t d = static_cast<std::size_t>(spec.d);
    std::mt19937_64 rng(*spec.seed);
    std::vector<Vertex> stubs;
    std::vector<std::vector<Vertex>> adj(n);
    std::vector<Edge> edges;
    for (std::size_t attempt = 0; attempt < spec.max_attempts; ++attempt) {
        stubs.clear();
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t k = 0; k < d; ++k) stubs.push_back(static_cast<Vertex>(v));
        for (auto& a : adj) a.clear();
        edges.clear();
        bool ok = true;
        while (!stubs.empty()) {
            Vertex a = stubs.back();
            stubs.pop_back();
            std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
            std::size_t j = pick(rng);
            Vertex b = stubs[j];
            stubs[j] = stubs.back();
            stubs.pop_back();
            if (a == b || std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end()) {
                ok = false;
                break;
            }
            adj[a].push_back(b);
            adj[b].push_back(a);
            edges.emplace_back(a, b);
        }
        if (ok) return Graph::from_edges(n, std::move(edges));
    }
    throw NumericError("random_regular: no simple pairing found in " + std::to_string(spec.max_attempts) +
                       " attempts");
}

// G(n, p) by geometric skipping over the lower triangle (Batagelj-Brandes).
inline Graph binomial_random(const FamilySpec& spec) {
    const std::size_t n = spec.n;
    const double p = spec.edge_probability;
    std::vector<Edge> edges;
    if (p <= 0.0 || n < 2) return Graph::from_edges(n, {});
    if (p >= 1.0) {
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        return Graph::from_edges(n, std::move(edges));
    }
    std::mt19937_64 rng(*spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double log_q = std::log1p(-p);
    std::int64_t v = 1, w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
        double r = unif(rng);
        w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
        while (w >= v && v < nn) {
            w -= v;
            ++v;
        }
        if (v < nn) edges.emplace_back(static_cast<Vertex>(w), static_cast<Vertex>(v));
    }
    return Graph::from_edges(n, std::move(edges));
}

} // namespace detail

/// Tree families with their backbone generations; throws for other families.
inline TreeLayout generate_tree_layout(const FamilySpec& spec) {
    spec.validate();
    if (!spec.is_tree_family())
        throw InputError(std::string(to_string(spec.family)) + " is not a tree family");
    return detail::build_tree(spec);
}

inline Graph generate(const FamilySpec& spec) {
    spec.validate();
    std::vector<Edge> edges;
    switch (spec.family) {
    case Family::regular_tree:
    case Family::chain_tree:
        return detail::build_tree(spec).graph;
    case Family::cycle:
        for (std::size_t i = 0; i < spec.n; ++i)
            edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % spec.n));
        return Graph::from_edges(spec.n, std::move(edges));
    case Family::path:
        for (std::size_t i = 0; i + 1 < spec.n; ++i)
            edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
        return Graph::from_edges(spec.n, std::move(edges));
    case Family::complete:
        for (std::size_t u = 0; u < spec.n; ++u)
            for (std::size_t v = u + 1; v < spec.n; ++v)
                edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
        return Graph::from_edges(spec.n, std::move(edges));
    case Family::random_regular:
        return detail::random_regular(spec);
    case Family::binomial_random:
        return detail::binomial_random(spec);
    }
    throw InputError("unhandled family");
}

} // namespace nbperc
