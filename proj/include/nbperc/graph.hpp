#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "nbperc/error.hpp"

namespace nbperc {

using Vertex = std::uint32_t;

/// Undirected edge stored canonically with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    constexpr Edge() = default;
    constexpr Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Edge& e) {
    return os << '(' << e.u << ',' << e.v << ')';
}

/// Immutable simple undirected graph in compressed adjacency form.
///
/// Vertices are dense ids 0..order()-1. Neighbor lists are sorted and the
/// edge list is sorted lexicographically; both orders are part of the
/// contract because directed-edge ids downstream are derived from them.
class Graph {
public:
    Graph() : offsets_(1, 0) {}

    /// Builds a graph over `n` vertices. Throws InputError on self-loops,
    /// duplicate edges or out-of-range endpoints.
    static Graph from_edges(std::size_t n, std::vector<Edge> edges) {
        if (n > std::numeric_limits<Vertex>::max())
            throw InputError("graph order exceeds vertex id range");
        for (const auto& e : edges) {
            if (e.u == e.v)
                throw InputError("self-loop at vertex " + std::to_string(e.u) +
                                 " (only simple graphs are supported)");
            if (e.v >= n)
                throw InputError("edge endpoint " + std::to_string(e.v) +
                                 " out of range for graph of order " + std::to_string(n));
        }
        std::sort(edges.begin(), edges.end());
        if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end()) {
            std::ostringstream os;
            os << "duplicate edge " << *it;
            throw InputError(os.str());
        }

        Graph g;
        g.n_ = n;
        g.offsets_.assign(n + 1, 0);
        for (const auto& e : edges) {
            ++g.offsets_[e.u + 1];
            ++g.offsets_[e.v + 1];
        }
        for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
        g.neighbors_.resize(2 * edges.size());
        std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
        // Edges are sorted, so each neighbor list comes out sorted for the
        // lower endpoint; the upper endpoint needs a final sort.
        for (const auto& e : edges) {
            g.neighbors_[fill[e.u]++] = e.v;
            g.neighbors_[fill[e.v]++] = e.u;
        }
        for (std::size_t v = 0; v < n; ++v)
            std::sort(g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
                      g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
        g.edges_ = std::move(edges);
        return g;
    }

    std::size_t order() const noexcept { return n_; }
    std::size_t size() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return n_ == 0; }

    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {neighbors_.data() + offsets_[v], degree(v)};
    }

    std::span<const Edge> edges() const noexcept { return edges_; }

    bool has_edge(Vertex a, Vertex b) const {
        if (a >= n_ || b >= n_) return false;
        auto nb = neighbors(a);
        return std::binary_search(nb.begin(), nb.end(), b);
    }

    std::size_t max_degree() const {
        std::size_t d = 0;
        for (Vertex v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    std::size_t min_degree() const {
        if (n_ == 0) return 0;
        std::size_t d = std::numeric_limits<std::size_t>::max();
        for (Vertex v = 0; v < n_; ++v) d = std::min(d, degree(v));
        return d;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> neighbors_;
    std::vector<Edge> edges_;
};

/// Average of d_v^power over all vertices.
inline double degree_moment(const Graph& g, unsigned power) {
    if (g.empty()) throw InputError("degree moment of an empty graph");
    if (power == 0) throw InputError("degree moment power must be positive");
    double sum = 0.0;
    for (Vertex v = 0; v < g.order(); ++v)
        sum += std::pow(static_cast<double>(g.degree(v)), static_cast<double>(power));
    return sum / static_cast<double>(g.order());
}

struct ParsedGraph {
    Graph graph;
    std::size_t duplicates = 0;
    /// labels[i] is the id used in the input for vertex i.
    std::vector<std::uint64_t> labels;
};

namespace detail {

inline std::uint64_t parse_vertex_token(const std::string& tok, std::size_t line_no) {
    auto fail = [&] {
        return InputError("line " + std::to_string(line_no) + ": expected a non-negative integer, got '" +
                          tok + "'");
    };
    if (tok.empty() || tok.size() > 19) throw fail();
    std::uint64_t value = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') throw fail();
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return value;
}

} // namespace detail

/// Reads the "u v" per line edge-list format.
///
/// `#` starts a comment, blank lines are skipped. A comment of the form
/// `# nodes N` fixes the vertex count, which keeps isolated vertices and
/// disables id compaction (ids must then be < N). Without it, the distinct
/// ids are compacted in increasing order; dense input maps to itself.
inline ParsedGraph parse_edge_list(std::istream& in) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
    std::optional<std::uint64_t> declared_nodes;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = line;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            std::istringstream comment(line.substr(hash + 1));
            std::string key;
            std::uint64_t value = 0;
            if (comment >> key && key == "nodes" && comment >> value) declared_nodes = value;
            body = line.substr(0, hash);
        }
        std::istringstream fields(body);
        std::vector<std::string> toks;
        for (std::string t; fields >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        if (toks.size() != 2)
            throw InputError("line " + std::to_string(line_no) + ": expected two vertex ids, got " +
                             std::to_string(toks.size()) + " fields");
        auto a = detail::parse_vertex_token(toks[0], line_no);
        auto b = detail::parse_vertex_token(toks[1], line_no);
        if (a == b)
            throw InputError("line " + std::to_string(line_no) + ": self-loop on vertex " + toks[0] +
                             " (only simple graphs are supported)");
        raw.emplace_back(std::min(a, b), std::max(a, b));
    }

    ParsedGraph out;
    std::vector<std::uint64_t> ids;
    if (declared_nodes) {
        for (const auto& [a, b] : raw)
            if (b >= *declared_nodes)
                throw InputError("vertex id " + std::to_string(b) + " exceeds declared node count " +
                                 std::to_string(*declared_nodes));
        ids.resize(*declared_nodes);
        for (std::uint64_t i = 0; i < *declared_nodes; ++i) ids[i] = i;
    } else {
        for (const auto& [a, b] : raw) {
            ids.push_back(a);
            ids.push_back(b);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    }
    if (ids.size() > std::numeric_limits<Vertex>::max())
        throw InputError("too many vertices");

    auto relabel = [&](std::uint64_t id) {
        return static_cast<Vertex>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const auto& [a, b] : raw) edges.emplace_back(relabel(a), relabel(b));
    std::sort(edges.begin(), edges.end());
    auto last = std::unique(edges.begin(), edges.end());
    out.duplicates = static_cast<std::size_t>(edges.end() - last);
    edges.erase(last, edges.end());

    out.graph = Graph::from_edges(ids.size(), std::move(edges));
    out.labels = std::move(ids);
    return out;
}

inline ParsedGraph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

/// Writes the graph in edge-list format with a `# nodes N` header.
inline void write_edge_list(std::ostream& os, const Graph& g) {
    os << "# nodes " << g.order() << '\n';
    os << "# edges " << g.size() << '\n';
    for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
}

} // namespace nbperc
