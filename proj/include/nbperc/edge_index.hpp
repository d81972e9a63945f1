#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nbperc/error.hpp"
#include "nbperc/graph.hpp"

namespace nbperc {

using DirectedEdge = std::size_t;

/// The 2m directed edges of a graph, i.e. the vertex set of its oriented
/// line graph. Undirected edge i = (u, v), u < v, of the graph's edge list
/// yields ids 2i (u -> v) and 2i+1 (v -> u).
class DirectedEdgeIndex {
public:
    DirectedEdgeIndex() : out_offsets_(1, 0) {}

    explicit DirectedEdgeIndex(const Graph& g) : n_(g.order()) {
        const std::size_t m = g.size();
        tail_.resize(2 * m);
        head_.resize(2 * m);
        for (std::size_t i = 0; i < m; ++i) {
            const auto& e = g.edges()[i];
            tail_[2 * i] = e.u;
            head_[2 * i] = e.v;
            tail_[2 * i + 1] = e.v;
            head_[2 * i + 1] = e.u;
        }
        out_offsets_.assign(n_ + 1, 0);
        for (auto t : tail_) ++out_offsets_[t + 1];
        for (std::size_t v = 0; v < n_; ++v) out_offsets_[v + 1] += out_offsets_[v];
        out_edges_.resize(2 * m);
        std::vector<std::size_t> fill(out_offsets_.begin(), out_offsets_.end() - 1);
        for (DirectedEdge e = 0; e < 2 * m; ++e) out_edges_[fill[tail_[e]]++] = e;
    }

    std::size_t count() const noexcept { return tail_.size(); }
    std::size_t vertex_count() const noexcept { return n_; }

    Vertex tail(DirectedEdge e) const { return tail_[e]; }
    Vertex head(DirectedEdge e) const { return head_[e]; }
    static constexpr DirectedEdge rev(DirectedEdge e) noexcept { return e ^ 1U; }

    /// Directed edges leaving v, in increasing id order.
    std::span<const DirectedEdge> out_edges(Vertex v) const {
        return {out_edges_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
    }

private:
    std::size_t n_ = 0;
    std::vector<Vertex> tail_;
    std::vector<Vertex> head_;
    std::vector<std::size_t> out_offsets_;
    std::vector<DirectedEdge> out_edges_;
};

inline DirectedEdgeIndex build_edge_index(const Graph& g) { return DirectedEdgeIndex(g); }

/// y = B x for the Hashimoto (non-backtracking) matrix B, where
/// B[(i->j), (j->l)] = 1 for l != i.
///
/// Uses (Bx)[e] = S[head(e)] - x[rev(e)] with S[v] the sum of x over edges
/// leaving v, accumulated in out-edge id order. O(n + m) work.
inline void hashimoto_apply(const DirectedEdgeIndex& idx, std::span<const double> x, std::span<double> y,
                            std::vector<double>& vertex_sums) {
    if (x.size() != idx.count() || y.size() != idx.count())
        throw InputError("hashimoto_apply: vector length " + std::to_string(x.size()) + "/" +
                         std::to_string(y.size()) + " does not match " + std::to_string(idx.count()) +
                         " directed edges");
    vertex_sums.assign(idx.vertex_count(), 0.0);
    for (Vertex v = 0; v < idx.vertex_count(); ++v) {
        double s = 0.0;
        for (DirectedEdge f : idx.out_edges(v)) s += x[f];
        vertex_sums[v] = s;
    }
    for (DirectedEdge e = 0; e < idx.count(); ++e) y[e] = vertex_sums[idx.head(e)] - x[DirectedEdgeIndex::rev(e)];
}

inline std::vector<double> hashimoto_apply(const DirectedEdgeIndex& idx, std::span<const double> x) {
    std::vector<double> y(idx.count());
    std::vector<double> sums;
    hashimoto_apply(idx, x, y, sums);
    return y;
}

} // namespace nbperc
