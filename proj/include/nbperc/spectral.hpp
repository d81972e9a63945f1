#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nbperc/dense_eigen.hpp"
#include "nbperc/edge_index.hpp"
#include "nbperc/error.hpp"
#include "nbperc/graph.hpp"
#include "nbperc/graph_ops.hpp"
#include "nbperc/power_iteration.hpp"

namespace nbperc {

struct SpectralOptions {
    double tol = 1e-10;
    std::size_t max_iter = 100000;
};

struct SpectralResult {
    double rho = 0.0;
    /// Operator applications, summed over components.
    std::size_t iterations = 0;
    bool converged = false;
    /// The operator is nilpotent (backbone empty, rho = 0).
    bool nilpotent = false;
    double residual = 0.0;
    /// Connected components of the backbone that were iterated separately.
    std::size_t components = 0;
};

namespace detail {

// B restricted to a forest is nilpotent; counting non-backtracking walks
// from the all-ones vector reaches zero after at most 2m applications.
inline std::size_t nilpotency_probe(const Graph& g) {
    DirectedEdgeIndex idx(g);
    std::vector<double> x(idx.count(), 1.0), y(idx.count()), sums;
    for (std::size_t it = 0; it <= idx.count(); ++it) {
        double norm = 0.0;
        for (double v : x) norm = std::max(norm, std::abs(v));
        if (norm < 1e-250) return it;
        hashimoto_apply(idx, x, y, sums);
        std::swap(x, y);
    }
    throw NumericError("non-backtracking operator of a forest failed to vanish within 2m steps");
}

} // namespace detail

/// Spectral radius of the Hashimoto matrix, rho(F_G).
///
/// The graph is first reduced to its backbone, which leaves rho unchanged:
/// pendant trees carry only transient non-backtracking states. An empty
/// backbone means g is a forest, B is nilpotent and rho = 0. Otherwise each
/// backbone component is iterated matrix-free and the largest radius wins.
inline SpectralResult nb_spectral_radius(const Graph& g, SpectralOptions opt = {}) {
    if (!(opt.tol > 0.0)) throw InputError("tolerance must be positive");
    SpectralResult out;
    auto core = backbone(g);
    if (core.graph.order() == 0) {
        out.nilpotent = true;
        out.converged = true;
        out.iterations = detail::nilpotency_probe(g);
        return out;
    }
    out.converged = true;
    for (const auto& part : split_components(core.graph)) {
        DirectedEdgeIndex idx(part.graph);
        std::vector<double> sums;
        auto est = perron_power_iteration(
            idx.count(),
            [&](std::span<const double> x, std::span<double> y) { hashimoto_apply(idx, x, y, sums); },
            opt.tol, opt.max_iter);
        ++out.components;
        out.iterations += est.iterations;
        out.converged = out.converged && est.converged;
        if (out.components == 1 || est.rho > out.rho) {
            out.rho = est.rho;
            out.residual = est.residual;
        }
    }
    return out;
}

inline void adjacency_apply(const Graph& g, std::span<const double> x, std::span<double> y) {
    for (Vertex v = 0; v < g.order(); ++v) {
        double s = 0.0;
        for (Vertex w : g.neighbors(v)) s += x[w];
        y[v] = s;
    }
}

/// Largest adjacency eigenvalue rho(A), iterated per connected component.
inline SpectralResult adjacency_spectral(const Graph& g, SpectralOptions opt = {}) {
    if (g.size() == 0) throw InputError("adjacency spectral radius of a graph without edges");
    if (!(opt.tol > 0.0)) throw InputError("tolerance must be positive");
    SpectralResult out;
    out.converged = true;
    for (const auto& part : split_components(g)) {
        if (part.graph.size() == 0) continue;
        auto est = perron_power_iteration(
            part.graph.order(),
            [&](std::span<const double> x, std::span<double> y) { adjacency_apply(part.graph, x, y); }, opt.tol,
            opt.max_iter);
        ++out.components;
        out.iterations += est.iterations;
        out.converged = out.converged && est.converged;
        if (out.components == 1 || est.rho > out.rho) {
            out.rho = est.rho;
            out.residual = est.residual;
        }
    }
    return out;
}

inline double adjacency_spectral_radius(const Graph& g, double tol = 1e-10) {
    return adjacency_spectral(g, {tol, 100000}).rho;
}

/// Hashimoto spectral radius from the vertex-space quadratic eigenproblem
/// [lambda^2 I + (D - I)] y = lambda A y, linearized as the 2n x 2n
/// companion map (y, z) -> (A y + (I - D) z, y).
///
/// The companion spectrum is the Hashimoto spectrum with the +-1 copies
/// adjusted, so for a graph with a cycle the answer is
/// max(largest modulus, 1). Dense, hence the order cap.
inline double companion_spectral_radius(const Graph& g, std::size_t max_order = 2000) {
    const std::size_t n = g.order();
    if (n > max_order)
        throw InputError("companion_spectral_radius: order " + std::to_string(n) + " exceeds dense cap " +
                         std::to_string(max_order) + "; use nb_spectral_radius (matrix-free) instead");
    const auto nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * nn, 2 * nn);
    for (const auto& e : g.edges()) {
        c(e.u, e.v) = 1.0;
        c(e.v, e.u) = 1.0;
    }
    for (Eigen::Index v = 0; v < nn; ++v) {
        c(v, nn + v) = 1.0 - static_cast<double>(g.degree(static_cast<Vertex>(v)));
        c(nn + v, v) = 1.0;
    }
    double rho = dense_spectral_radius(c);
    if (!is_forest(g)) rho = std::max(rho, 1.0);
    return rho;
}

} // namespace nbperc
