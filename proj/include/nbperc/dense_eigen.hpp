#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "nbperc/error.hpp"

namespace nbperc {

/// Spectral radius of a small dense real matrix via the nonsymmetric QR
/// eigensolver.
///
/// A Perron root that is defective (e.g. the double root at 1 of a cycle's
/// companion pencil) is only resolved to about sqrt(machine eps) by any
/// eigensolver, but the mean of the perturbed cluster is well conditioned.
/// So the result is the modulus of the mean of all eigenvalues within
/// `cluster_radius` (relative) of the real eigenvalue of largest modulus.
inline double dense_spectral_radius(const Eigen::MatrixXd& a, double cluster_radius = 1e-5) {
    if (a.rows() != a.cols()) throw InputError("dense_spectral_radius: matrix is not square");
    if (a.rows() == 0) return 0.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw NumericError("dense eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    double top = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) top = std::max(top, std::abs(ev[i]));
    if (top == 0.0) return 0.0;
    const double radius = cluster_radius * std::max(1.0, top);
    // Centre the cluster on the positive real axis; a nonnegative matrix
    // always has its spectral radius as an eigenvalue.
    std::complex<double> sum = 0.0;
    int count = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (std::abs(ev[i] - std::complex<double>(top, 0.0)) <= radius) {
            sum += ev[i];
            ++count;
        }
    }
    if (count == 0) return top;
    return std::abs(sum / static_cast<double>(count));
}

} // namespace nbperc
