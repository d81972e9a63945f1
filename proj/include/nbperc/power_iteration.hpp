#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <span>
#include <vector>

namespace nbperc {

struct PerronEstimate {
    /// Estimate of rho(B) for the unshifted operator.
    double rho = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// ||B x - rho x||_2 / ||x||_2 at the final iterate.
    double residual = std::numeric_limits<double>::infinity();
};

/// Power iteration on B + I for a nonnegative operator B, started from the
/// all-ones vector.
///
/// The identity shift makes every recurrent class aperiodic, so the iterate
/// cannot oscillate; rho(B + I) = rho(B) + 1. Since the start is positive
/// and B + I >= I, every iterate stays strictly positive and the
/// Collatz-Wielandt quotients min/max (Bx)_i / x_i bracket rho(B). Stops when
/// that bracket is narrower than tol, or when the Rayleigh quotient has moved
/// by less than tol (relative) over a 10-step window and the residual is
/// below tol.
template <class Apply>
PerronEstimate perron_power_iteration(std::size_t dim, Apply&& apply_b, double tol, std::size_t max_iter) {
    PerronEstimate out;
    if (dim == 0) {
        out.converged = true;
        out.residual = 0.0;
        return out;
    }
    std::vector<double> x(dim, 1.0), bx(dim);
    std::deque<double> window;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        apply_b(std::span<const double>(x), std::span<double>(bx));
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        double xx = 0.0, xbx = 0.0, ymax = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double q = bx[i] / x[i];
            lo = std::min(lo, q);
            hi = std::max(hi, q);
            xx += x[i] * x[i];
            xbx += x[i] * bx[i];
        }
        const double theta = xbx / xx;
        double rr = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            double r = bx[i] - theta * x[i];
            rr += r * r;
        }
        out.rho = theta;
        out.residual = std::sqrt(rr / xx);
        out.iterations = it;

        window.push_back(theta);
        if (window.size() > 10) window.pop_front();
        bool stalled = window.size() == 10 &&
                       std::abs(window.back() - window.front()) <= tol * std::max(1.0, std::abs(theta));
        if (hi - lo <= tol || (stalled && out.residual <= tol)) {
            out.converged = true;
            return out;
        }

        for (std::size_t i = 0; i < dim; ++i) {
            bx[i] += x[i];
            ymax = std::max(ymax, bx[i]);
        }
        for (std::size_t i = 0; i < dim; ++i) x[i] = bx[i] / ymax;
    }
    return out;
}

} // namespace nbperc
