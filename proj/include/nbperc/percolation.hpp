#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "nbperc/error.hpp"
#include "nbperc/graph.hpp"
#include "nbperc/union_find.hpp"

namespace nbperc {

struct SweepOptions {
    /// Points of the uniform p-grid on [0, 1] for canonical curves.
    std::size_t grid_points = 201;
    /// Worker threads; results do not depend on this.
    std::size_t threads = 1;
};

/// Newman-Ziff site percolation statistics.
///
/// Microcanonical arrays are indexed by occupied count k = 0..n. Canonical
/// arrays are indexed by grid point and are the binomial mixtures of the
/// per-trial microcanonical curves; their standard errors come from the
/// spread of those per-trial mixtures.
struct SimulationResult {
    std::size_t n = 0;
    std::size_t trials = 0;
    std::uint64_t master_seed = 0;

    std::vector<double> mean_largest;
    std::vector<double> stderr_largest;
    std::vector<double> mean_chi;
    std::vector<double> stderr_chi;

    std::vector<double> grid;
    std::vector<double> canon_largest;
    std::vector<double> canon_largest_stderr;
    std::vector<double> canon_chi;
    std::vector<double> canon_chi_stderr;
};

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of trial t: mix64(master + 0x9e3779b97f4a7c15 * (t + 1)).
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) noexcept {
    return mix64(master_seed + 0x9e3779b97f4a7c15ULL * (trial + 1));
}

/// Binomial(n, p) weights over occupied counts, truncated where they fall
/// below e^-50 of the mode and renormalized.
struct BinomialWindow {
    std::size_t first = 0;
    std::vector<double> weights;
};

inline BinomialWindow binomial_window(std::size_t n, double p) {
    BinomialWindow w;
    if (p <= 0.0) {
        w.first = 0;
        w.weights = {1.0};
        return w;
    }
    if (p >= 1.0) {
        w.first = n;
        w.weights = {1.0};
        return w;
    }
    const double nn = static_cast<double>(n);
    const double lp = std::log(p), lq = std::log1p(-p), lgn = std::lgamma(nn + 1.0);
    auto logw = [&](std::size_t k) {
        const double kk = static_cast<double>(k);
        return lgn - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0) + kk * lp + (nn - kk) * lq;
    };
    auto mode = static_cast<std::size_t>(std::min(nn, std::floor((nn + 1.0) * p)));
    const double top = logw(mode);
    std::size_t lo = mode, hi = mode;
    while (lo > 0 && logw(lo - 1) > top - 50.0) --lo;
    while (hi < n && logw(hi + 1) > top - 50.0) ++hi;
    w.first = lo;
    w.weights.resize(hi - lo + 1);
    double sum = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) sum += w.weights[k - lo] = std::exp(logw(k) - top);
    for (auto& x : w.weights) x /= sum;
    return w;
}

/// Mixes a microcanonical curve over the grid.
inline std::vector<double> canonical_curve(const std::vector<double>& micro, const std::vector<BinomialWindow>& ws) {
    std::vector<double> out(ws.size());
    for (std::size_t g = 0; g < ws.size(); ++g) {
        double s = 0.0;
        for (std::size_t i = 0; i < ws[g].weights.size(); ++i) s += ws[g].weights[i] * micro[ws[g].first + i];
        out[g] = s;
    }
    return out;
}

namespace detail {

struct SweepAccum {
    std::vector<double> largest, largest_sq, chi, chi_sq;
    std::vector<double> c_largest, c_largest_sq, c_chi, c_chi_sq;

    SweepAccum(std::size_t n, std::size_t grid)
        : largest(n + 1), largest_sq(n + 1), chi(n + 1), chi_sq(n + 1), c_largest(grid), c_largest_sq(grid),
          c_chi(grid), c_chi_sq(grid) {}

    void add(const SweepAccum& o) {
        auto plus = [](std::vector<double>& a, const std::vector<double>& b) {
            for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        };
        plus(largest, o.largest);
        plus(largest_sq, o.largest_sq);
        plus(chi, o.chi);
        plus(chi_sq, o.chi_sq);
        plus(c_largest, o.c_largest);
        plus(c_largest_sq, o.c_largest_sq);
        plus(c_chi, o.c_chi);
        plus(c_chi_sq, o.c_chi_sq);
    }
};

// One Newman-Ziff pass: occupy vertices in random order and record the
// largest-cluster fraction and susceptibility after each addition.
inline void sweep_trial(const Graph& g, std::uint64_t seed, std::vector<double>& largest, std::vector<double>& chi) {
    const std::size_t n = g.order();
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    UnionFind uf(n);
    std::vector<bool> open(n, false);
    const double inv_n = 1.0 / static_cast<double>(n);
    double sum_sq = 0.0;
    std::size_t big = 0;
    largest[0] = 0.0;
    chi[0] = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        Vertex v = order[k - 1];
        open[v] = true;
        sum_sq += 1.0;
        big = std::max<std::size_t>(big, 1);
        for (Vertex w : g.neighbors(v)) {
            if (!open[w]) continue;
            auto a = uf.find(v), b = uf.find(w);
            if (a == b) continue;
            const auto sa = static_cast<double>(uf.set_size(a));
            const auto sb = static_cast<double>(uf.set_size(b));
            auto root = uf.unite(a, b);
            sum_sq += 2.0 * sa * sb;
            big = std::max(big, uf.set_size(root));
        }
        const auto bigd = static_cast<double>(big);
        largest[k] = bigd * inv_n;
        chi[k] = (sum_sq - bigd * bigd) * inv_n;
    }
}

} // namespace detail

/// Runs `trials` independent Newman-Ziff sweeps. Trials are grouped in
/// fixed blocks of 8 and reduced in trial order, so the result is
/// bit-identical for any thread count.
inline SimulationResult site_percolation_sweep(const Graph& g, std::size_t trials, std::uint64_t master_seed,
                                               SweepOptions opt = {}) {
    if (g.empty()) throw InputError("site_percolation_sweep: empty graph");
    if (trials < 1) throw InputError("site_percolation_sweep: need at least one trial");
    if (opt.grid_points < 2) throw InputError("site_percolation_sweep: need at least two grid points");
    const std::size_t n = g.order();
    const std::size_t grid = opt.grid_points;

    SimulationResult r;
    r.n = n;
    r.trials = trials;
    r.master_seed = master_seed;
    r.grid.resize(grid);
    std::vector<BinomialWindow> windows(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        r.grid[i] = static_cast<double>(i) / static_cast<double>(grid - 1);
        windows[i] = binomial_window(n, r.grid[i]);
    }

    constexpr std::size_t block = 8;
    const std::size_t blocks = (trials + block - 1) / block;
    std::vector<detail::SweepAccum> partial(blocks, detail::SweepAccum(n, grid));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        std::vector<double> largest(n + 1), chi(n + 1);
        for (std::size_t b; (b = next.fetch_add(1)) < blocks;) {
            auto& acc = partial[b];
            for (std::size_t t = b * block; t < std::min(trials, (b + 1) * block); ++t) {
                detail::sweep_trial(g, trial_seed(master_seed, t), largest, chi);
                for (std::size_t k = 0; k <= n; ++k) {
                    acc.largest[k] += largest[k];
                    acc.largest_sq[k] += largest[k] * largest[k];
                    acc.chi[k] += chi[k];
                    acc.chi_sq[k] += chi[k] * chi[k];
                }
                auto cl = canonical_curve(largest, windows);
                auto cc = canonical_curve(chi, windows);
                for (std::size_t i = 0; i < grid; ++i) {
                    acc.c_largest[i] += cl[i];
                    acc.c_largest_sq[i] += cl[i] * cl[i];
                    acc.c_chi[i] += cc[i];
                    acc.c_chi_sq[i] += cc[i] * cc[i];
                }
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(opt.threads, 1, blocks);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    detail::SweepAccum total(n, grid);
    for (const auto& p : partial) total.add(p);

    const auto tt = static_cast<double>(trials);
    auto finish = [&](const std::vector<double>& s, const std::vector<double>& sq, std::vector<double>& mean,
                      std::vector<double>& se) {
        mean.resize(s.size());
        se.resize(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            mean[i] = s[i] / tt;
            double var = trials > 1 ? std::max(0.0, (sq[i] - tt * mean[i] * mean[i]) / (tt - 1.0)) : 0.0;
            se[i] = std::sqrt(var / tt);
        }
    };
    finish(total.largest, total.largest_sq, r.mean_largest, r.stderr_largest);
    finish(total.chi, total.chi_sq, r.mean_chi, r.stderr_chi);
    finish(total.c_largest, total.c_largest_sq, r.canon_largest, r.canon_largest_stderr);
    finish(total.c_chi, total.c_chi_sq, r.canon_chi, r.canon_chi_stderr);
    return r;
}

enum class ThresholdCriterion { susceptibility_peak, fraction_crossing };

inline std::string_view to_string(ThresholdCriterion c) {
    return c == ThresholdCriterion::susceptibility_peak ? "susceptibility-peak" : "fraction-crossing";
}

struct ThresholdEstimate {
    double p_hat = 0.0;
    double uncertainty = 0.0;
    ThresholdCriterion criterion = ThresholdCriterion::susceptibility_peak;
};

/// Finite-size threshold heuristics on the canonical curves.
///
/// susceptibility-peak: argmax of chi over the grid; uncertainty is the
/// half-width of the region where chi >= 0.95 * peak (at least half a grid
/// step). fraction-crossing: first p where the mean largest-cluster fraction
/// reaches `level`; uncertainty is one grid step.
inline ThresholdEstimate estimate_threshold(const SimulationResult& r, ThresholdCriterion criterion,
                                            double level = 0.1) {
    if (r.trials < 10) throw InputError("estimate_threshold needs a sweep with at least 10 trials");
    const auto& x = r.grid;
    const std::size_t g = x.size();
    const double step = x[1] - x[0];
    ThresholdEstimate est;
    est.criterion = criterion;

    if (criterion == ThresholdCriterion::susceptibility_peak) {
        const auto& y = r.canon_chi;
        auto peak = static_cast<std::size_t>(std::max_element(y.begin(), y.end()) - y.begin());
        if (y[peak] <= 0.0 || peak == 0 || peak + 1 == g)
            throw NumericError("susceptibility curve has no interior peak; use a larger graph or finer grid");
        const double cut = 0.95 * y[peak];
        auto crossing = [&](std::size_t inside, std::size_t outside) {
            double t = (y[inside] - cut) / (y[inside] - y[outside]);
            return x[inside] + t * (x[outside] - x[inside]);
        };
        std::size_t i = peak;
        while (i > 0 && y[i - 1] >= cut) --i;
        double left = i > 0 ? crossing(i, i - 1) : x[0];
        std::size_t j = peak;
        while (j + 1 < g && y[j + 1] >= cut) ++j;
        double right = j + 1 < g ? crossing(j, j + 1) : x[g - 1];
        est.p_hat = x[peak];
        est.uncertainty = std::max(0.5 * (right - left), 0.5 * step);
        return est;
    }

    if (!(level > 0.0 && level < 1.0)) throw InputError("fraction-crossing level must lie in (0, 1)");
    const auto& y = r.canon_largest;
    for (std::size_t i = 1; i < g; ++i) {
        if (y[i] >= level) {
            double t = (level - y[i - 1]) / (y[i] - y[i - 1]);
            est.p_hat = x[i - 1] + t * step;
            est.uncertainty = step;
            return est;
        }
    }
    throw NumericError("largest-cluster fraction never reaches the crossing level");
}

/// CSV export: canonical curves over p, or microcanonical curves over the
/// occupied fraction k/n.
inline void write_csv(std::ostream& os, const SimulationResult& r, bool canonical = true) {
    os << std::setprecision(12);
    if (canonical) {
        os << "p,mean_largest_fraction,mean_susceptibility,stderr_largest_fraction,stderr_susceptibility\n";
        for (std::size_t i = 0; i < r.grid.size(); ++i)
            os << r.grid[i] << ',' << r.canon_largest[i] << ',' << r.canon_chi[i] << ','
               << r.canon_largest_stderr[i] << ',' << r.canon_chi_stderr[i] << '\n';
    } else {
        os << "occupied_fraction,mean_largest_fraction,mean_susceptibility,stderr_largest_fraction,"
              "stderr_susceptibility\n";
        for (std::size_t k = 0; k <= r.n; ++k)
            os << static_cast<double>(k) / static_cast<double>(r.n) << ',' << r.mean_largest[k] << ','
               << r.mean_chi[k] << ',' << r.stderr_largest[k] << ',' << r.stderr_chi[k] << '\n';
    }
}

} // namespace nbperc
