// Test-only brute-force oracles and reference laws. These deliberately avoid
// the production algorithms: the J1 oracle enumerates every grid-aligned time
// change, the partition oracle enumerates every cut subset, and the reference
// CDFs come from closed forms or high-precision summation.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "fbmshot/rng.hpp"
#include "fbmshot/types.hpp"

namespace oracles {

inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

/// CDF of sup_{[0,1]} B for standard Brownian motion (reflection principle).
inline double reflection_sup_cdf(double x) {
    if (x <= 0.0) return 0.0;
    return 2.0 * normal_cdf(x) - 1.0;
}

/// Exact overlap predicate for the straight span (i0,j0) -> (i1,j1): does the
/// open cell (p, p+1) x (q, q+1) meet the line? Integer arithmetic only.
inline bool span_overlaps_cell(std::int64_t i0, std::int64_t j0, std::int64_t i1,
                               std::int64_t j1, std::int64_t p, std::int64_t q) {
    const std::int64_t di = i1 - i0;
    const std::int64_t dj = j1 - j0;
    if (p < i0 || p >= i1) return false;
    // lambda(p) < q + 1  and  lambda(p + 1) > q, scaled by di.
    return (p - i0) * dj < (q + 1 - j0) * di && (p + 1 - i0) * dj > (q - j0) * di;
}

/// Cost of one chain of matched grid nodes under the J1 objective.
inline double chain_cost(const std::vector<double>& xv, const std::vector<double>& yv,
                         const std::vector<std::pair<std::size_t, std::size_t>>& chain,
                         double cell_width) {
    double cost = std::abs(xv.back() - yv.back());
    for (const auto& [i, j] : chain) {
        const double dev = (j > i ? j - i : i - j) * cell_width;
        cost = std::max(cost, dev);
    }
    const std::size_t m = xv.size() - 1;
    for (std::size_t s = 0; s + 1 < chain.size(); ++s) {
        const auto [i0, j0] = chain[s];
        const auto [i1, j1] = chain[s + 1];
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = 0; q < m; ++q) {
                if (span_overlaps_cell(static_cast<std::int64_t>(i0),
                                       static_cast<std::int64_t>(j0),
                                       static_cast<std::int64_t>(i1),
                                       static_cast<std::int64_t>(j1),
                                       static_cast<std::int64_t>(p),
                                       static_cast<std::int64_t>(q))) {
                    cost = std::max(cost, std::abs(xv[p] - yv[q]));
                }
            }
        }
    }
    return cost;
}

/// Minimum over every strictly increasing chain from (0,0) to (m,m) by full
/// enumeration; feasible for grids up to ~8 cells.
inline double j1_exhaustive(const fbmshot::GridPath& x, const fbmshot::GridPath& y) {
    const std::size_t m = x.n_points;
    const std::vector<double>& xv = x.values;
    const std::vector<double>& yv = y.values;
    const double cell_width = 1.0 / static_cast<double>(m);

    double best = std::numeric_limits<double>::infinity();
    std::vector<std::pair<std::size_t, std::size_t>> chain = {{0, 0}};
    auto recurse = [&](auto&& self, std::size_t i, std::size_t j) -> void {
        if (i == m && j == m) {
            best = std::min(best, chain_cost(xv, yv, chain, cell_width));
            return;
        }
        for (std::size_t i1 = i + 1; i1 <= m; ++i1) {
            for (std::size_t j1 = j + 1; j1 <= m; ++j1) {
                if ((i1 == m) != (j1 == m)) continue;
                chain.emplace_back(i1, j1);
                self(self, i1, j1);
                chain.pop_back();
            }
        }
    };
    recurse(recurse, 0, 0);
    return best;
}

/// Minimum partition oscillation by enumerating every subset of interior cut
/// nodes; pieces are [cut, next_cut) with strict length > delta.
inline double partition_exhaustive(const fbmshot::GridPath& x, double delta) {
    const std::size_t n = x.n_points;
    const auto min_len = static_cast<std::size_t>(
        std::floor(delta * static_cast<double>(n) + 1e-9)) + 1;
    double best = std::numeric_limits<double>::infinity();
    const std::uint32_t masks = n > 1 ? (1u << (n - 1)) : 1;
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        std::vector<std::size_t> cuts = {0};
        for (std::size_t b = 0; b + 1 < n; ++b) {
            if (mask & (1u << b)) cuts.push_back(b + 1);
        }
        cuts.push_back(n);
        bool ok = true;
        double worst = 0.0;
        for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
            if (cuts[c + 1] - cuts[c] < min_len) {
                ok = false;
                break;
            }
            double lo = x.values[cuts[c]], hi = lo;
            for (std::size_t j = cuts[c]; j < cuts[c + 1]; ++j) {
                lo = std::min(lo, x.values[j]);
                hi = std::max(hi, x.values[j]);
            }
            worst = std::max(worst, hi - lo);
        }
        if (ok) best = std::min(best, worst);
    }
    return best;
}

/// Random step path on [0, 1] with n cells and values in [-1, 1].
inline fbmshot::GridPath random_step_path(fbmshot::Rng& rng, std::size_t n) {
    std::vector<double> values(n + 1);
    for (auto& v : values) v = 2.0 * rng.uniform() - 1.0;
    return fbmshot::GridPath(n, std::move(values));
}

}  // namespace oracles
