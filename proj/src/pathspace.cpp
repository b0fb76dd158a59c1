#include "fbmshot/pathspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fbmshot {

TimeChange::TimeChange(std::vector<std::pair<double, double>> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
    if (breakpoints_.size() < 2) {
        throw std::invalid_argument("time change needs at least the two endpoints");
    }
    if (breakpoints_.front().first != breakpoints_.front().second ||
        breakpoints_.back().first != breakpoints_.back().second) {
        throw std::invalid_argument("time change must fix both endpoints");
    }
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i].first > breakpoints_[i - 1].first) ||
            !(breakpoints_[i].second > breakpoints_[i - 1].second)) {
            throw std::invalid_argument("time change breakpoints must be strictly increasing");
        }
    }
}

double TimeChange::operator()(double t) const {
    if (t <= breakpoints_.front().first) return breakpoints_.front().second;
    if (t >= breakpoints_.back().first) return breakpoints_.back().second;
    auto it = std::upper_bound(
        breakpoints_.begin(), breakpoints_.end(), t,
        [](double v, const std::pair<double, double>& bp) { return v < bp.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo.first) / (hi.first - lo.first);
    return lo.second + w * (hi.second - lo.second);
}

namespace {

struct NodeWindow {
    std::size_t lo;  // first grid node inside [a, b]
    std::size_t hi;  // last grid node inside [a, b]
};

NodeWindow node_window(const GridPath& x, double a, double b) {
    if (!(a >= 0.0) || !(a < b) || !(b <= 1.0)) {
        throw std::invalid_argument("interval must satisfy 0 <= a < b <= 1");
    }
    const double g = static_cast<double>(x.n_points);
    const auto lo = static_cast<std::size_t>(std::ceil(a * g - 1e-9));
    const auto hi = static_cast<std::size_t>(std::floor(b * g + 1e-9));
    if (lo >= hi || hi > x.n_points) {
        throw std::invalid_argument("interval contains fewer than two grid nodes");
    }
    return {lo, hi};
}

}  // namespace

double sup_distance(const GridPath& x, const GridPath& y, double a, double b) {
    if (x.n_points != y.n_points) {
        throw std::invalid_argument("sup_distance requires a common grid");
    }
    const NodeWindow w = node_window(x, a, b);
    double best = 0.0;
    for (std::size_t j = w.lo; j <= w.hi; ++j) {
        best = std::max(best, std::abs(x.values[j] - y.values[j]));
    }
    return best;
}

std::pair<GridPath, GridPath> resample_to_common_grid(const GridPath& x,
                                                      const GridPath& y) {
    if (x.n_points == y.n_points) return {x, y};
    const std::size_t g = std::lcm(x.n_points, y.n_points);
    constexpr std::size_t kMaxRefinement = 1u << 15;
    if (g > kMaxRefinement) {
        throw std::invalid_argument(
            "grids have no common refinement within the supported resolution");
    }
    auto refine = [g](const GridPath& p) {
        std::vector<double> values(g + 1);
        const std::size_t stride = g / p.n_points;
        for (std::size_t j = 0; j <= g; ++j) values[j] = p.values[j / stride];
        return GridPath(g, std::move(values));
    };
    return {refine(x), refine(y)};
}

namespace {

// Cell-walk cost of the straight span (i0, j0) -> (i1, j1): the largest
// |x_p - y_q| over segment pairs whose open cell the line passes through.
// Overlap predicates are evaluated in exact integer arithmetic. Walks abort
// as soon as the running cost reaches `cap`.
double span_cost(const std::vector<double>& xv, const std::vector<double>& yv,
                 std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1,
                 double cap) {
    const std::int64_t di = static_cast<std::int64_t>(i1 - i0);
    const std::int64_t dj = static_cast<std::int64_t>(j1 - j0);
    double cost = 0.0;
    for (std::int64_t u = 0; u < di; ++u) {
        // y-cell offsets r with r < (u+1) dj / di and r + 1 > u dj / di.
        const std::int64_t num_lo = u * dj;
        const std::int64_t num_hi = (u + 1) * dj;
        const std::int64_t r_lo = num_lo / di;
        const std::int64_t r_hi = (num_hi % di == 0) ? num_hi / di - 1 : num_hi / di;
        const double xval = xv[i0 + static_cast<std::size_t>(u)];
        for (std::int64_t r = r_lo; r <= r_hi; ++r) {
            const double d = std::abs(xval - yv[j0 + static_cast<std::size_t>(r)]);
            if (d > cost) {
                cost = d;
                if (cost >= cap) return cost;
            }
        }
    }
    return cost;
}

struct J1Lattice {
    std::vector<double> xv, yv;  // node values restricted to the window
    double cell_width;           // 1 / n_points in time units
    std::size_t lo;              // absolute index of the window start
};

J1Lattice make_lattice(const GridPath& x, const GridPath& y, double a, double b) {
    if (x.n_points != y.n_points) {
        throw std::invalid_argument("skorohod_j1 requires a common grid after refinement");
    }
    const NodeWindow w = node_window(x, a, b);
    J1Lattice lat;
    lat.xv.assign(x.values.begin() + w.lo, x.values.begin() + w.hi + 1);
    lat.yv.assign(y.values.begin() + w.lo, y.values.begin() + w.hi + 1);
    lat.cell_width = 1.0 / static_cast<double>(x.n_points);
    lat.lo = w.lo;
    return lat;
}

J1Result solve_j1(const J1Lattice& lat) {
    const std::size_t m = lat.xv.size() - 1;
    if (m > 4096) {
        throw std::invalid_argument("path resolution too large for the alignment search");
    }
    const double dt = lat.cell_width;
    const std::size_t stride = m + 1;

    // Upper bound from the identity change; chains through breakpoints with a
    // larger time displacement can never beat it.
    double bound = std::abs(lat.xv[m] - lat.yv[m]);
    for (std::size_t p = 0; p < m; ++p) {
        bound = std::max(bound, std::abs(lat.xv[p] - lat.yv[p]));
    }
    // Breakpoints may deviate by at most `band` nodes without exceeding the bound.
    const auto band = static_cast<std::size_t>(std::floor(bound / dt + 1e-9));

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dp(stride * stride, inf);
    std::vector<std::uint32_t> parent(stride * stride, 0);
    dp[0] = 0.0;

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = (i > band ? i - band : 0); j <= std::min(m - 1, i + band);
             ++j) {
            const double here = dp[i * stride + j];
            if (here > bound) continue;
            for (std::size_t i1 = i + 1; i1 <= m; ++i1) {
                const std::size_t j1_lo = std::max(j + 1, i1 > band ? i1 - band : 0);
                const std::size_t j1_hi = std::min(m, i1 + band);
                for (std::size_t j1 = j1_lo; j1 <= j1_hi; ++j1) {
                    if ((i1 == m) != (j1 == m)) continue;  // endpoint pairs with endpoint
                    if (std::gcd(i1 - i, j1 - j) != 1) continue;
                    const double dev =
                        static_cast<double>(j1 > i1 ? j1 - i1 : i1 - j1) * dt;
                    double cand = std::max(here, dev);
                    if (cand > bound) continue;
                    double& slot = dp[i1 * stride + j1];
                    const double cap = std::min(slot, bound + 0x1.0p-40);
                    if (cand >= cap) continue;
                    cand = std::max(cand, span_cost(lat.xv, lat.yv, i, j, i1, j1, cap));
                    if (cand < slot) {
                        slot = cand;
                        parent[i1 * stride + j1] =
                            static_cast<std::uint32_t>(i * stride + j);
                    }
                }
            }
        }
    }

    const double endpoint = std::abs(lat.xv[m] - lat.yv[m]);
    const double distance = std::max(dp[m * stride + m], endpoint);

    std::vector<std::pair<double, double>> breakpoints;
    std::size_t cur = m * stride + m;
    while (true) {
        const std::size_t i = cur / stride;
        const std::size_t j = cur % stride;
        breakpoints.emplace_back(static_cast<double>(lat.lo + i) * dt,
                                 static_cast<double>(lat.lo + j) * dt);
        if (cur == 0) break;
        cur = parent[cur];
    }
    std::reverse(breakpoints.begin(), breakpoints.end());
    return {distance, TimeChange(std::move(breakpoints))};
}

}  // namespace

J1Result skorohod_j1_alignment(const GridPath& x, const GridPath& y, double a, double b) {
    const auto [xr, yr] = resample_to_common_grid(x, y);
    return solve_j1(make_lattice(xr, yr, a, b));
}

double skorohod_j1(const GridPath& x, const GridPath& y, double a, double b) {
    return skorohod_j1_alignment(x, y, a, b).distance;
}

double uniform_modulus(const GridPath& x, double delta) {
    if (!(delta > 0.0) || !(delta <= 1.0)) {
        throw std::invalid_argument("uniform_modulus requires delta in (0, 1]");
    }
    const std::size_t n = x.n_points;
    const auto w = static_cast<std::size_t>(
        std::floor(delta * static_cast<double>(n) + 1e-9));
    if (w == 0) return 0.0;

    std::deque<std::size_t> maxq, minq;
    double best = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        while (!maxq.empty() && x.values[maxq.back()] <= x.values[j]) maxq.pop_back();
        maxq.push_back(j);
        while (!minq.empty() && x.values[minq.back()] >= x.values[j]) minq.pop_back();
        minq.push_back(j);
        if (j >= w) {
            while (maxq.front() + w < j) maxq.pop_front();
            while (minq.front() + w < j) minq.pop_front();
        }
        best = std::max(best, x.values[maxq.front()] - x.values[minq.front()]);
    }
    return best;
}

namespace {

// Is there a partition into grid-node intervals of length > delta whose
// within-interval oscillations all stay <= c? Sliding two-pointer scan: the
// earliest feasible left end of a piece ending at node j is monotone in j.
bool partition_feasible(const std::vector<double>& v, std::size_t n,
                        std::size_t min_len, double c) {
    std::vector<char> reachable(n + 1, 0);
    std::vector<std::size_t> reach_prefix(n + 2, 0);  // counts of reachable <= idx
    reachable[0] = 1;
    reach_prefix[1] = 1;

    std::deque<std::size_t> maxq, minq;
    std::size_t window_lo = 0;  // smallest i with osc(v[i..j-1]) <= c
    for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t seg = j - 1;  // segment values v[i..j-1] live in piece [i, j)
        while (!maxq.empty() && v[maxq.back()] <= v[seg]) maxq.pop_back();
        maxq.push_back(seg);
        while (!minq.empty() && v[minq.back()] >= v[seg]) minq.pop_back();
        minq.push_back(seg);
        while (v[maxq.front()] - v[minq.front()] > c) {
            if (maxq.front() == window_lo) maxq.pop_front();
            if (minq.front() == window_lo) minq.pop_front();
            ++window_lo;
        }
        if (j >= min_len) {
            const std::size_t cut_hi = j - min_len;  // latest admissible left cut
            if (cut_hi >= window_lo &&
                reach_prefix[cut_hi + 1] > (window_lo == 0 ? 0 : reach_prefix[window_lo])) {
                reachable[j] = 1;
            }
        }
        reach_prefix[j + 1] = reach_prefix[j] + (reachable[j] ? 1 : 0);
    }
    return reachable[n] != 0;
}

}  // namespace

double partition_modulus(const GridPath& x, double delta) {
    if (!(delta > 0.0) || delta >= 1.0) {
        throw std::invalid_argument("partition_modulus requires delta in (0, 1)");
    }
    const std::size_t n = x.n_points;
    const auto min_len = static_cast<std::size_t>(
        std::floor(delta * static_cast<double>(n) + 1e-9)) + 1;  // strict spacing

    // The answer is an oscillation of some node window, hence a difference of
    // two node values; bisect over the sorted candidate set.
    std::vector<double> candidates;
    candidates.reserve(x.values.size() * (x.values.size() - 1) / 2 + 1);
    candidates.push_back(0.0);
    for (std::size_t i = 0; i < x.values.size(); ++i) {
        for (std::size_t j = i + 1; j < x.values.size(); ++j) {
            const double d = std::abs(x.values[i] - x.values[j]);
            if (d > 0.0) candidates.push_back(d);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::size_t lo = 0, hi = candidates.size() - 1;
    if (partition_feasible(x.values, n, min_len, candidates[lo])) return candidates[lo];
    while (lo + 1 < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (partition_feasible(x.values, n, min_len, candidates[mid])) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return candidates[hi];
}

double max_jump(const GridPath& x) {
    double best = 0.0;
    for (std::size_t j = 1; j < x.values.size(); ++j) {
        best = std::max(best, std::abs(x.values[j] - x.values[j - 1]));
    }
    return best;
}

}  // namespace fbmshot
