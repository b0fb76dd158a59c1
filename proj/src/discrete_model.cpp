#include "fbmshot/discrete_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace fbmshot {

WalkSpec::WalkSpec(WalkIncrements inc, Hurst h, std::size_t steps)
    : increments(inc), hurst(h), n(steps) {
    if (n < 1) throw std::invalid_argument("walk length n must be >= 1");
    if (increments == WalkIncrements::IidGaussian && hurst.value() != 0.5) {
        throw std::invalid_argument("iid-gaussian increments require H = 0.5");
    }
}

namespace {

// Linear-process coefficients a_j = (j+1)^{H - 3/2}, j = 0..n, scaled so that
// Var(S_n) = n^{2H} exactly at this n. The weight of innovation xi_m in S_n is
// sum of a_{t-m} over t in [max(1, m), n] (truncation lag J = n), a prefix-sum
// range of the unnormalized coefficients.
std::vector<double> linear_coefficients(Hurst hurst, std::size_t n) {
    const double expo = hurst.value() - 1.5;
    std::vector<double> a(n + 1);
    for (std::size_t j = 0; j <= n; ++j) a[j] = std::pow(static_cast<double>(j + 1), expo);
    std::vector<double> prefix(n + 2, 0.0);
    for (std::size_t j = 0; j <= n; ++j) prefix[j + 1] = prefix[j] + a[j];

    double var = 0.0;
    // Innovations xi_m for m = 1-n .. n contribute to X_t, t = 1..n.
    for (long m = 1 - static_cast<long>(n); m <= static_cast<long>(n); ++m) {
        const long t_lo = std::max<long>(1, m);
        const long t_hi = static_cast<long>(n);
        const long j_lo = t_lo - m;           // smallest lag used
        const long j_hi = std::min<long>(t_hi - m, static_cast<long>(n));
        if (j_lo > j_hi) continue;
        const double w = prefix[j_hi + 1] - prefix[j_lo];
        var += w * w;
    }
    const double norm = std::pow(static_cast<double>(n), hurst.value()) / std::sqrt(var);
    for (auto& c : a) c *= norm;
    return a;
}

constexpr std::uint64_t kWalkLane = 0;
constexpr std::uint64_t kNoiseLane = 1;

}  // namespace

WalkSimulator::WalkSimulator(WalkSpec spec, NoiseParams noise)
    : spec_(spec), noise_(noise) {
    switch (spec_.increments) {
        case WalkIncrements::IidGaussian:
            break;
        case WalkIncrements::Fgn:
            fgn_ = std::make_shared<const FgnSampler>(spec_.hurst, spec_.n);
            break;
        case WalkIncrements::LinearLongMemory:
            linear_coeff_ = linear_coefficients(spec_.hurst, spec_.n);
            break;
    }
}

PerturbedWalk WalkSimulator::simulate(std::uint64_t seed, std::uint64_t replicate) const {
    const std::size_t n = spec_.n;
    Rng walk_rng = Rng::stream(seed, replicate, kWalkLane);
    Rng noise_rng = Rng::stream(seed, replicate, kNoiseLane);

    PerturbedWalk w;
    w.s.resize(n + 1);
    w.s[0] = 0.0;

    switch (spec_.increments) {
        case WalkIncrements::IidGaussian: {
            double sum = 0.0;
            for (std::size_t i = 1; i <= n; ++i) {
                sum += walk_rng.normal();
                w.s[i] = sum;
            }
            break;
        }
        case WalkIncrements::Fgn: {
            const std::vector<double> inc = fgn_->sample(walk_rng);
            double sum = 0.0;
            for (std::size_t i = 1; i <= n; ++i) {
                sum += inc[i - 1];
                w.s[i] = sum;
            }
            break;
        }
        case WalkIncrements::LinearLongMemory: {
            // X_t = sum_{j=0..n} c_j xi_{t-j}; innovations xi_{1-n} .. xi_n
            // live at offsets (index + n - 1) in [0, 2n).
            std::vector<double> xi(2 * n);
            for (auto& z : xi) z = walk_rng.normal();
            double sum = 0.0;
            for (std::size_t t = 1; t <= n; ++t) {
                double x = 0.0;
                for (std::size_t j = 0; j <= n; ++j) {
                    x += linear_coeff_[j] * xi[t + n - 1 - j];
                }
                sum += x;
                w.s[t] = sum;
            }
            break;
        }
    }

    w.y = draw_perturbations(noise_, n + 1, noise_rng);
    w.y[0] = 0.0;
    return w;
}

PerturbedWalk simulate_walk(const WalkSpec& spec, const NoiseParams& noise,
                            std::uint64_t seed) {
    return WalkSimulator(spec, noise).simulate(seed);
}

std::vector<double> max_process(const PerturbedWalk& w) {
    const std::size_t n = w.n();
    std::vector<double> m(n + 1);
    m[0] = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= n; ++i) {
        best = std::max(best, w.s[i] + w.y[i]);
        m[i] = best;
    }
    return m;
}

GridPath scaled_path(const std::vector<double>& m, std::size_t n, Hurst hurst) {
    if (m.size() != n + 1) {
        throw std::invalid_argument("scaled_path needs a sequence of length n + 1");
    }
    const double scale = std::pow(static_cast<double>(n), -hurst.value());
    std::vector<double> values(n + 1);
    for (std::size_t j = 0; j <= n; ++j) values[j] = m[j] * scale;
    return GridPath(n, std::move(values));
}

GridPath truncated_scaled_path(const PerturbedWalk& w, std::size_t k, Hurst hurst) {
    const std::size_t n = w.n();
    if (k < 1 || k > n) {
        throw std::invalid_argument("truncation rank k must satisfy 1 <= k <= n");
    }
    std::vector<double> top(w.y.begin() + 1, w.y.end());
    std::nth_element(top.begin(), top.begin() + (k - 1), top.end(),
                     std::greater<double>());
    const double cutoff = top[k - 1];

    PerturbedWalk truncated;
    truncated.s = w.s;
    truncated.y.resize(n + 1);
    truncated.y[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        truncated.y[i] = w.y[i] >= cutoff ? w.y[i] : 0.0;
    }
    return scaled_path(max_process(truncated), n, hurst);
}

std::pair<GridPath, GridPath> one_sided_paths(const PerturbedWalk& w, Hurst hurst) {
    const std::size_t n = w.n();
    const double scale = std::pow(static_cast<double>(n), -hurst.value());
    std::vector<double> lower(n + 1), upper(n + 1);
    double best_lower = 0.0;  // i = 0 term: (s_0 + y_0) 1{y_0 >= 0} = 0
    double best_upper = 0.0;
    lower[0] = upper[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const bool nonneg = w.y[i] >= 0.0;
        if (nonneg) best_lower = std::max(best_lower, w.s[i] + w.y[i]);
        best_upper = std::max(best_upper, w.s[i] + (nonneg ? w.y[i] : 0.0));
        lower[i] = best_lower * scale;
        upper[i] = best_upper * scale;
    }
    return {GridPath(n, std::move(lower)), GridPath(n, std::move(upper))};
}

GridPath sandwich_middle_path(const PerturbedWalk& w, Hurst hurst) {
    const std::size_t n = w.n();
    std::vector<double> m = max_process(w);
    for (auto& v : m) v = std::max(v, 0.0);
    return scaled_path(m, n, hurst);
}

std::size_t longest_nonneg_gap(const std::vector<double>& y) {
    if (y.empty() || y[0] != 0.0) {
        throw std::invalid_argument("perturbation sequence must start with y_0 = 0");
    }
    const std::size_t n = y.size() - 1;
    std::size_t gap = 0;
    std::size_t last = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (y[i] >= 0.0) {
            gap = std::max(gap, i - last);
            last = i;
        }
    }
    return std::max(gap, n - last);
}

}  // namespace fbmshot
