#include "fbmshot/limit_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fbmshot {

namespace {

constexpr std::uint64_t kFbmLane = 0;
constexpr std::uint64_t kPointLane = 1;
constexpr double kGapClamp = 1e-12;

std::size_t snap_up(double u, std::size_t g) {
    // First grid node at or after u; u in (0, 1) never snaps to node 0.
    const auto j = static_cast<std::size_t>(
        std::ceil(u * static_cast<double>(g) - 1e-12));
    return std::clamp<std::size_t>(j, 1, g);
}

}  // namespace

GridPath limit_path_from(const GridPath& fbm, const PointSet& points, double kappa,
                         Hurst hurst) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    const std::size_t g = fbm.n_points;
    const double amp = std::pow(kappa, hurst.value());
    std::vector<double> values(g + 1);
    values[0] = fbm.values[0];

    // Shot contributions indexed by their activation node.
    std::vector<double> shot(g + 1, -std::numeric_limits<double>::infinity());
    for (const auto& p : points.points) {
        if (p.sign < 0) continue;
        const std::size_t j = snap_up(p.u, g);
        shot[j] = std::max(shot[j], fbm.values[j] + amp * p.eta);
    }

    double best = values[0];
    for (std::size_t j = 1; j <= g; ++j) {
        best = std::max(best, fbm.values[j]);
        if (shot[j] > best) best = shot[j];
        values[j] = best;
    }
    return GridPath(g, std::move(values));
}

LimitProcessSampler::LimitProcessSampler(Hurst hurst, double kappa, std::size_t k,
                                         std::size_t n_points)
    : hurst_(hurst), kappa_(kappa), k_(k), n_points_(n_points) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (n_points < 2) throw std::invalid_argument("limit sampler needs n_points >= 2");
    fgn_ = std::make_shared<const FgnSampler>(hurst, n_points);
}

LimitPathSample LimitProcessSampler::sample(std::uint64_t seed,
                                            std::uint64_t replicate) const {
    Rng fbm_rng = Rng::stream(seed, replicate, kFbmLane);
    LimitPathSample out;
    out.fbm = fbm_path_from(*fgn_, fbm_rng);

    if (k_ == 0) {
        out.path = out.fbm.running_max();
        out.truncation_bound = std::numeric_limits<double>::infinity();
        return out;
    }

    Rng point_rng = Rng::stream(seed, replicate, kPointLane);
    const NoiseParams pp = NoiseParams::pure_pareto(hurst_, kappa_);
    out.points = sample_point_process_from(pp, k_, point_rng);
    out.path = limit_path_from(out.fbm, out.points, kappa_, hurst_);
    out.truncation_bound = std::pow(kappa_, hurst_.value()) *
                           std::pow(out.points.gamma_last(), -hurst_.value());
    return out;
}

LimitPathSample sample_limit_path(Hurst hurst, double kappa, std::size_t k,
                                  std::size_t n_points, std::uint64_t seed) {
    return LimitProcessSampler(hurst, kappa, k, n_points).sample(seed);
}

namespace {

// Node ranges of a segmented query on the grid of size g. Segment q covers
// sum cells [cell_lo, cell_hi] (left nodes) and exceedance nodes
// [node_lo, node_hi] (closed time interval).
struct Segment {
    std::size_t cell_lo, cell_hi;
    std::size_t node_lo, node_hi;
    double threshold;  // suffix minimum for this segment
};

std::vector<Segment> build_segments(const FddQuery& query, std::size_t g) {
    std::vector<Segment> segs;
    const auto& t = query.times();
    const auto& m = query.suffix_mins();
    double prev = 0.0;
    for (std::size_t q = 0; q < t.size(); ++q) {
        Segment s;
        const double gd = static_cast<double>(g);
        s.cell_lo = static_cast<std::size_t>(std::ceil(prev * gd - 1e-9));
        const auto next_cell = static_cast<std::size_t>(std::ceil(t[q] * gd - 1e-9));
        s.cell_hi = next_cell == 0 ? 0 : next_cell - 1;
        s.node_lo = s.cell_lo;
        s.node_hi = std::min<std::size_t>(
            static_cast<std::size_t>(std::floor(t[q] * gd + 1e-9)), g);
        s.threshold = m[q];
        if (s.cell_lo <= s.cell_hi) segs.push_back(s);
        prev = t[q];
    }
    return segs;
}

// exp(-Riemann sum) for one path, or zero when the path crosses a segment
// threshold (gap below the clamp counts as a crossing).
double segmented_functional(const std::vector<double>& b, const std::vector<Segment>& segs,
                            double kappa, double inv_h, double cell_width) {
    for (const auto& s : segs) {
        for (std::size_t j = s.node_lo; j <= s.node_hi; ++j) {
            if (s.threshold - b[j] < kGapClamp) return 0.0;
        }
    }
    double sum = 0.0;
    for (const auto& s : segs) {
        for (std::size_t j = s.cell_lo; j <= s.cell_hi; ++j) {
            sum += std::pow(s.threshold - b[j], -inv_h);
        }
    }
    return std::exp(-kappa * cell_width * sum);
}

struct MeanWithError {
    double mean = 0.0;
    double std_error = 0.0;
};

MeanWithError reduce(const std::vector<double>& values) {
    MeanWithError out;
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.std_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return out;
}

}  // namespace

FddQuery::FddQuery(std::vector<double> times, std::vector<double> thresholds)
    : times_(std::move(times)), thresholds_(std::move(thresholds)) {
    if (times_.empty() || times_.size() != thresholds_.size()) {
        throw std::invalid_argument("query needs matching nonempty times and thresholds");
    }
    double prev = 0.0;
    for (double t : times_) {
        if (!(t > prev) || !(t <= 1.0)) {
            throw std::invalid_argument(
                "query times must be strictly increasing within (0, 1]");
        }
        prev = t;
    }
    suffix_mins_.assign(thresholds_.begin(), thresholds_.end());
    for (std::size_t q = suffix_mins_.size() - 1; q-- > 0;) {
        suffix_mins_[q] = std::min(suffix_mins_[q], suffix_mins_[q + 1]);
    }
}

std::vector<PsiEstimate> psi_curve(Hurst hurst, double kappa,
                                   const std::vector<double>& xs,
                                   std::size_t replicates, std::size_t grid_points,
                                   std::uint64_t seed, int threads) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");

    std::vector<PsiEstimate> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out[i] = {xs[i], 0.0, 0.0, replicates, grid_points};
    }
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > 0.0) active.push_back(i);  // x <= 0 stays exactly zero
    }
    if (active.empty()) return out;

    const double inv_h = 1.0 / hurst.value();
    const double cell_width = 1.0 / static_cast<double>(grid_points);
    const FgnSampler fgn(hurst, grid_points);

    std::vector<std::vector<double>> values(active.size(),
                                            std::vector<double>(replicates));
    parallel_chunks(replicates, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            Rng rng = Rng::stream(seed, r, 0);
            const GridPath path = fbm_path_from(fgn, rng);
            const auto& b = path.values;
            for (std::size_t ai = 0; ai < active.size(); ++ai) {
                const double x = xs[active[ai]];
                double v = 0.0;
                bool crossed = false;
                for (double node : b) {
                    if (x - node < kGapClamp) {
                        crossed = true;
                        break;
                    }
                }
                if (!crossed) {
                    double sum = 0.0;
                    for (std::size_t j = 0; j < grid_points; ++j) {
                        sum += std::pow(x - b[j], -inv_h);
                    }
                    v = std::exp(-kappa * cell_width * sum);
                }
                values[ai][r] = v;
            }
        }
    });

    for (std::size_t ai = 0; ai < active.size(); ++ai) {
        const MeanWithError m = reduce(values[ai]);
        out[active[ai]].value = m.mean;
        out[active[ai]].std_error = m.std_error;
    }
    return out;
}

PsiEstimate psi_estimate(Hurst hurst, double kappa, double x, std::size_t replicates,
                         std::size_t grid_points, std::uint64_t seed, int threads) {
    return psi_curve(hurst, kappa, {x}, replicates, grid_points, seed, threads)[0];
}

FddEstimate fdd_estimate(Hurst hurst, double kappa, const FddQuery& query,
                         std::size_t replicates, std::size_t grid_points,
                         std::uint64_t seed, int threads) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");

    const std::vector<Segment> segs = build_segments(query, grid_points);
    const double inv_h = 1.0 / hurst.value();
    const double cell_width = 1.0 / static_cast<double>(grid_points);
    const FgnSampler fgn(hurst, grid_points);

    std::vector<double> values(replicates);
    parallel_chunks(replicates, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            Rng rng = Rng::stream(seed, r, 0);
            const GridPath path = fbm_path_from(fgn, rng);
            values[r] = segmented_functional(path.values, segs, kappa, inv_h, cell_width);
        }
    });

    const MeanWithError m = reduce(values);
    return {m.mean, m.std_error, replicates};
}

double fdd_probability(Hurst hurst, double kappa, const FddQuery& query,
                       std::size_t replicates, std::size_t grid_points,
                       std::uint64_t seed, int threads) {
    return fdd_estimate(hurst, kappa, query, replicates, grid_points, seed, threads).value;
}

KsReport self_similarity_test(Hurst hurst, double kappa, double a, std::size_t samples,
                              std::uint64_t seed, std::size_t k,
                              std::size_t grid_points, int threads) {
    if (samples < 2) throw std::invalid_argument("self-similarity test needs samples >= 2");
    if (!(a > 0.0) || a > 1.0) throw std::invalid_argument("a must lie in (0, 1]");
    if (a < 1.0 / static_cast<double>(grid_points)) {
        throw std::invalid_argument("a lies below the grid resolution");
    }

    const LimitProcessSampler sampler(hurst, kappa, k, grid_points);
    const double scale = std::pow(a, hurst.value());

    std::vector<double> at_a(samples), scaled_terminal(samples);
    parallel_chunks(samples, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            at_a[r] = sampler.sample(seed, r).path.value_at(a);
            scaled_terminal[r] =
                scale * sampler.sample(seed, samples + r).path.values[grid_points];
        }
    });
    return ks_two_sample(at_a, scaled_terminal);
}

}  // namespace fbmshot
