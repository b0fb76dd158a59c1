#pragma once

#include <cstdint>
#include <vector>

#include "fbmshot/fbm.hpp"
#include "fbmshot/noise.hpp"
#include "fbmshot/rng.hpp"
#include "fbmshot/stats.hpp"
#include "fbmshot/types.hpp"

namespace fbmshot {

/// A draw of the limit maximum process together with its ingredients.
struct LimitPathSample {
    GridPath path;           // Z on the grid: nondecreasing, Z_0 = 0
    GridPath fbm;            // underlying fractional Brownian path
    PointSet points;         // the k retained shot-noise points
    double truncation_bound; // kappa^H Gamma_k^{-H}; sup-norm error of the cut
};

/// Builds Z from a fractional Brownian path and a point set:
///   Z_t = max( sup_{s<=t} B_s , max_{u_i <= t, sign +} (B at u_i + kappa^H eta_i) ).
/// Each point acts from the first grid node at or after u_i, so Z_0 = 0 surely
/// and the indicator u_i <= t is honored at every grid time. Negative-sign
/// points are ignored.
GridPath limit_path_from(const GridPath& fbm, const PointSet& points, double kappa,
                         Hurst hurst);

/// Reusable sampler for the limit process; one spectral plan per (H, grid).
class LimitProcessSampler {
public:
    LimitProcessSampler(Hurst hurst, double kappa, std::size_t k, std::size_t n_points);

    /// fBm and point process come from the disjoint sub-streams
    /// (seed, replicate, 0) and (seed, replicate, 1). k = 0 degenerates to the
    /// running maximum of the fractional Brownian path.
    LimitPathSample sample(std::uint64_t seed, std::uint64_t replicate = 0) const;

    Hurst hurst() const { return hurst_; }
    double kappa() const { return kappa_; }
    std::size_t k() const { return k_; }
    std::size_t n_points() const { return n_points_; }

private:
    Hurst hurst_;
    double kappa_;
    std::size_t k_;
    std::size_t n_points_;
    std::shared_ptr<const FgnSampler> fgn_;
};

LimitPathSample sample_limit_path(Hurst hurst, double kappa, std::size_t k,
                                  std::size_t n_points, std::uint64_t seed);

struct PsiEstimate {
    double x = 0.0;
    double value = 0.0;
    double std_error = 0.0;
    std::size_t replicates = 0;
    std::size_t grid_points = 0;
};

/// Monte Carlo estimate of the marginal CDF Psi_H(x) = P(Z_1 <= x):
/// mean over fractional Brownian paths of
///   exp( - (1/g) sum_{j<g} kappa (x - B_{j/g})_+^{-1/H} ),
/// where a path with any grid value within 1e-12 of x (or above) contributes
/// zero. x <= 0 returns zero exactly without sampling.
PsiEstimate psi_estimate(Hurst hurst, double kappa, double x, std::size_t replicates,
                         std::size_t grid_points, std::uint64_t seed, int threads = 1);

/// Same estimator for several thresholds on common replicate paths, so the
/// results are monotone in x by construction.
std::vector<PsiEstimate> psi_curve(Hurst hurst, double kappa,
                                   const std::vector<double>& xs,
                                   std::size_t replicates, std::size_t grid_points,
                                   std::uint64_t seed, int threads = 1);

/// Joint threshold query 0 < t_1 < ... < t_d <= 1 against x_1, ..., x_d.
class FddQuery {
public:
    FddQuery(std::vector<double> times, std::vector<double> thresholds);

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& thresholds() const { return thresholds_; }
    const std::vector<double>& suffix_mins() const { return suffix_mins_; }

private:
    std::vector<double> times_;
    std::vector<double> thresholds_;
    std::vector<double> suffix_mins_;  // min_{j >= q} x_j
};

struct FddEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t replicates = 0;
};

/// Monte Carlo estimate of P(Z_{t_1} <= x_1, ..., Z_{t_d} <= x_d) via the
/// segmented exponential functional; replicates whose path exceeds a suffix
/// minimum on the corresponding closed segment contribute zero.
FddEstimate fdd_estimate(Hurst hurst, double kappa, const FddQuery& query,
                         std::size_t replicates, std::size_t grid_points,
                         std::uint64_t seed, int threads = 1);

double fdd_probability(Hurst hurst, double kappa, const FddQuery& query,
                       std::size_t replicates, std::size_t grid_points,
                       std::uint64_t seed, int threads = 1);

/// Two-sample KS comparison of Z_a draws against a^H times independent Z_1
/// draws; a must not fall below the grid resolution.
KsReport self_similarity_test(Hurst hurst, double kappa, double a, std::size_t samples,
                              std::uint64_t seed, std::size_t k = 64,
                              std::size_t grid_points = 4096, int threads = 1);

}  // namespace fbmshot
