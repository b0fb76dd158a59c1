#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fbmshot/discrete_model.hpp"
#include "fbmshot/limit_process.hpp"
#include "fbmshot/noise.hpp"
#include "fbmshot/stats.hpp"
#include "fbmshot/types.hpp"

namespace fbmshot {

/// Shared configuration of the experiment harness.
struct ModelParams {
    Hurst hurst{0.5};
    NoiseParams noise = NoiseParams::pure_pareto(Hurst(0.5), 1.0);
    WalkIncrements increments = WalkIncrements::Fgn;
    std::size_t limit_k = 64;
    std::size_t grid_points = 4096;
    std::uint64_t seed = 0;
    int threads = 1;
};

/// Column-named numeric table; the CLI renders these as CSV or JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> meta;
};

/// Per-n comparison of the terminal discrete maximum Z_{n,1} against sampled
/// limit values Z_1. Columns: n, ks_statistic, p_value, reps, and with
/// marginals enabled also one-sample KS values at t = 0.25, 0.5, 1 against a
/// CDF calibrated from the fdd estimator on a quantile probe grid.
Table convergence_experiment(const ModelParams& cfg, const std::vector<std::size_t>& n_list,
                             std::size_t reps, std::uint64_t seed,
                             bool time_marginals = false);

/// Rank-by-rank comparison of the scaled order statistics Y_{i,n}/n^H against
/// kappa^H Gamma_i^{-H} for i = 1..k. Columns: rank, ks_statistic, p_value,
/// reps, mean_discrete, mean_limit.
Table lepage_check(const ModelParams& cfg, std::size_t n, std::size_t k,
                   std::size_t reps, std::uint64_t seed);

/// Quantiles of sup_t (Z^0 - Z^{-inf}) per walk length. Columns: n, q50, q90,
/// q95, q99, reps.
Table sandwich_experiment(const ModelParams& cfg, const std::vector<std::size_t>& n_list,
                          std::size_t reps, std::uint64_t seed);

}  // namespace fbmshot
