#include "fbmshot/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fbmshot {

namespace {

// Purpose-separated master seeds keep the discrete, limit, and calibration
// streams independent while remaining pure functions of the experiment seed.
std::uint64_t side_seed(std::uint64_t seed, std::uint64_t purpose) {
    return mix64(seed ^ mix64(purpose));
}

void require_increasing(const std::vector<std::size_t>& n_list) {
    if (n_list.empty()) throw std::invalid_argument("n_list must be nonempty");
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1]) {
            throw std::invalid_argument("n_list must be strictly increasing");
        }
    }
}

// Monotone piecewise-linear CDF through fdd estimates at probe thresholds.
class CalibratedCdf {
public:
    CalibratedCdf(std::vector<double> probes, std::vector<double> values)
        : probes_(std::move(probes)), values_(std::move(values)) {}

    double operator()(double x) const {
        if (probes_.empty()) return 0.0;
        if (x <= probes_.front()) return values_.front() * clamp01(x, probes_.front());
        if (x >= probes_.back()) return values_.back() +
                                        (1.0 - values_.back()) * tail(x, probes_.back());
        const auto it = std::upper_bound(probes_.begin(), probes_.end(), x);
        const std::size_t hi = static_cast<std::size_t>(it - probes_.begin());
        const std::size_t lo = hi - 1;
        const double w = (x - probes_[lo]) / (probes_[hi] - probes_[lo]);
        return values_[lo] + w * (values_[hi] - values_[lo]);
    }

private:
    // Below the first probe the CDF decays linearly to zero at the origin;
    // above the last it approaches one on the scale of the probe itself.
    static double clamp01(double x, double x0) {
        if (x <= 0.0 || x0 <= 0.0) return 0.0;
        return x / x0;
    }
    static double tail(double x, double x1) {
        return 1.0 - x1 / std::max(x, x1);
    }

    std::vector<double> probes_;
    std::vector<double> values_;
};

}  // namespace

Table convergence_experiment(const ModelParams& cfg, const std::vector<std::size_t>& n_list,
                             std::size_t reps, std::uint64_t seed, bool time_marginals) {
    if (reps == 0) throw std::invalid_argument("replicate count must be positive");
    require_increasing(n_list);

    const std::vector<double> probe_times = {0.25, 0.5, 1.0};

    // Limit-side sample of Z at the probe times, one batch shared by all n.
    const LimitProcessSampler limit(cfg.hurst, cfg.noise.kappa(), cfg.limit_k,
                                    cfg.grid_points);
    const std::uint64_t limit_seed = side_seed(seed, 0xF001);
    std::vector<std::vector<double>> limit_at(probe_times.size(),
                                              std::vector<double>(reps));
    parallel_chunks(reps, cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            const LimitPathSample draw = limit.sample(limit_seed, r);
            for (std::size_t ti = 0; ti < probe_times.size(); ++ti) {
                limit_at[ti][r] = draw.path.value_at(probe_times[ti]);
            }
        }
    });

    // Optional calibration of the marginal CDFs from the fdd estimator, on a
    // reduced budget; probes are limit-sample quantiles so they track the law.
    std::vector<CalibratedCdf> calibrated;
    if (time_marginals) {
        const std::size_t cal_reps = std::min<std::size_t>(reps, 2000);
        const std::size_t cal_grid = std::min<std::size_t>(cfg.grid_points, 1024);
        const std::uint64_t cal_seed = side_seed(seed, 0xF002);
        for (std::size_t ti = 0; ti < probe_times.size(); ++ti) {
            const EcdfSummary ecdf(limit_at[ti]);
            std::vector<double> probes;
            for (int q = 1; q <= 19; ++q) probes.push_back(ecdf.quantile(q / 20.0));
            probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
            std::vector<double> values;
            values.reserve(probes.size());
            for (double x : probes) {
                const FddQuery query({probe_times[ti]}, {x});
                values.push_back(fdd_probability(cfg.hurst, cfg.noise.kappa(), query,
                                                 cal_reps, cal_grid, cal_seed,
                                                 cfg.threads));
            }
            calibrated.emplace_back(std::move(probes), std::move(values));
        }
    }

    Table table;
    table.columns = {"n", "ks_statistic", "p_value", "reps"};
    if (time_marginals) {
        table.columns.insert(table.columns.end(), {"ks_t025", "ks_t050", "ks_t100"});
    }

    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        const std::size_t n = n_list[ni];
        const WalkSimulator sim(WalkSpec(cfg.increments, cfg.hurst, n), cfg.noise);
        const std::uint64_t walk_seed = side_seed(seed, 0xD000 + ni);

        std::vector<std::vector<double>> discrete_at(probe_times.size(),
                                                     std::vector<double>(reps));
        const double scale = std::pow(static_cast<double>(n), -cfg.hurst.value());
        parallel_chunks(reps, cfg.threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t r = begin; r < end; ++r) {
                const PerturbedWalk w = sim.simulate(walk_seed, r);
                const std::vector<double> m = max_process(w);
                for (std::size_t ti = 0; ti < probe_times.size(); ++ti) {
                    const auto idx = static_cast<std::size_t>(
                        probe_times[ti] * static_cast<double>(n));
                    discrete_at[ti][r] = m[idx] * scale;
                }
            }
        });

        const KsReport terminal = ks_two_sample(discrete_at.back(), limit_at.back());
        std::vector<double> row = {static_cast<double>(n), terminal.statistic,
                                   terminal.p_value, static_cast<double>(reps)};
        if (time_marginals) {
            for (std::size_t ti = 0; ti < probe_times.size(); ++ti) {
                const KsReport marginal =
                    ks_vs_cdf(discrete_at[ti], [&](double x) {
                        return std::clamp(calibrated[ti](x), 0.0, 1.0);
                    });
                row.push_back(marginal.statistic);
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table lepage_check(const ModelParams& cfg, std::size_t n, std::size_t k,
                   std::size_t reps, std::uint64_t seed) {
    if (reps == 0) throw std::invalid_argument("replicate count must be positive");
    if (k < 1 || k > n) throw std::invalid_argument("rank count k must satisfy 1 <= k <= n");

    const double h = cfg.hurst.value();
    const double walk_scale = std::pow(static_cast<double>(n), -h);
    const double amp = std::pow(cfg.noise.kappa(), h);
    const std::uint64_t noise_seed = side_seed(seed, 0xA001);
    const std::uint64_t pp_seed = side_seed(seed, 0xA002);
    const NoiseParams pp_params = NoiseParams::pure_pareto(cfg.hurst, cfg.noise.kappa());

    std::vector<std::vector<double>> discrete(k, std::vector<double>(reps));
    std::vector<std::vector<double>> limit(k, std::vector<double>(reps));
    parallel_chunks(reps, cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            Rng rng = Rng::stream(noise_seed, r);
            std::vector<double> y = draw_perturbations(cfg.noise, n, rng);
            std::partial_sort(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k),
                              y.end(), std::greater<double>());
            Rng pp_rng = Rng::stream(pp_seed, r);
            const PointSet ps = sample_point_process_from(pp_params, k, pp_rng);
            for (std::size_t i = 0; i < k; ++i) {
                discrete[i][r] = y[i] * walk_scale;
                limit[i][r] = amp * ps.points[i].eta;
            }
        }
    });

    Table table;
    table.columns = {"rank", "ks_statistic", "p_value", "reps", "mean_discrete",
                     "mean_limit"};
    for (std::size_t i = 0; i < k; ++i) {
        const KsReport ks = ks_two_sample(discrete[i], limit[i]);
        double md = 0.0, ml = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
            md += discrete[i][r];
            ml += limit[i][r];
        }
        md /= static_cast<double>(reps);
        ml /= static_cast<double>(reps);
        table.rows.push_back({static_cast<double>(i + 1), ks.statistic, ks.p_value,
                              static_cast<double>(reps), md, ml});
    }
    return table;
}

Table sandwich_experiment(const ModelParams& cfg, const std::vector<std::size_t>& n_list,
                          std::size_t reps, std::uint64_t seed) {
    if (reps == 0) throw std::invalid_argument("replicate count must be positive");
    require_increasing(n_list);

    Table table;
    table.columns = {"n", "q50", "q90", "q95", "q99", "reps"};
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        const std::size_t n = n_list[ni];
        const WalkSimulator sim(WalkSpec(cfg.increments, cfg.hurst, n), cfg.noise);
        const std::uint64_t walk_seed = side_seed(seed, 0xB000 + ni);
        std::vector<double> gaps(reps);
        parallel_chunks(reps, cfg.threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t r = begin; r < end; ++r) {
                const PerturbedWalk w = sim.simulate(walk_seed, r);
                const auto [lower, upper] = one_sided_paths(w, cfg.hurst);
                double gap = 0.0;
                for (std::size_t j = 0; j <= n; ++j) {
                    gap = std::max(gap, upper.values[j] - lower.values[j]);
                }
                gaps[r] = gap;
            }
        });
        const EcdfSummary ecdf(gaps);
        table.rows.push_back({static_cast<double>(n), ecdf.quantile(0.5),
                              ecdf.quantile(0.9), ecdf.quantile(0.95),
                              ecdf.quantile(0.99), static_cast<double>(reps)});
    }
    return table;
}

}  // namespace fbmshot
