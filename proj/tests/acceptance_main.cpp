// Acceptance suite: one quantitative check per line, fixed seeds, pinned
// tolerances. Exits nonzero when any check fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fbmshot/experiments.hpp"
#include "fbmshot/pathspace.hpp"
#include "support/oracles.hpp"

using namespace fbmshot;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_start;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count();
    std::printf("%s  criterion %2d: %s (%s) [%.1fs]\n", pass ? "PASS" : "FAIL", id,
                what.c_str(), detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!pass) ++g_failures;
    g_start = std::chrono::steady_clock::now();
}

constexpr int kThreads = 2;

// --- 1: fBm generator covariance ------------------------------------------
void criterion_covariance() {
    const std::size_t n = 256, reps = 10'000;
    const std::array<std::pair<double, double>, 10> probes = {{{0.25, 0.75},
                                                               {0.5, 0.5},
                                                               {0.125, 0.875},
                                                               {0.0625, 0.5},
                                                               {0.375, 0.625},
                                                               {0.25, 0.25},
                                                               {0.5, 1.0},
                                                               {0.75, 1.0},
                                                               {1.0, 1.0},
                                                               {0.125, 0.375}}};
    double worst_z = 0.0;
    bool pass = true;
    for (double hv : {0.3, 0.5, 0.7}) {
        const Hurst h(hv);
        const FgnSampler sampler(h, n);
        const double scale = std::pow(static_cast<double>(n), -hv);
        std::vector<std::vector<double>> at(probes.size(), std::vector<double>(reps));
        parallel_chunks(reps, kThreads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t r = lo; r < hi; ++r) {
                Rng rng = Rng::stream(101, r, static_cast<std::uint64_t>(hv * 100));
                const std::vector<double> inc = sampler.sample(rng);
                std::vector<double> walk(n + 1, 0.0);
                double sum = 0.0;
                for (std::size_t j = 0; j < n; ++j) {
                    sum += inc[j];
                    walk[j + 1] = sum * scale;
                }
                for (std::size_t p = 0; p < probes.size(); ++p) {
                    const auto js = static_cast<std::size_t>(probes[p].first * n);
                    const auto jt = static_cast<std::size_t>(probes[p].second * n);
                    at[p][r] = walk[js] * walk[jt];
                }
            }
        });
        for (std::size_t p = 0; p < probes.size(); ++p) {
            const auto [s, t] = probes[p];
            double mean = 0.0;
            for (double v : at[p]) mean += v;
            mean /= static_cast<double>(reps);
            const double exact = fbm_covariance(h, s, t);
            const double c_ss = fbm_covariance(h, s, s);
            const double c_tt = fbm_covariance(h, t, t);
            const double se =
                std::sqrt((c_ss * c_tt + exact * exact) / static_cast<double>(reps));
            const double z = std::abs(mean - exact) / se;
            worst_z = std::max(worst_z, z);
            if (z >= 3.0) pass = false;
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "max |z| = %.2f over 30 probes, 3 sigma allowed",
                  worst_z);
    report(1, pass, "fBm sample covariance matches the closed form", detail);
}

// --- 2: Frechet limit of scaled maxima -------------------------------------
void criterion_frechet() {
    const NoiseParams noise = NoiseParams::pure_pareto(Hurst(0.5), 1.0);
    const std::size_t n = 1 << 14, reps = 5000;
    const double scale = std::pow(static_cast<double>(n), -0.5);
    std::vector<double> maxima(reps);
    parallel_chunks(reps, kThreads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            Rng rng = Rng::stream(102, r);
            double best = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                best = std::max(best, sample_perturbation(noise, rng.uniform()));
            }
            maxima[r] = best * scale;
        }
    });
    const KsReport ks =
        ks_vs_cdf(maxima, [&](double x) { return max_order_statistic_cdf(noise, n, x); });
    char detail[64];
    std::snprintf(detail, sizeof(detail), "KS = %.4f, threshold 0.03", ks.statistic);
    report(2, ks.statistic < 0.03, "scaled sample maxima follow the Frechet limit",
           detail);
}

// --- 3: terminal convergence of the scaled maximum process ------------------
void criterion_convergence() {
    ModelParams cfg;
    cfg.hurst = Hurst(0.5);
    cfg.noise = NoiseParams::pure_pareto(cfg.hurst, 1.0);
    cfg.limit_k = 64;
    cfg.grid_points = 1 << 12;
    cfg.threads = kThreads;
    const std::size_t reps = 5000;
    const Table t = convergence_experiment(cfg, {256, 1024, 4096, 16384}, reps, 103);

    // A step up within the sampling noise of the KS statistic is not evidence
    // of divergence; two-sigma of the null difference at this sample size.
    const double n_eff = static_cast<double>(reps) / 2.0;
    const double allowance = 2.0 * 0.26 * std::numbers::sqrt2 / std::sqrt(n_eff);
    int inversions = 0;
    std::ostringstream ks_list;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (i > 0 && t.rows[i][1] > t.rows[i - 1][1] + allowance) ++inversions;
        ks_list << (i ? " " : "") << t.rows[i][1];
    }
    const double final_ks = t.rows.back()[1];
    const bool pass = inversions <= 1 && final_ks < 0.05;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "KS per n: %s; inversions beyond %.4f noise = %d (<= 1), final = %.4f "
                  "(< 0.05)",
                  ks_list.str().c_str(), allowance, inversions, final_ks);
    report(3, pass, "terminal law of Z_{n,1} converges to the limit", detail);
}

// --- 4: marginal CDF estimator properties -----------------------------------
void criterion_psi_suite() {
    const Hurst h(0.5);
    const std::size_t reps = 10'000, grid = 1 << 12;
    bool pass = true;
    std::ostringstream detail;

    const PsiEstimate at_neg = psi_estimate(h, 1.0, -1.0, reps, grid, 104, kThreads);
    const PsiEstimate at_zero = psi_estimate(h, 1.0, 0.0, reps, grid, 104, kThreads);
    pass = pass && at_neg.value == 0.0 && at_neg.std_error == 0.0 && at_zero.value == 0.0;

    const std::vector<double> probes = {0.25, 0.5, 1.0, 2.0, 4.0};
    const std::vector<PsiEstimate> curve =
        psi_curve(h, 1.0, probes, reps, grid, 104, kThreads);
    for (std::size_t i = 1; i < curve.size(); ++i) {
        if (!(curve[i].value > curve[i - 1].value)) pass = false;
    }
    detail << "curve";
    for (const auto& e : curve) detail << " " << e.value;

    for (double x : {0.5, 1.0, 2.0}) {
        const PsiEstimate e = psi_estimate(h, 1.0, x, reps, grid, 104, kThreads);
        if (!(e.value <= oracles::reflection_sup_cdf(x) + 3.0 * e.std_error)) pass = false;
    }

    const PsiEstimate tail = psi_estimate(h, 1.0, 8.0, reps, grid, 104, kThreads);
    if (!(tail.value > 0.95)) pass = false;
    detail << "; psi(8) = " << tail.value;

    report(4, pass, "marginal CDF: zero region, strict growth, reflection bound",
           detail.str());
}

// --- 5: self-similarity ------------------------------------------------------
void criterion_self_similarity() {
    const Hurst h(0.5);
    const KsReport ks = self_similarity_test(h, 1.0, 0.25, 2000, 105, 64, 4096, kThreads);
    bool pass = ks.p_value > 0.01;

    // Formula route: the scaled-time estimate against the rescaled marginal,
    // independent seeds on the two sides.
    double worst_sigma = 0.0;
    for (double x : {0.25, 0.5, 1.0}) {
        const FddEstimate left =
            fdd_estimate(h, 1.0, FddQuery({0.25}, {x}), 4000, 4096, 106, kThreads);
        const PsiEstimate right =
            psi_estimate(h, 1.0, x * std::pow(0.25, -0.5), 4000, 4096, 107, kThreads);
        const double combined = std::sqrt(left.std_error * left.std_error +
                                          right.std_error * right.std_error);
        worst_sigma = std::max(worst_sigma, std::abs(left.value - right.value) / combined);
    }
    if (worst_sigma >= 2.0) pass = false;
    char detail[96];
    std::snprintf(detail, sizeof(detail),
                  "two-sample p = %.3f (> 0.01); formula gap max %.2f sigma (< 2)",
                  ks.p_value, worst_sigma);
    report(5, pass, "Z_a equals a^H Z_1 in law", detail);
}

// --- 6: consistency of sampler, marginal estimator, and fdd formula ---------
void criterion_consistency_triangle() {
    const Hurst h(0.5);
    const std::size_t reps = 10'000, grid = 1 << 12;
    const std::vector<double> probes = {0.25, 0.5, 1.0, 2.0, 4.0};

    const LimitProcessSampler sampler(h, 1.0, 64, grid);
    std::vector<double> terminal(reps);
    parallel_chunks(reps, kThreads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            terminal[r] = sampler.sample(108, r).path.values[grid];
        }
    });
    const EcdfSummary ecdf(terminal);

    const std::vector<PsiEstimate> curve =
        psi_curve(h, 1.0, probes, reps, grid, 109, kThreads);

    double worst = 0.0;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const double x = probes[i];
        const double via_sampler = ecdf.cdf(x);
        const double via_psi = curve[i].value;
        const double via_fdd =
            fdd_probability(h, 1.0, FddQuery({1.0}, {x}), reps, grid, 110, kThreads);
        worst = std::max({worst, std::abs(via_sampler - via_psi),
                          std::abs(via_psi - via_fdd), std::abs(via_sampler - via_fdd)});
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max pairwise gap %.4f (< 0.02)", worst);
    report(6, worst < 0.02, "sampler ECDF, marginal curve, and fdd formula agree",
           detail);
}

// --- 7: truncation error bound ----------------------------------------------
void criterion_truncation_bound() {
    const Hurst h(0.5);
    const std::size_t n = 1024, k = 16, walks = 1000;
    const WalkSimulator sim(WalkSpec(WalkIncrements::Fgn, h, n),
                            NoiseParams::pure_pareto(h, 1.0));
    const double scale = std::pow(static_cast<double>(n), -0.5);
    std::size_t holds = 0;
    for (std::size_t r = 0; r < walks; ++r) {
        const PerturbedWalk w = sim.simulate(111, r);
        const GridPath z = scaled_path(max_process(w), n, h);
        const GridPath zk = truncated_scaled_path(w, k, h);
        std::vector<double> top(w.y.begin() + 1, w.y.end());
        std::nth_element(top.begin(), top.begin() + k, top.end(), std::greater<double>());
        const double bound = top[k] * scale;
        bool ok = true;
        for (std::size_t j = 0; j <= n; ++j) {
            if (z.values[j] - zk.values[j] > bound + 1e-12) ok = false;
        }
        if (ok) ++holds;
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "bound held on %zu / %zu walks", holds, walks);
    report(7, holds == walks, "truncated path deviates at most Y_{k+1,n}/n^H", detail);
}

// --- 8: one-sided bracketing and uniform closeness ---------------------------
void criterion_sandwich() {
    const Hurst h(0.5);
    ModelParams cfg;
    cfg.hurst = h;
    cfg.noise = NoiseParams::two_sided(h, 2.0, 0.5);
    cfg.threads = kThreads;
    const std::vector<std::size_t> n_list = {256, 1024, 4096, 16384};
    const std::size_t reps = 5000;

    // Pathwise bracketing on a separate replicate set.
    bool bracketed = true;
    for (std::size_t n : {256u, 4096u}) {
        const WalkSimulator sim(WalkSpec(WalkIncrements::Fgn, h, n), cfg.noise);
        for (std::size_t r = 0; r < 200; ++r) {
            const PerturbedWalk w = sim.simulate(112, r);
            const auto [lower, upper] = one_sided_paths(w, h);
            const GridPath middle = sandwich_middle_path(w, h);
            for (std::size_t j = 0; j <= n; ++j) {
                if (lower.values[j] > middle.values[j] + 1e-12 ||
                    middle.values[j] > upper.values[j] + 1e-12) {
                    bracketed = false;
                }
            }
        }
    }

    const Table t = sandwich_experiment(cfg, n_list, reps, 113);
    bool decreasing = true;
    std::ostringstream q95;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (i > 0 && !(t.rows[i][3] < t.rows[i - 1][3])) decreasing = false;
        q95 << (i ? " " : "") << t.rows[i][3];
    }
    report(8, bracketed && decreasing,
           "one-sided paths bracket Z and their gap q95 shrinks",
           "q95 per n: " + q95.str());
}

// --- 9: moduli inequality -----------------------------------------------------
void criterion_moduli() {
    Rng rng = Rng::stream(114);
    bool pass = true;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t m = 8 + static_cast<std::size_t>(rng.next_u64() % 25);
        const GridPath x = oracles::random_step_path(rng, m);
        for (double delta : {0.05, 0.1, 0.2}) {
            if (uniform_modulus(x, delta) >
                2.0 * partition_modulus(x, delta) + max_jump(x) + 1e-12) {
                pass = false;
            }
        }
    }
    report(9, pass, "uniform modulus <= 2 partition modulus + max jump",
           "100 random step paths, deltas 0.05 / 0.1 / 0.2");
}

// --- 10: alignment search equals exhaustive enumeration ----------------------
void criterion_j1_oracle() {
    Rng rng = Rng::stream(115);
    std::size_t agreements = 0;
    const std::size_t cases = 500;
    for (std::size_t trial = 0; trial < cases; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(rng.next_u64() % 7);
        const GridPath x = oracles::random_step_path(rng, m);
        const GridPath y = oracles::random_step_path(rng, m);
        if (skorohod_j1(x, y) == oracles::j1_exhaustive(x, y)) ++agreements;
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "%zu / %zu exact matches", agreements, cases);
    report(10, agreements == cases, "J1 search equals brute-force enumeration", detail);
}

// --- 11: negative noise does not shift the terminal law ----------------------
void criterion_negative_noise() {
    const Hurst h(0.5);
    const std::size_t n = 1 << 14, reps = 5000;
    const WalkSimulator all_positive(WalkSpec(WalkIncrements::Fgn, h, n),
                                     NoiseParams::pure_pareto(h, 1.0));
    const WalkSimulator half_negative(WalkSpec(WalkIncrements::Fgn, h, n),
                                      NoiseParams::two_sided(h, 2.0, 0.5));
    const double scale = std::pow(static_cast<double>(n), -0.5);
    std::vector<double> a(reps), b(reps);
    parallel_chunks(reps, kThreads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            a[r] = max_process(all_positive.simulate(116, r)).back() * scale;
            b[r] = max_process(half_negative.simulate(117, r)).back() * scale;
        }
    });
    const KsReport ks = ks_two_sample(a, b);
    char detail[64];
    std::snprintf(detail, sizeof(detail), "KS = %.4f, p = %.3f (> 0.01)", ks.statistic,
                  ks.p_value);
    report(11, ks.p_value > 0.01, "theta = 1 and theta = 0.5 share the terminal law",
           detail);
}

// --- 12: CLI determinism ------------------------------------------------------
std::string run_capture(const std::string& args) {
    const std::string command = std::string(FBMSHOT_CLI_PATH) + " " + args + " 2>&1";
    std::string out;
    std::array<char, 4096> buffer{};
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::size_t got;
    while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        out.append(buffer.data(), got);
    }
    pclose(pipe);
    return out;
}

void criterion_cli_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fbmshot_acceptance";
    fs::create_directories(dir);
    const fs::path p1 = dir / "p1.csv";
    const fs::path p2 = dir / "p2.csv";
    run_capture("simulate --which limit --k 8 --grid 64 --seed 41 --out " + p1.string());
    run_capture("simulate --which limit --k 8 --grid 64 --seed 42 --out " + p2.string());

    const std::vector<std::string> commands = {
        "simulate --which limit --hurst 0.5 --kappa 1 --k 64 --grid 512 --seed 7",
        "simulate --which discrete --n 512 --seed 7",
        "psi --x 0.5,1,2 --reps 400 --grid 256 --seed 7",
        "fdd --times 0.5,1 --thresholds 1,1.5 --reps 400 --grid 256 --seed 7",
        "converge --n-list 64,128 --reps 200 --k 8 --grid 128 --seed 7",
        "converge --n-list 64,128 --reps 200 --k 8 --grid 128 --seed 7 --marginals",
        "lepage --n 1024 --ranks 3 --reps 200 --seed 7",
        "sandwich --n-list 128,256 --reps 200 --law two-sided --theta 0.5 --seed 7",
        "pathdist " + p1.string() + " " + p2.string(),
        "psi --x 0.5,1 --reps 400 --grid 256 --seed 7 --format json",
    };
    bool pass = true;
    std::string failing;
    for (const auto& cmd : commands) {
        const std::string once = run_capture(cmd + " --threads 1");
        const std::string again = run_capture(cmd + " --threads 1");
        const std::string threaded = run_capture(cmd + " --threads 3");
        if (once != again || once != threaded || once.empty()) {
            pass = false;
            failing = cmd;
        }
    }
    fs::remove_all(dir);
    report(12, pass, "every command is byte-identical across runs and thread counts",
           pass ? std::to_string(commands.size()) + " commands checked"
                : "first failing: " + failing);
}

}  // namespace

int main() {
    g_start = std::chrono::steady_clock::now();
    criterion_covariance();
    criterion_frechet();
    criterion_convergence();
    criterion_psi_suite();
    criterion_self_similarity();
    criterion_consistency_triangle();
    criterion_truncation_bound();
    criterion_sandwich();
    criterion_moduli();
    criterion_j1_oracle();
    criterion_negative_noise();
    criterion_cli_determinism();

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criteria FAILED\n", g_failures);
    }
    return g_failures == 0 ? 0 : 1;
}
