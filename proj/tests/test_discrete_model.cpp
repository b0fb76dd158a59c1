#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fbmshot/discrete_model.hpp"
#include "fbmshot/stats.hpp"

using namespace fbmshot;

namespace {

PerturbedWalk hand_walk(std::vector<double> s, std::vector<double> y) {
    PerturbedWalk w;
    w.s = std::move(s);
    w.y = std::move(y);
    return w;
}

}  // namespace

TEST_CASE("walk spec validation") {
    CHECK_NOTHROW(WalkSpec(WalkIncrements::IidGaussian, Hurst(0.5), 16));
    CHECK_THROWS_AS(WalkSpec(WalkIncrements::IidGaussian, Hurst(0.6), 16),
                    std::invalid_argument);
    CHECK_THROWS_AS(WalkSpec(WalkIncrements::Fgn, Hurst(0.5), 0), std::invalid_argument);
}

TEST_CASE("simulated walk conventions and independence") {
    const Hurst h(0.4);  // tail exponent 2.5 keeps the noise variance finite
    const WalkSimulator sim(WalkSpec(WalkIncrements::Fgn, h, 64),
                            NoiseParams::pure_pareto(h, 1.0));
    const std::size_t reps = 10'000;
    std::vector<double> s_end(reps), y_end(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        const PerturbedWalk w = sim.simulate(42, r);
        REQUIRE(w.s[0] == 0.0);
        REQUIRE(w.y[0] == 0.0);
        s_end[r] = w.s[64];
        y_end[r] = w.y[64];
    }
    double ms = 0.0, my = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        ms += s_end[r];
        my += y_end[r];
    }
    ms /= static_cast<double>(reps);
    my /= static_cast<double>(reps);
    double css = 0.0, cyy = 0.0, csy = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        css += (s_end[r] - ms) * (s_end[r] - ms);
        cyy += (y_end[r] - my) * (y_end[r] - my);
        csy += (s_end[r] - ms) * (y_end[r] - my);
    }
    const double corr = csy / std::sqrt(css * cyy);
    CHECK(std::abs(corr) < 3.0 / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("fgn walk scales exactly: Var(S_n / n^H) = 1 at H = 0.7") {
    const Hurst h(0.7);
    const std::size_t n = 4096, reps = 10'000;
    const WalkSimulator sim(WalkSpec(WalkIncrements::Fgn, h, n),
                            NoiseParams::pure_pareto(h, 1.0));
    const double scale = std::pow(static_cast<double>(n), -h.value());
    std::vector<double> terminal(reps);
    parallel_chunks(reps, 2, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            terminal[r] = sim.simulate(43, r).s[n] * scale;
        }
    });
    double var = 0.0;
    for (double v : terminal) var += v * v;
    var /= static_cast<double>(reps);
    CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / static_cast<double>(reps)));
}

TEST_CASE("fgn walk has the exact Gaussian marginal at interior grid times") {
    const Hurst h(0.7);
    const std::size_t n = 512, reps = 4000;
    const WalkSimulator sim(WalkSpec(WalkIncrements::Fgn, h, n),
                            NoiseParams::pure_pareto(h, 1.0));
    const double scale = std::pow(static_cast<double>(n), -h.value());
    std::vector<double> mid(reps);
    parallel_chunks(reps, 2, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            mid[r] = sim.simulate(52, r).s[n / 2] * scale;
        }
    });
    const double sigma = std::pow(0.5, h.value());
    const KsReport ks = ks_vs_cdf(mid, [&](double x) {
        return 0.5 * std::erfc(-x / (sigma * std::numbers::sqrt2));
    });
    CHECK(ks.p_value > 0.01);
}

TEST_CASE("linear long-memory increments are normalized per (H, n)") {
    for (double hv : {0.7, 0.3}) {
        const Hurst h(hv);
        const std::size_t n = 512, reps = 5000;
        const WalkSimulator sim(WalkSpec(WalkIncrements::LinearLongMemory, h, n),
                                NoiseParams::pure_pareto(h, 1.0));
        const double scale = std::pow(static_cast<double>(n), -h.value());
        std::vector<double> terminal(reps);
        parallel_chunks(reps, 2, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t r = lo; r < hi; ++r) {
                terminal[r] = sim.simulate(44, r).s[n] * scale;
            }
        });
        double var = 0.0;
        for (double v : terminal) var += v * v;
        var /= static_cast<double>(reps);
        CHECK(std::abs(var - 1.0) < 3.0 * std::sqrt(2.0 / static_cast<double>(reps)));
    }
}

TEST_CASE("max process hand examples") {
    CHECK(max_process(hand_walk({0, 1, -1}, {0, 0, 5})) ==
          std::vector<double>{0, 1, 4});

    const PerturbedWalk no_noise = hand_walk({0, -2, 3, 1}, {0, 0, 0, 0});
    CHECK(max_process(no_noise) == std::vector<double>{0, -2, 3, 3});

    const PerturbedWalk no_walk = hand_walk({0, 0, 0, 0}, {0, 2, -1, 5});
    CHECK(max_process(no_walk) == std::vector<double>{0, 2, 2, 5});

    // The zero term is not part of the maximum for i >= 1.
    CHECK(max_process(hand_walk({0, -3}, {0, 1}))[1] == -2.0);
}

TEST_CASE("max process is nondecreasing from the first step") {
    const Hurst h(0.5);
    const WalkSimulator sim(WalkSpec(WalkIncrements::IidGaussian, h, 256),
                            NoiseParams::two_sided(h, 2.0, 0.5));
    for (std::size_t r = 0; r < 50; ++r) {
        const std::vector<double> m = max_process(sim.simulate(45, r));
        for (std::size_t i = 2; i < m.size(); ++i) REQUIRE(m[i] >= m[i - 1]);
    }
}

TEST_CASE("scaled path") {
    CHECK(scaled_path({0, 0, 0}, 2, Hurst(0.5)).values == std::vector<double>{0, 0, 0});
    const GridPath single = scaled_path({0, 3}, 1, Hurst(0.5));
    CHECK(single.values == std::vector<double>{0, 3});
    CHECK_THROWS_AS(scaled_path({0, 1, 2}, 3, Hurst(0.5)), std::invalid_argument);
    const GridPath p = scaled_path({0, 2, 4, 8, 16}, 4, Hurst(0.5));
    CHECK(p.values[4] == doctest::Approx(8.0));
}

TEST_CASE("truncated path: rank handling and pathwise bound") {
    const Hurst h(0.5);

    // A single positive perturbation survives any truncation.
    const PerturbedWalk w = hand_walk({0, 0.5, -0.5, 0.25}, {0, 0, 3, 0});
    const GridPath full = scaled_path(max_process(w), 3, h);
    CHECK(truncated_scaled_path(w, 1, h).values == full.values);
    CHECK(truncated_scaled_path(w, 3, h).values == full.values);
    CHECK_THROWS_AS(truncated_scaled_path(w, 0, h), std::invalid_argument);
    CHECK_THROWS_AS(truncated_scaled_path(w, 4, h), std::invalid_argument);

    // Ties with the k-th largest are all kept: cutting at rank 1 keeps both 2s.
    const PerturbedWalk tied = hand_walk({0, 0, 0, 0}, {0, 2, 2, 1});
    PerturbedWalk kept = tied;
    kept.y = {0, 2, 2, 0};
    CHECK(truncated_scaled_path(tied, 1, h).values ==
          scaled_path(max_process(kept), 3, h).values);

    const std::size_t n = 512;
    const WalkSimulator sim(WalkSpec(WalkIncrements::Fgn, h, n),
                            NoiseParams::pure_pareto(h, 1.0));
    const double scale = std::pow(static_cast<double>(n), -h.value());
    for (std::size_t r = 0; r < 100; ++r) {
        const PerturbedWalk walk = sim.simulate(46, r);
        const GridPath z = scaled_path(max_process(walk), n, h);
        const GridPath z4 = truncated_scaled_path(walk, 4, h);
        const GridPath z8 = truncated_scaled_path(walk, 8, h);

        std::vector<double> top(walk.y.begin() + 1, walk.y.end());
        std::sort(top.begin(), top.end(), std::greater<double>());
        const double bound = top[8] * scale;  // Y_{k+1,n} / n^H for k = 8

        for (std::size_t j = 0; j <= n; ++j) {
            REQUIRE(z4.values[j] <= z8.values[j] + 1e-12);
            REQUIRE(z8.values[j] <= z.values[j] + 1e-12);
            REQUIRE(z.values[j] - z8.values[j] <= bound + 1e-12);
        }
    }
}

TEST_CASE("one-sided paths bracket the clamped maximum process") {
    const Hurst h(0.5);

    // Nonnegative noise: both one-sided paths coincide with the bracketed
    // process (the scaled running maximum including the zero term).
    const WalkSimulator nonneg(WalkSpec(WalkIncrements::IidGaussian, h, 128),
                               NoiseParams::pure_pareto(h, 1.0));
    for (std::size_t r = 0; r < 20; ++r) {
        const PerturbedWalk w = nonneg.simulate(47, r);
        const auto [lower, upper] = one_sided_paths(w, h);
        const GridPath middle = sandwich_middle_path(w, h);
        CHECK(lower.values == middle.values);
        CHECK(upper.values == middle.values);
    }

    const WalkSimulator signed_noise(WalkSpec(WalkIncrements::IidGaussian, h, 256),
                                     NoiseParams::two_sided(h, 2.0, 0.5));
    for (std::size_t r = 0; r < 200; ++r) {
        const PerturbedWalk w = signed_noise.simulate(48, r);
        const auto [lower, upper] = one_sided_paths(w, h);
        const GridPath middle = sandwich_middle_path(w, h);
        for (std::size_t j = 0; j <= 256; ++j) {
            REQUIRE(lower.values[j] <= middle.values[j] + 1e-12);
            REQUIRE(middle.values[j] <= upper.values[j] + 1e-12);
        }
    }
}

TEST_CASE("longest nonnegative gap") {
    CHECK(longest_nonneg_gap({0, 1, 2, -1, -1, 3, -1}) == 3);
    CHECK(longest_nonneg_gap({0, 1, 1, 1}) == 1);
    CHECK(longest_nonneg_gap({0, -1, -1, -1}) == 3);
    CHECK(longest_nonneg_gap({0}) == 0);
    CHECK_THROWS_AS(longest_nonneg_gap({1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(longest_nonneg_gap({}), std::invalid_argument);
}

TEST_CASE("longest gap tracks the head-run location uniformly in n") {
    const Hurst h(0.5);
    const double p = 0.5;  // P(Y < 0) for theta = 0.5
    const NoiseParams noise = NoiseParams::two_sided(h, 2.0, 0.5);
    std::vector<double> iqr_by_n;
    for (std::size_t n : {1024u, 4096u, 16384u}) {
        const std::size_t reps = 3000;
        std::vector<double> centered(reps);
        parallel_chunks(reps, 2, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t r = lo; r < hi; ++r) {
                Rng rng = Rng::stream(49 + n, r);
                std::vector<double> y = draw_perturbations(noise, n + 1, rng);
                y[0] = 0.0;
                const double center =
                    std::log(static_cast<double>(n) * (1.0 - p)) / std::log(1.0 / p);
                centered[r] = static_cast<double>(longest_nonneg_gap(y)) - center;
            }
        });
        const EcdfSummary ecdf(centered);
        iqr_by_n.push_back(ecdf.quantile(0.75) - ecdf.quantile(0.25));
    }
    for (double iqr : iqr_by_n) CHECK(iqr <= 6.0);
    CHECK(iqr_by_n.back() <= iqr_by_n.front() + 1.5);
}
