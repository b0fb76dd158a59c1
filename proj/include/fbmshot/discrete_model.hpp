#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fbmshot/fbm.hpp"
#include "fbmshot/noise.hpp"
#include "fbmshot/rng.hpp"
#include "fbmshot/types.hpp"

namespace fbmshot {

enum class WalkIncrements {
    IidGaussian,      // requires H = 1/2
    Fgn,              // exact fractional Gaussian noise, scaling holds at every n
    LinearLongMemory  // one-sided linear process with a_j ~ j^{H - 3/2}
};

struct WalkSpec {
    WalkIncrements increments = WalkIncrements::Fgn;
    Hurst hurst{0.5};
    std::size_t n = 0;

    WalkSpec(WalkIncrements inc, Hurst h, std::size_t steps);
};

/// Walk and perturbations with the index-0 convention S_0 = Y_0 = 0.
struct PerturbedWalk {
    std::vector<double> s;  // length n + 1
    std::vector<double> y;  // length n + 1

    std::size_t n() const { return s.empty() ? 0 : s.size() - 1; }
};

/// Reusable generator: the increment machinery (spectral plan or linear
/// coefficients) is built once per spec and shared across replicates.
class WalkSimulator {
public:
    WalkSimulator(WalkSpec spec, NoiseParams noise);

    /// Walk and noise streams are drawn from disjoint sub-streams
    /// (seed, replicate, 0) and (seed, replicate, 1).
    PerturbedWalk simulate(std::uint64_t seed, std::uint64_t replicate = 0) const;

    const WalkSpec& spec() const { return spec_; }
    const NoiseParams& noise() const { return noise_; }

private:
    WalkSpec spec_;
    NoiseParams noise_;
    std::shared_ptr<const FgnSampler> fgn_;
    std::vector<double> linear_coeff_;  // c * a_j, already normalized
};

PerturbedWalk simulate_walk(const WalkSpec& spec, const NoiseParams& noise,
                            std::uint64_t seed);

/// Running maximum M with M_0 = 0 and M_i = max_{j=1..i}(s_j + y_j); M_1 may
/// be negative since the zero term is not included for i >= 1.
std::vector<double> max_process(const PerturbedWalk& w);

/// Z_{n, j/n} = m_j / n^H on the uniform grid.
GridPath scaled_path(const std::vector<double>& m, std::size_t n, Hurst hurst);

/// Truncated path Z^(k): perturbations below the k-th largest of y_1..y_n are
/// dropped (ties with the k-th largest are kept).
GridPath truncated_scaled_path(const PerturbedWalk& w, std::size_t k, Hurst hurst);

/// One-sided modifications bracketing the maximum process:
///   first  Z^{-inf}: max_{i=0..floor(nt)} (s_i + y_i) 1{y_i >= 0} / n^H
///   second Z^{0}   : max_{i=0..floor(nt)} (s_i + y_i 1{y_i >= 0}) / n^H
/// Both maxima include the zero term at i = 0, so both paths are nonnegative
/// and bracket sandwich_middle_path pathwise.
std::pair<GridPath, GridPath> one_sided_paths(const PerturbedWalk& w, Hurst hurst);

/// The bracketed process max_{i=0..floor(nt)} (s_i + y_i) / n^H; equals the
/// scaled max_process clamped below at zero.
GridPath sandwich_middle_path(const PerturbedWalk& w, Hurst hurst);

/// Longest gap between consecutive indices with y >= 0, with index 0 always
/// counted and the right boundary n appended.
std::size_t longest_nonneg_gap(const std::vector<double>& y);

}  // namespace fbmshot
