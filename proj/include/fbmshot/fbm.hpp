#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "fbmshot/rng.hpp"
#include "fbmshot/types.hpp"

namespace fbmshot {

/// Covariance of standard fractional Brownian motion,
///   Cov(B_s, B_t) = (s^{2H} + t^{2H} - |s - t|^{2H}) / 2,  s, t >= 0.
double fbm_covariance(Hurst hurst, double s, double t);

/// Autocovariance Cov(X_i, X_{i+k}) of unit-step fractional Gaussian noise,
///   r(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2.
double fgn_autocovariance(Hurst hurst, std::size_t lag);

struct FgnConfig {
    /// Circulant eigenvalues in [-eig_tolerance * max_eig, 0) are clamped to 0;
    /// anything more negative triggers the dense fallback.
    double eig_tolerance = 1e-8;
    /// Largest n for which the O(n^2)-memory Cholesky fallback is attempted.
    std::size_t cholesky_limit = 4096;
    /// Skip the embedding and always use the dense factorization.
    bool force_cholesky = false;
};

/// Exact sampler for n stationary fractional Gaussian noise increments.
///
/// Uses circulant embedding of the Toeplitz covariance with a radix-2 FFT;
/// the embedding is padded to a power of two and its first n coordinates have
/// the prescribed covariance exactly whenever the circulant eigenvalues are
/// nonnegative. A dense Cholesky factorization serves as fallback for small n.
/// The spectral plan is built once per (H, n) and can be shared across
/// replicates; sample() is const and safe to call concurrently with
/// independent Rng streams.
class FgnSampler {
public:
    FgnSampler(Hurst hurst, std::size_t n, FgnConfig config = {});

    std::vector<double> sample(Rng& rng) const;

    std::size_t size() const { return n_; }
    Hurst hurst() const { return hurst_; }
    bool used_cholesky() const { return !cholesky_.empty(); }

private:
    Hurst hurst_;
    std::size_t n_;
    bool white_noise_ = false;          // H = 1/2: increments are i.i.d.
    std::size_t embed_size_ = 0;        // FFT length m (power of two >= 2n)
    std::vector<double> weight_;        // sqrt(lambda_k / m) for the synthesis
    std::vector<double> cholesky_;      // row-major lower factor, fallback only
};

/// One-shot fGn draw: n increments from the stream (seed, 0, 0).
std::vector<double> sample_fgn(Hurst hurst, std::size_t n, std::uint64_t seed,
                               FgnConfig config = {});

/// Fractional Brownian motion on the uniform grid of [0, 1]:
/// values[j] = n^{-H} * (X_1 + ... + X_j) with X from sample_fgn, values[0] = 0.
GridPath fbm_path(Hurst hurst, std::size_t n_points, std::uint64_t seed,
                  FgnConfig config = {});

/// Same path law, drawing from an existing sampler and stream.
GridPath fbm_path_from(const FgnSampler& sampler, Rng& rng);

}  // namespace fbmshot
