#include "fbmshot/fbm.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fbmshot {

double fbm_covariance(Hurst hurst, double s, double t) {
    if (s < 0.0 || t < 0.0) {
        throw std::invalid_argument("fbm_covariance requires s >= 0 and t >= 0");
    }
    const double two_h = 2.0 * hurst.value();
    return 0.5 * (std::pow(s, two_h) + std::pow(t, two_h) -
                  std::pow(std::abs(s - t), two_h));
}

double fgn_autocovariance(Hurst hurst, std::size_t lag) {
    const double two_h = 2.0 * hurst.value();
    if (lag == 0) return 1.0;
    const double k = static_cast<double>(lag);
    return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) +
                  std::pow(k - 1.0, two_h));
}

namespace {

// Iterative radix-2 Cooley-Tukey, in place; size must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = (inverse ? 2.0 : -2.0) * std::numbers::pi /
                             static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= scale;
    }
}

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

// Dense lower Cholesky factor of the Toeplitz fGn covariance, row-major.
std::vector<double> fgn_cholesky(Hurst hurst, std::size_t n) {
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = fgn_autocovariance(hurst, k);
    std::vector<double> l(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = r[i - j];
            for (std::size_t k = 0; k < j; ++k) sum -= l[i * n + k] * l[j * n + k];
            if (i == j) {
                if (sum <= 0.0) {
                    throw SynthesisError(
                        "fGn covariance lost positive definiteness in Cholesky at row " +
                            std::to_string(i),
                        sum);
                }
                l[i * n + i] = std::sqrt(sum);
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    return l;
}

}  // namespace

FgnSampler::FgnSampler(Hurst hurst, std::size_t n, FgnConfig config)
    : hurst_(hurst), n_(n) {
    if (n < 1) throw std::invalid_argument("FgnSampler requires n >= 1");

    if (hurst.value() == 0.5) {
        white_noise_ = true;  // r(k) vanishes for k >= 1
        return;
    }

    if (!config.force_cholesky) {
        const std::size_t m = next_pow2(std::max<std::size_t>(2 * n, 2));
        // First row of the circulant: r(0), ..., r(m/2), r(m/2 - 1), ..., r(1).
        std::vector<std::complex<double>> row(m);
        for (std::size_t k = 0; k <= m / 2; ++k) row[k] = fgn_autocovariance(hurst, k);
        for (std::size_t k = m / 2 + 1; k < m; ++k) row[k] = row[m - k];
        fft_pow2(row, false);

        double max_eig = 0.0;
        double min_eig = 0.0;
        for (const auto& lambda : row) {
            max_eig = std::max(max_eig, lambda.real());
            min_eig = std::min(min_eig, lambda.real());
        }
        if (min_eig >= -config.eig_tolerance * max_eig) {
            embed_size_ = m;
            weight_.resize(m);
            const double inv_m = 1.0 / static_cast<double>(m);
            for (std::size_t k = 0; k < m; ++k) {
                weight_[k] = std::sqrt(std::max(row[k].real(), 0.0) * inv_m);
            }
            return;
        }
        if (n > config.cholesky_limit) {
            throw SynthesisError(
                "circulant embedding has eigenvalue " + std::to_string(min_eig) +
                    " below tolerance and n exceeds the Cholesky fallback limit",
                min_eig);
        }
    } else if (n > config.cholesky_limit) {
        throw SynthesisError("requested Cholesky synthesis beyond the size limit", 0.0);
    }

    cholesky_ = fgn_cholesky(hurst, n);
}

std::vector<double> FgnSampler::sample(Rng& rng) const {
    std::vector<double> out(n_);

    if (white_noise_) {
        for (auto& x : out) x = rng.normal();
        return out;
    }

    if (!cholesky_.empty()) {
        std::vector<double> z(n_);
        for (auto& x : z) x = rng.normal();
        for (std::size_t i = 0; i < n_; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j <= i; ++j) sum += cholesky_[i * n_ + j] * z[j];
            out[i] = sum;
        }
        return out;
    }

    // Davies-Harte synthesis: Hermitian complex Gaussian spectrum weighted by
    // sqrt(lambda_k / m), transformed back; the real part is an exact draw.
    const std::size_t m = embed_size_;
    std::vector<std::complex<double>> w(m);
    w[0] = weight_[0] * rng.normal();
    w[m / 2] = weight_[m / 2] * rng.normal();
    const double half = std::numbers::sqrt2 / 2.0;
    for (std::size_t k = 1; k < m / 2; ++k) {
        const double re = half * rng.normal();
        const double im = half * rng.normal();
        w[k] = weight_[k] * std::complex<double>(re, im);
        w[m - k] = weight_[m - k] * std::complex<double>(re, -im);
    }
    fft_pow2(w, false);
    for (std::size_t i = 0; i < n_; ++i) out[i] = w[i].real();
    return out;
}

std::vector<double> sample_fgn(Hurst hurst, std::size_t n, std::uint64_t seed,
                               FgnConfig config) {
    FgnSampler sampler(hurst, n, config);
    Rng rng = Rng::stream(seed);
    return sampler.sample(rng);
}

GridPath fbm_path_from(const FgnSampler& sampler, Rng& rng) {
    const std::size_t n = sampler.size();
    const std::vector<double> increments = sampler.sample(rng);
    std::vector<double> values(n + 1);
    values[0] = 0.0;
    const double scale = std::pow(static_cast<double>(n), -sampler.hurst().value());
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        sum += increments[j];
        values[j + 1] = scale * sum;
    }
    return GridPath(n, std::move(values));
}

GridPath fbm_path(Hurst hurst, std::size_t n_points, std::uint64_t seed,
                  FgnConfig config) {
    FgnSampler sampler(hurst, n_points, config);
    Rng rng = Rng::stream(seed);
    return fbm_path_from(sampler, rng);
}

}  // namespace fbmshot
