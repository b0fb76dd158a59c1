#pragma once

#include <cstdint>
#include <vector>

#include "fbmshot/rng.hpp"
#include "fbmshot/types.hpp"

namespace fbmshot {

enum class NoiseLaw {
    PurePareto,             // P(Y > x) = kappa x^{-1/H} exactly, Y >= kappa^H
    ShiftedPareto,          // P(Y > x) = kappa (x + kappa^H)^{-1/H}, Y >= 0
    ParetoWithNegativePart  // positive Pareto branch with probability theta
};

enum class NegativeTail {
    Exponential,  // minus a unit exponential (light lower tail)
    Pareto        // balanced regular variation: P(Y < -x) = (1-theta) kappa0 x^{-1/H}
};

/// Parameters of the perturbation law. The tail constants are tied by
/// kappa = kappa0 * theta whenever theta > 0.
class NoiseParams {
public:
    /// Nonnegative law with exact upper tail P(Y > x) = kappa x^{-1/H}.
    static NoiseParams pure_pareto(Hurst hurst, double kappa);

    /// Nonnegative law with the same tail only asymptotically.
    static NoiseParams shifted_pareto(Hurst hurst, double kappa);

    /// Signed law: P(|Y| > x) ~ kappa0 x^{-1/H} with upper-tail weight theta.
    static NoiseParams two_sided(Hurst hurst, double kappa0, double theta,
                                 NegativeTail negative_tail = NegativeTail::Exponential);

    Hurst hurst() const { return hurst_; }
    double kappa() const { return kappa_; }
    double kappa0() const { return kappa0_; }
    double theta() const { return theta_; }
    NoiseLaw law() const { return law_; }
    NegativeTail negative_tail() const { return negative_tail_; }

private:
    NoiseParams(Hurst hurst, double kappa, double kappa0, double theta, NoiseLaw law,
                NegativeTail negative_tail);

    Hurst hurst_;
    double kappa_;
    double kappa0_;
    double theta_;
    NoiseLaw law_;
    NegativeTail negative_tail_;
};

/// Quantile transform of the perturbation law: maps u in [0, 1) to a draw.
double sample_perturbation(const NoiseParams& params, double u);

/// Convenience: count draws through the quantile transform from one stream.
std::vector<double> draw_perturbations(const NoiseParams& params, std::size_t count,
                                       Rng& rng);

/// Limit law of max_{i<=n} Y_i / n^H: the Frechet CDF exp(-kappa x^{-1/H}).
/// n is validated but does not enter the returned limit value.
double max_order_statistic_cdf(const NoiseParams& params, std::size_t n, double x);

/// Finite truncation of the Poisson point process {(eta_i, U_i, epsilon_i)}
/// with intensity H^{-1} x^{-1-1/H} dx du: eta_i = Gamma_i^{-H} for the
/// unit-rate Poisson arrivals Gamma_i, so eta is strictly decreasing and the
/// omitted points all lie below Gamma_k^{-H}.
struct PointSet {
    struct Point {
        double eta;
        double u;
        int sign;  // +1 or -1
    };

    std::vector<Point> points;  // ordered by decreasing eta
    std::vector<double> gamma;  // underlying Poisson arrival times

    std::size_t truncation_count() const { return points.size(); }

    /// Last arrival time Gamma_k; downstream truncation bounds use
    /// kappa^H * gamma_last()^{-H}.
    double gamma_last() const;
};

PointSet sample_point_process(const NoiseParams& params, std::size_t k, std::uint64_t seed);

/// Same point process drawn from an existing stream (k points extend the
/// first k points of any longer draw from the same stream position).
PointSet sample_point_process_from(const NoiseParams& params, std::size_t k, Rng& rng);

/// Extremal process V_t = max{ eta_i : u_i <= t }, zero when no point qualifies.
double extremal_process(const PointSet& ps, double t);

}  // namespace fbmshot
