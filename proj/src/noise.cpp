#include "fbmshot/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fbmshot {

NoiseParams::NoiseParams(Hurst hurst, double kappa, double kappa0, double theta,
                         NoiseLaw law, NegativeTail negative_tail)
    : hurst_(hurst),
      kappa_(kappa),
      kappa0_(kappa0),
      theta_(theta),
      law_(law),
      negative_tail_(negative_tail) {}

NoiseParams NoiseParams::pure_pareto(Hurst hurst, double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    return NoiseParams(hurst, kappa, kappa, 1.0, NoiseLaw::PurePareto,
                       NegativeTail::Exponential);
}

NoiseParams NoiseParams::shifted_pareto(Hurst hurst, double kappa) {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    return NoiseParams(hurst, kappa, kappa, 1.0, NoiseLaw::ShiftedPareto,
                       NegativeTail::Exponential);
}

NoiseParams NoiseParams::two_sided(Hurst hurst, double kappa0, double theta,
                                   NegativeTail negative_tail) {
    if (!(kappa0 > 0.0)) throw std::invalid_argument("kappa0 must be positive");
    if (!(theta >= 0.0) || !(theta <= 1.0)) {
        throw std::invalid_argument("theta must lie in [0, 1]");
    }
    return NoiseParams(hurst, kappa0 * theta, kappa0, theta,
                       NoiseLaw::ParetoWithNegativePart, negative_tail);
}

namespace {

// Pareto quantile with tail constant c: P(Y > x) = c x^{-1/H} on [c^H, inf).
double pareto_quantile(double c, double h, double u) {
    return std::pow(c, h) * std::pow(1.0 - u, -h);
}

constexpr double kMinOpenUniform = 0x1.0p-53;

}  // namespace

double sample_perturbation(const NoiseParams& params, double u) {
    if (!(u >= 0.0) || !(u < 1.0)) {
        throw std::invalid_argument("uniform variate must lie in [0, 1)");
    }
    const double h = params.hurst().value();
    switch (params.law()) {
        case NoiseLaw::PurePareto:
            return pareto_quantile(params.kappa(), h, u);
        case NoiseLaw::ShiftedPareto:
            return pareto_quantile(params.kappa(), h, u) - std::pow(params.kappa(), h);
        case NoiseLaw::ParetoWithNegativePart: {
            const double theta = params.theta();
            if (u >= 1.0 - theta) {
                // Positive branch: magnitude Pareto with constant kappa0, so
                // P(Y > x) = theta * kappa0 x^{-1/H} = kappa x^{-1/H}.
                const double rescaled = (u - (1.0 - theta)) / theta;
                return pareto_quantile(params.kappa0(), h, rescaled);
            }
            const double rescaled =
                std::max(theta < 1.0 ? u / (1.0 - theta) : 0.0, kMinOpenUniform);
            if (params.negative_tail() == NegativeTail::Exponential) {
                return std::log(rescaled);  // quantile of minus a unit exponential
            }
            return -std::pow(params.kappa0(), h) * std::pow(rescaled, -h);
        }
    }
    throw std::logic_error("unreachable noise law");
}

std::vector<double> draw_perturbations(const NoiseParams& params, std::size_t count,
                                       Rng& rng) {
    std::vector<double> out(count);
    for (auto& y : out) y = sample_perturbation(params, rng.uniform());
    return out;
}

double max_order_statistic_cdf(const NoiseParams& params, std::size_t n, double x) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (x <= 0.0) return 0.0;  // Frechet support
    return std::exp(-params.kappa() * std::pow(x, -1.0 / params.hurst().value()));
}

double PointSet::gamma_last() const {
    if (gamma.empty()) throw std::logic_error("empty point set has no arrival times");
    return gamma.back();
}

PointSet sample_point_process_from(const NoiseParams& params, std::size_t k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("point process truncation needs k >= 1");
    PointSet ps;
    ps.points.reserve(k);
    ps.gamma.reserve(k);
    const double h = params.hurst().value();
    double arrival = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        arrival += rng.exponential();
        const double u = rng.uniform_open();
        const int sign = rng.uniform() < params.theta() ? 1 : -1;
        ps.gamma.push_back(arrival);
        ps.points.push_back({std::pow(arrival, -h), u, sign});
    }
    // eta inherits strict monotonicity from the arrivals; u collisions are a
    // probability-zero event asserted on generated data.
    std::vector<double> us(k);
    for (std::size_t i = 0; i < k; ++i) us[i] = ps.points[i].u;
    std::sort(us.begin(), us.end());
    if (std::adjacent_find(us.begin(), us.end()) != us.end()) {
        throw std::runtime_error("point process drew coincident u coordinates");
    }
    return ps;
}

PointSet sample_point_process(const NoiseParams& params, std::size_t k,
                              std::uint64_t seed) {
    Rng rng = Rng::stream(seed);
    return sample_point_process_from(params, k, rng);
}

double extremal_process(const PointSet& ps, double t) {
    if (ps.points.empty()) throw std::invalid_argument("point set must be nonempty");
    if (!(t >= 0.0) || t > 1.0) {
        throw std::invalid_argument("t must lie in [0, 1]");
    }
    double best = 0.0;
    for (const auto& p : ps.points) {
        if (p.u <= t && p.eta > best) best = p.eta;
    }
    return best;
}

}  // namespace fbmshot
