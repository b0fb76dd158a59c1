#include "fbmshot/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fbmshot {

EcdfSummary::EcdfSummary(std::vector<double> sample) : sorted_(std::move(sample)) {
    if (sorted_.empty()) throw std::invalid_argument("empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EcdfSummary::quantile(double p) const {
    if (!(p >= 0.0) || !(p <= 1.0)) {
        throw std::invalid_argument("quantile level must lie in [0, 1]");
    }
    if (sorted_.size() == 1) return sorted_[0];
    const double pos = p * static_cast<double>(sorted_.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= sorted_.size()) return sorted_.back();
    const double w = pos - static_cast<double>(lo);
    return sorted_[lo] + w * (sorted_[lo + 1] - sorted_[lo]);
}

double EcdfSummary::cdf(double x) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double kolmogorov_survival(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 1.0) {
        // Jacobi-theta dual form, accurate where the direct series is slow.
        const double pi = std::numbers::pi;
        double sum = 0.0;
        for (int k = 1; k <= 100; k += 2) {
            sum += std::exp(-static_cast<double>(k) * static_cast<double>(k) * pi * pi /
                            (8.0 * lambda * lambda));
        }
        const double cdf = std::sqrt(2.0 * pi) / lambda * sum;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        sum += sign * std::exp(-2.0 * static_cast<double>(k) * static_cast<double>(k) *
                               lambda * lambda);
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double chi_square3_survival(double x) {
    if (x <= 0.0) return 1.0;
    const double s = std::sqrt(x / 2.0);
    return std::erfc(s) + std::sqrt(2.0 * x / std::numbers::pi) * std::exp(-x / 2.0);
}

KsReport ks_two_sample(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_two_sample requires nonempty samples");
    }
    std::vector<double> sa = a;
    std::vector<double> sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const double n1 = static_cast<double>(sa.size());
    const double n2 = static_cast<double>(sb.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() || j < sb.size()) {
        double v;
        if (j == sb.size() || (i < sa.size() && sa[i] <= sb[j])) {
            v = sa[i];
        } else {
            v = sb[j];
        }
        while (i < sa.size() && sa[i] == v) ++i;
        while (j < sb.size() && sb[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n1 -
                                 static_cast<double>(j) / n2));
    }

    KsReport report;
    report.statistic = d;
    report.n1 = sa.size();
    report.n2 = sb.size();
    report.two_sample = true;
    const double n_eff = n1 * n2 / (n1 + n2);
    report.p_value = kolmogorov_survival(std::sqrt(n_eff) * d);
    return report;
}

KsReport ks_vs_cdf(const std::vector<double>& a,
                   const std::function<double(double)>& cdf) {
    if (a.empty()) throw std::invalid_argument("ks_vs_cdf requires a nonempty sample");
    std::vector<double> sa = a;
    std::sort(sa.begin(), sa.end());
    const double n = static_cast<double>(sa.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        const double f = cdf(sa[i]);
        if (!(f >= 0.0) || !(f <= 1.0)) {
            throw std::invalid_argument("reference cdf returned a value outside [0, 1]");
        }
        d = std::max(d, static_cast<double>(i + 1) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    KsReport report;
    report.statistic = d;
    report.n1 = sa.size();
    report.n2 = 0;
    report.two_sample = false;
    report.p_value = kolmogorov_survival(std::sqrt(n) * d);
    return report;
}

}  // namespace fbmshot
