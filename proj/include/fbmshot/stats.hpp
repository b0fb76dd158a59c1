#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fbmshot {

/// Sorted-sample summary with interpolated quantiles.
class EcdfSummary {
public:
    explicit EcdfSummary(std::vector<double> sample);

    std::size_t n() const { return sorted_.size(); }
    const std::vector<double>& sorted_sample() const { return sorted_; }

    /// Interpolated quantile; quantile(0) = min, quantile(1) = max.
    double quantile(double p) const;

    /// Fraction of the sample <= x.
    double cdf(double x) const;

private:
    std::vector<double> sorted_;
};

struct KsReport {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;  // zero in one-sample mode
    bool two_sample = false;
};

/// Exact sup discrepancy between the two ECDFs (merge scan), with the
/// asymptotic Kolmogorov p-value at effective size n1 n2 / (n1 + n2).
KsReport ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);

/// One-sample statistic max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n).
KsReport ks_vs_cdf(const std::vector<double>& a,
                   const std::function<double(double)>& cdf);

/// Survival function of the Kolmogorov distribution,
/// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_survival(double lambda);

/// Survival function of the chi-square distribution with 3 degrees of
/// freedom (closed form); used by the contingency independence checks.
double chi_square3_survival(double x);

}  // namespace fbmshot
