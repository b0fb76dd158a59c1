#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbmshot {

/// Hurst index, restricted to the open interval (0, 1).
class Hurst {
public:
    explicit Hurst(double value) : value_(value) {
        if (!(value > 0.0) || !(value < 1.0)) {
            throw std::invalid_argument(
                "Hurst index must lie in the open interval (0, 1), got " +
                std::to_string(value));
        }
    }

    double value() const { return value_; }

private:
    double value_;
};

/// A cadlag path sampled on the uniform grid t_j = j / n_points of [0, 1].
/// The path is piecewise constant: it takes values[j] on [t_j, t_{j+1}).
struct GridPath {
    std::size_t n_points = 0;
    std::vector<double> values;  // length n_points + 1

    GridPath() = default;

    GridPath(std::size_t n, std::vector<double> v) : n_points(n), values(std::move(v)) {
        if (n_points < 1 || values.size() != n_points + 1) {
            throw std::invalid_argument("GridPath requires n_points >= 1 and n_points + 1 values");
        }
    }

    static GridPath zeros(std::size_t n) {
        return GridPath(n, std::vector<double>(n + 1, 0.0));
    }

    double time_at(std::size_t j) const {
        return static_cast<double>(j) / static_cast<double>(n_points);
    }

    /// Value of the step path at time t in [0, 1].
    double value_at(double t) const {
        if (t < 0.0 || t > 1.0) {
            throw std::invalid_argument("path time must lie in [0, 1]");
        }
        auto j = static_cast<std::size_t>(t * static_cast<double>(n_points));
        if (j > n_points) j = n_points;
        return values[j];
    }

    /// Running maximum, as a path on the same grid.
    GridPath running_max() const {
        std::vector<double> m(values.size());
        double best = values[0];
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (values[j] > best) best = values[j];
            m[j] = best;
        }
        return GridPath(n_points, std::move(m));
    }
};

/// Thrown when exact Gaussian synthesis cannot proceed (circulant embedding
/// rejected and the dense fallback is out of budget).
class SynthesisError : public std::runtime_error {
public:
    SynthesisError(const std::string& what, double offending_eigenvalue)
        : std::runtime_error(what), offending_eigenvalue_(offending_eigenvalue) {}

    double offending_eigenvalue() const { return offending_eigenvalue_; }

private:
    double offending_eigenvalue_;
};

}  // namespace fbmshot
