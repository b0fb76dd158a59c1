#pragma once

#include <utility>
#include <vector>

#include "fbmshot/types.hpp"

namespace fbmshot {

/// Strictly increasing continuous piecewise-linear time change of [a, b] with
/// the endpoints fixed, represented by matched breakpoint pairs (t, lambda(t)).
class TimeChange {
public:
    explicit TimeChange(std::vector<std::pair<double, double>> breakpoints);

    double operator()(double t) const;

    const std::vector<std::pair<double, double>>& breakpoints() const {
        return breakpoints_;
    }

private:
    std::vector<std::pair<double, double>> breakpoints_;
};

/// sup over grid nodes in [a, b] of |x - y|. Both paths must share the grid.
double sup_distance(const GridPath& x, const GridPath& y, double a = 0.0, double b = 1.0);

struct J1Result {
    double distance;
    TimeChange change;
};

/// Skorohod J1 distance restricted to grid-aligned time changes: the minimum
/// over strictly increasing lattice chains of matched grid nodes of
///   max( time displacement at the breakpoints,
///        value mismatch over all segment pairs the change overlaps ).
/// Exact for step paths whose jumps sit on the grid; always <= sup_distance.
/// Paths on different grids are first re-sampled to the union refinement.
double skorohod_j1(const GridPath& x, const GridPath& y, double a = 0.0, double b = 1.0);

/// Same minimum together with an optimal time change.
J1Result skorohod_j1_alignment(const GridPath& x, const GridPath& y, double a = 0.0,
                               double b = 1.0);

/// Lossless re-sampling of both step paths onto the union (lcm) grid.
std::pair<GridPath, GridPath> resample_to_common_grid(const GridPath& x,
                                                      const GridPath& y);

/// Uniform modulus of continuity: max over grid pairs with |s - t| <= delta.
double uniform_modulus(const GridPath& x, double delta);

/// Partition modulus: minimum over grid-node partitions with spacing > delta
/// of the largest within-interval oscillation (intervals half-open on the
/// right). Computed by bisection over candidate oscillation values with a
/// linear-time sliding-window feasibility check.
double partition_modulus(const GridPath& x, double delta);

/// Largest jump of the step path: max adjacent node difference.
double max_jump(const GridPath& x);

}  // namespace fbmshot
