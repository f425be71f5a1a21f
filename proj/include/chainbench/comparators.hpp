#pragma once

#include <vector>

#include "chainbench/environments.hpp"

namespace chainbench {

enum class ComparatorClass { BestGridConstant, Lipschitz1 };

// Result of a comparator search: the minimized cumulative loss together
// with the per-round losses of the minimizer, so regret curves can be
// charted round by round. `slack` is the reported discretization bound
// T * step on how far the value may sit above the continuum optimum.
struct ComparatorResult {
    double total = 0.0;
    std::vector<double> per_round;
    double slack = 0.0;
};

// Brute-force best constant action over the uniform grid {k/resolution},
// k = 0..resolution (any dimension).
ComparatorResult best_grid_constant(const std::vector<EnvironmentRound>& rounds, int resolution);

// Best Lipschitz policy, discretized.
//
// d = 1: dynamic program over `resolution` equal context bins in position
// order, with states on the action grid {k/resolution} and transitions
// between adjacent bins limited to one grid step (= the bin width), i.e.
// a discrete 1-Lipschitz coupling. The optimum upper-bounds the continuum
// infimum and converges as the resolution grows.
//
// d >= 2: exact enumeration over assignments of occupied context cells to
// grid actions under the pairwise constraint
// |a_i - a_j| <= sup-distance of the cell centers. Throws
// ComparatorTooLarge when more than `max_occupied_cells` cells are
// occupied or the assignment space exceeds an internal budget.
ComparatorResult lipschitz_comparator(const std::vector<EnvironmentRound>& rounds, int resolution,
                                      int max_occupied_cells = 6);

ComparatorResult comparator_value(const std::vector<EnvironmentRound>& rounds, ComparatorClass cls,
                                  int resolution);

} // namespace chainbench
