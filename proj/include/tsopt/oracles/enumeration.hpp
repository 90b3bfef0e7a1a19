#pragma once

#include <cstddef>
#include <optional>

#include "tsopt/design.hpp"
#include "tsopt/engine.hpp"

namespace tsopt::oracles {

struct EnumerationResult {
  std::optional<DesignVector> best;  // first minimizer in lexicographic lattice order
  double best_value = 0.0;
  std::size_t points = 0;
  std::size_t feasible_points = 0;
};

/// Evaluates every lattice point. Intended for grids of up to ~1e6 points.
EnumerationResult exhaustive_minimum(const Problem& problem, const DesignGrid& grid);

/// Classical first-improvement Hooke-Jeeves descent on the lattice: try
/// x_i + step then x_i - step per variable and keep the first improvement,
/// halve the step when a full sweep fails. No memory, no restarts.
struct DescentResult {
  DesignVector point;
  double value = 0.0;
  std::size_t evaluations = 0;
};
DescentResult first_improvement_descent(const Problem& problem, const DesignGrid& grid, DesignVector start,
                                        double initial_step);

}  // namespace tsopt::oracles
