#pragma once

// Small lattice problems with known optima, for checking the search against
// exhaustive enumeration.

#include <string>
#include <vector>

#include "tsopt/engine.hpp"

namespace tsopt::oracles {

struct SyntheticCase {
  std::string name;
  FunctionProblem problem;
  std::vector<double> min_step;  // lattice spacing
};

/// Two-basin bowl (2-D), a constrained linear cost (3-D) and a shifted
/// Rastrigin function (4-D). Every lattice has fewer than 1e5 points.
std::vector<SyntheticCase> synthetic_cases();

}  // namespace tsopt::oracles
