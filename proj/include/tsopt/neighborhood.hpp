#pragma once

// Move generation for the modified Hooke-Jeeves climber: every coordinate
// move is evaluated and the best admissible one is taken, followed by an
// optional pattern (extrapolation) move.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "tsopt/design.hpp"
#include "tsopt/tabu_memory.hpp"

namespace tsopt {

enum class MoveSource { explore, pattern };

struct CandidateMove {
  DesignVector point;
  double objective = std::numeric_limits<double>::infinity();
  bool feasible = false;
  MoveSource source = MoveSource::explore;
};

/// For i = 0..d-1: base with x_i + step_i, then x_i - step_i, each clipped and
/// snapped to the grid. Moves that collapse onto the base are dropped.
std::vector<DesignVector> generate_neighborhood(std::span<const double> base, std::span<const double> step,
                                                const DesignGrid& grid);

/// Index of the best feasible candidate that is not tabu. A tabu candidate
/// is admissible only if it strictly beats `incumbent` (aspiration). Ties go
/// to the earlier candidate. nullopt means no admissible move.
std::optional<std::size_t> select_move(std::span<const CandidateMove> candidates, const TabuList& tabu,
                                       double incumbent);

/// old_base + k * (new_base - old_base), clipped and snapped.
DesignVector pattern_move(std::span<const double> old_base, std::span<const double> new_base, double k,
                          const DesignGrid& grid);

}  // namespace tsopt
