#pragma once

// Variable-step tabu search over a bounded lattice.
//
// Each control step performs one best-admissible coordinate move (plus an
// optional pattern extension), then consults the stall counter, the number
// of moves since the incumbent last improved:
//
//   stall == intensify_after  -> restart from the mean of the elite list
//   stall == diversify_after  -> restart from a random feasible point near
//                                the incumbent
//   stall >= reduce_after     -> halve the step, truncate to the minimum step
//                                grid, and reset the counter; once the step is
//                                minimal, either start a new cycle from the
//                                incumbent at the initial step or stop.
//
// Only a new incumbent resets the counter before it reaches reduce_after.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsopt/design.hpp"
#include "tsopt/tabu_memory.hpp"

namespace tsopt {

struct Evaluation {
  double value = 0.0;  // minimized
  bool feasible = true;
};

/// Objective evaluator seen by the search. evaluate() must be pure.
class Problem {
public:
  virtual ~Problem() = default;
  virtual Bounds bounds() const = 0;
  virtual Evaluation evaluate(std::span<const double> x) const = 0;
  /// Human-readable reason a point is infeasible.
  virtual std::string explain_infeasibility(std::span<const double> x) const;
};

/// Adapts a callable to Problem; handy for synthetic test functions.
class FunctionProblem : public Problem {
public:
  using Function = std::function<Evaluation(std::span<const double>)>;
  FunctionProblem(Bounds bounds, Function f) : bounds_(std::move(bounds)), f_(std::move(f)) {}
  Bounds bounds() const override { return bounds_; }
  Evaluation evaluate(std::span<const double> x) const override { return f_(x); }

private:
  Bounds bounds_;
  Function f_;
};

class InfeasibleStart : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct SearchConfig {
  std::size_t tabu_size = 7;
  std::size_t elite_size = 5;
  double pattern_factor = 2.0;
  std::size_t intensify_after = 4;
  std::size_t diversify_after = 8;
  std::size_t reduce_after = 12;
  // Per variable; a single entry applies to all. Empty initial_step means
  // (upper - lower) / 10 truncated to the minimum step.
  std::vector<double> initial_step;
  std::vector<double> min_step{1.0};
  std::size_t max_evaluations = 20000;
  std::uint64_t rng_seed = 1;
  std::size_t diversify_attempts = 50;
  // Diversified points are drawn within this many current steps of the
  // incumbent in each variable; 0 draws uniformly over the bounds.
  std::size_t diversify_radius = 2;
  // On reaching the minimum-step fixpoint, reset the step to its initial
  // value and carry on from the incumbent until the budget is spent.
  bool restart_on_convergence = true;
  bool record_path = false;

  /// Throws std::invalid_argument naming the offending field.
  void validate(const Bounds& bounds) const;
  std::vector<double> resolved_min_step(std::size_t dimension) const;
  std::vector<double> resolved_initial_step(const Bounds& bounds) const;
};

enum class SearchEvent { move, intensify, diversify, reduce, restart };
const char* to_string(SearchEvent e);

enum class Termination { running, budget_exhausted, converged };
const char* to_string(Termination t);

struct TraceEntry {
  std::size_t evaluations = 0;
  double best_value = 0.0;
  double step_size = 0.0;  // largest per-variable step
  SearchEvent event = SearchEvent::move;
  bool fallback = false;   // diversification found no feasible point
};

/// A base point taken by the search, kept only when record_path is set.
struct PathEntry {
  DesignVector point;
  SearchEvent event = SearchEvent::move;
  bool aspiration = false;  // accepted although tabu
};

struct SearchState {
  DesignGrid grid;
  DesignVector base;
  double base_value = 0.0;
  DesignVector best;
  double best_value = 0.0;
  std::vector<double> step;
  std::vector<double> min_step;
  std::size_t stall_counter = 0;
  std::size_t evaluations = 0;
  TabuList tabu;
  EliteList elite;
  std::vector<TraceEntry> trace;
  std::vector<PathEntry> path;
  std::mt19937_64 rng;
  Termination termination = Termination::running;
  std::size_t diversify_fallbacks = 0;
  std::size_t cycle_start_evaluations = 0;  // at the last restart

  bool step_is_minimal() const;
  double max_step() const;
};

/// Validates config and start, evaluates the start point, seeds both memories.
SearchState initialize_search(const Problem& problem, const SearchConfig& config, const DesignVector& start);

/// One iteration of the control loop. Does nothing once terminated.
SearchEvent control_step(SearchState& state, const Problem& problem, const SearchConfig& config);

struct SearchResult {
  DesignVector best;
  double best_value = 0.0;
  std::vector<TraceEntry> trace;
  std::vector<PathEntry> path;
  std::size_t evaluations = 0;
  Termination termination = Termination::running;
  std::size_t diversify_fallbacks = 0;
};

SearchResult run_search(const Problem& problem, const SearchConfig& config, const DesignVector& start);

/// Component-wise mean of the elite designs, snapped to the grid. Falls back
/// to `fallback` when the list is empty.
DesignVector intensify(const EliteList& elite, const DesignGrid& grid, const DesignVector& fallback);

/// Uniform draw over the lattice; no feasibility check.
DesignVector random_grid_point(const DesignGrid& grid, std::mt19937_64& rng);

/// Each variable of `center` moved by a uniform integer number of steps in
/// [-radius, radius], then clipped and snapped.
DesignVector random_nearby_point(const DesignGrid& grid, const DesignVector& center, std::span<const double> step,
                                 std::size_t radius, std::mt19937_64& rng);

struct RestartPoint {
  DesignVector point;
  Evaluation evaluation;
  bool fallback = false;
};

/// Random feasible, non-tabu lattice point, drawn around the incumbent (see
/// SearchConfig::diversify_radius); up to config.diversify_attempts draws,
/// after which the incumbent is returned with fallback set. nullopt when the
/// evaluation budget runs out.
std::optional<RestartPoint> diversify(SearchState& state, const Problem& problem, const SearchConfig& config);

/// max(min_step, floor(step / 2 / min_step) * min_step).
double reduce_step(double step, double min_step);

}  // namespace tsopt
