#include "tsopt/engine.hpp"

#include <algorithm>
#include <cmath>

#include "tsopt/neighborhood.hpp"

namespace tsopt {

namespace {

bool is_multiple(double value, double unit) {
  const double q = value / unit;
  return std::abs(q - std::round(q)) <= 1e-6 * std::max(1.0, q);
}

std::vector<double> broadcast(const std::vector<double>& v, std::size_t d, const char* name) {
  if (v.size() == d) return v;
  if (v.size() == 1) return std::vector<double>(d, v.front());
  throw std::invalid_argument(std::string("search.") + name + ": expected 1 or " + std::to_string(d) +
                              " values, got " + std::to_string(v.size()));
}

std::optional<Evaluation> evaluate_counted(SearchState& s, const Problem& problem, const SearchConfig& config,
                                           std::span<const double> x) {
  if (s.evaluations >= config.max_evaluations) {
    s.termination = Termination::budget_exhausted;
    return std::nullopt;
  }
  ++s.evaluations;
  return problem.evaluate(x);
}

void record(SearchState& s, const SearchConfig& config, SearchEvent event, bool aspiration = false) {
  if (config.record_path) s.path.push_back({s.base, event, aspiration});
}

// Makes `point` the new base. Returns true if it is a new incumbent.
bool adopt(SearchState& s, DesignVector point, double value) {
  s.base = std::move(point);
  s.base_value = value;
  s.tabu.push(s.base);
  if (value < s.best_value) {
    s.best = s.base;
    s.best_value = value;
    s.elite.offer(s.best, s.best_value);
    s.stall_counter = 0;
    return true;
  }
  return false;
}

// Best admissible coordinate move plus optional pattern extension.
void hill_climb_move(SearchState& s, const Problem& problem, const SearchConfig& config) {
  const auto points = generate_neighborhood(s.base, s.step, s.grid);
  std::vector<CandidateMove> candidates;
  candidates.reserve(points.size());
  for (const auto& p : points) {
    const auto e = evaluate_counted(s, problem, config, p);
    if (!e) break;
    candidates.push_back({p, e->value, e->feasible, MoveSource::explore});
  }

  const auto chosen = select_move(candidates, s.tabu, s.best_value);
  if (!chosen) {
    ++s.stall_counter;
    return;
  }

  CandidateMove next = candidates[*chosen];
  const bool aspiration = s.tabu.contains(next.point);
  if (next.objective < s.base_value) {
    auto extended = pattern_move(s.base, next.point, config.pattern_factor, s.grid);
    if (!s.grid.same_point(extended, next.point) && !s.tabu.contains(extended)) {
      if (const auto e = evaluate_counted(s, problem, config, extended); e && e->feasible && e->value < next.objective)
        next = {std::move(extended), e->value, true, MoveSource::pattern};
    }
  }

  if (!adopt(s, std::move(next.point), next.objective)) ++s.stall_counter;
  record(s, config, SearchEvent::move, aspiration);
}

void intensification_restart(SearchState& s, const Problem& problem, const SearchConfig& config) {
  auto point = intensify(s.elite, s.grid, s.best);
  for (;;) {
    if (s.grid.same_point(point, s.best)) {
      point = s.best;
      adopt(s, std::move(point), s.best_value);
      break;
    }
    if (!s.tabu.contains(point)) {
      const auto e = evaluate_counted(s, problem, config, point);
      if (!e) return;
      if (e->feasible) {
        adopt(s, std::move(point), e->value);
        break;
      }
    }
    // Tabu or infeasible: one lattice step toward the incumbent in every
    // variable that differs from it.
    for (std::size_t i = 0; i < point.size(); ++i) {
      const auto j = s.grid.nearest_index(i, point[i]);
      const auto target = s.grid.nearest_index(i, s.best[i]);
      if (j != target) point[i] = s.grid.value(i, j + (target > j ? 1 : -1));
    }
  }
  record(s, config, SearchEvent::intensify);
}

bool diversification_restart(SearchState& s, const Problem& problem, const SearchConfig& config) {
  auto restart = diversify(s, problem, config);
  if (!restart) return false;
  if (restart->fallback) ++s.diversify_fallbacks;
  adopt(s, std::move(restart->point), restart->evaluation.value);
  record(s, config, SearchEvent::diversify);
  return restart->fallback;
}

}  // namespace

std::string Problem::explain_infeasibility(std::span<const double>) const { return "constraints violated"; }

const char* to_string(SearchEvent e) {
  switch (e) {
    case SearchEvent::move: return "move";
    case SearchEvent::intensify: return "intensify";
    case SearchEvent::diversify: return "diversify";
    case SearchEvent::reduce: return "reduce";
    case SearchEvent::restart: return "restart";
  }
  return "?";
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::running: return "running";
    case Termination::budget_exhausted: return "budget_exhausted";
    case Termination::converged: return "converged";
  }
  return "?";
}

std::vector<double> SearchConfig::resolved_min_step(std::size_t dimension) const {
  return broadcast(min_step, dimension, "min_step");
}

std::vector<double> SearchConfig::resolved_initial_step(const Bounds& bounds) const {
  const auto d = bounds.dimension();
  const auto min = resolved_min_step(d);
  if (!initial_step.empty()) return broadcast(initial_step, d, "initial_step");
  std::vector<double> step(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double raw = (bounds.upper[i] - bounds.lower[i]) / 10.0;
    step[i] = std::max(min[i], std::floor(raw / min[i] + 1e-9) * min[i]);
  }
  return step;
}

void SearchConfig::validate(const Bounds& bounds) const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("search." + what); };
  if (tabu_size == 0) fail("tabu_size must be positive");
  if (elite_size == 0) fail("elite_size must be positive");
  if (!(pattern_factor > 1.0)) fail("pattern_factor must exceed 1");
  if (intensify_after == 0) fail("intensify_after must be positive");
  if (!(intensify_after < diversify_after && diversify_after < reduce_after))
    fail("thresholds must satisfy intensify_after < diversify_after < reduce_after");
  if (max_evaluations == 0) fail("max_evaluations must be positive");
  if (diversify_attempts == 0) fail("diversify_attempts must be positive");
  const auto d = bounds.dimension();
  const auto min = resolved_min_step(d);
  const auto init = resolved_initial_step(bounds);
  for (std::size_t i = 0; i < d; ++i) {
    if (!(min[i] > 0.0)) fail("min_step must be positive");
    if (!(init[i] >= min[i])) fail("initial_step must be at least min_step");
    if (!is_multiple(init[i], min[i])) fail("initial_step must be an integer multiple of min_step");
  }
}

bool SearchState::step_is_minimal() const {
  for (std::size_t i = 0; i < step.size(); ++i)
    if (step[i] > min_step[i] * (1.0 + 1e-9)) return false;
  return true;
}

double SearchState::max_step() const { return step.empty() ? 0.0 : *std::max_element(step.begin(), step.end()); }

double reduce_step(double step, double min_step) {
  const double units = std::floor(step / 2.0 / min_step + 1e-9);
  return std::max(min_step, units * min_step);
}

DesignVector intensify(const EliteList& elite, const DesignGrid& grid, const DesignVector& fallback) {
  if (elite.empty()) return fallback;
  DesignVector mean(grid.dimension(), 0.0);
  for (const auto& e : elite.entries())
    for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += e.point[i];
  for (auto& v : mean) v /= static_cast<double>(elite.size());
  return grid.snap(mean);
}

DesignVector random_grid_point(const DesignGrid& grid, std::mt19937_64& rng) {
  DesignVector p(grid.dimension());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::uniform_int_distribution<std::int64_t> pick(0, grid.count(i) - 1);
    p[i] = grid.value(i, pick(rng));
  }
  return p;
}

DesignVector random_nearby_point(const DesignGrid& grid, const DesignVector& center, std::span<const double> step,
                                 std::size_t radius, std::mt19937_64& rng) {
  const auto r = static_cast<std::int64_t>(radius);
  std::uniform_int_distribution<std::int64_t> pick(-r, r);
  DesignVector p(center);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = grid.snap(i, p[i] + static_cast<double>(pick(rng)) * step[i]);
  return p;
}

std::optional<RestartPoint> diversify(SearchState& s, const Problem& problem, const SearchConfig& config) {
  for (std::size_t attempt = 0; attempt < config.diversify_attempts; ++attempt) {
    auto p = config.diversify_radius == 0
                 ? random_grid_point(s.grid, s.rng)
                 : random_nearby_point(s.grid, s.best, s.step, config.diversify_radius, s.rng);
    if (s.tabu.contains(p)) continue;
    const auto e = evaluate_counted(s, problem, config, p);
    if (!e) return std::nullopt;
    if (e->feasible) return RestartPoint{std::move(p), *e, false};
  }
  return RestartPoint{s.best, Evaluation{s.best_value, true}, true};
}

SearchState initialize_search(const Problem& problem, const SearchConfig& config, const DesignVector& start) {
  const auto bounds = problem.bounds();
  config.validate(bounds);
  const auto d = bounds.dimension();
  if (start.size() != d)
    throw std::invalid_argument("start point has " + std::to_string(start.size()) + " components, expected " +
                                std::to_string(d));
  const auto min = config.resolved_min_step(d);
  DesignGrid grid(bounds, min);
  for (std::size_t i = 0; i < d; ++i)
    if (start[i] < bounds.lower[i] || start[i] > bounds.upper[i])
      throw InfeasibleStart("start variable " + std::to_string(i + 1) + " = " + std::to_string(start[i]) +
                            " is outside [" + std::to_string(bounds.lower[i]) + ", " +
                            std::to_string(bounds.upper[i]) + "]");
  if (!grid.is_aligned(start)) throw std::invalid_argument("start point is not on the minimum-step grid");

  SearchState s{
      .grid = grid,
      .base = grid.snap(start),
      .base_value = 0.0,
      .best = {},
      .best_value = 0.0,
      .step = config.resolved_initial_step(bounds),
      .min_step = min,
      .stall_counter = 0,
      .evaluations = 0,
      .tabu = TabuList(config.tabu_size, min),
      .elite = EliteList(config.elite_size, min),
      .trace = {},
      .path = {},
      .rng = std::mt19937_64(config.rng_seed),
  };
  const auto e = evaluate_counted(s, problem, config, s.base);
  if (!e->feasible) throw InfeasibleStart("start point is infeasible: " + problem.explain_infeasibility(s.base));
  s.base_value = e->value;
  s.best = s.base;
  s.best_value = e->value;
  s.tabu.push(s.base);
  s.elite.offer(s.best, s.best_value);
  record(s, config, SearchEvent::move);
  return s;
}

SearchEvent control_step(SearchState& s, const Problem& problem, const SearchConfig& config) {
  if (s.termination != Termination::running) return SearchEvent::move;
  if (s.evaluations >= config.max_evaluations) {
    s.termination = Termination::budget_exhausted;
    return SearchEvent::move;
  }

  hill_climb_move(s, problem, config);

  SearchEvent event = SearchEvent::move;
  bool fallback = false;
  if (s.termination == Termination::running) {
    if (s.stall_counter == config.intensify_after) {
      intensification_restart(s, problem, config);
      event = SearchEvent::intensify;
    } else if (s.stall_counter == config.diversify_after) {
      fallback = diversification_restart(s, problem, config);
      event = SearchEvent::diversify;
    } else if (s.stall_counter >= config.reduce_after) {
      if (!s.step_is_minimal()) {
        for (std::size_t i = 0; i < s.step.size(); ++i) s.step[i] = reduce_step(s.step[i], s.min_step[i]);
        s.stall_counter = 0;
        record(s, config, SearchEvent::reduce);
        event = SearchEvent::reduce;
      } else if (config.restart_on_convergence && s.evaluations > s.cycle_start_evaluations) {
        s.cycle_start_evaluations = s.evaluations;
        s.step = config.resolved_initial_step(problem.bounds());
        s.stall_counter = 0;
        s.base = s.best;
        s.base_value = s.best_value;
        record(s, config, SearchEvent::restart);
        event = SearchEvent::restart;
      } else {
        s.termination = Termination::converged;
      }
    }
  }

  s.trace.push_back({s.evaluations, s.best_value, s.max_step(), event, fallback});
  return event;
}

SearchResult run_search(const Problem& problem, const SearchConfig& config, const DesignVector& start) {
  auto s = initialize_search(problem, config, start);
  while (s.termination == Termination::running) control_step(s, problem, config);
  return {std::move(s.best), s.best_value, std::move(s.trace), std::move(s.path), s.evaluations, s.termination,
          s.diversify_fallbacks};
}

}  // namespace tsopt
