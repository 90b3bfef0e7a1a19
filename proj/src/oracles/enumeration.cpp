#include "tsopt/oracles/enumeration.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsopt::oracles {

EnumerationResult exhaustive_minimum(const Problem& problem, const DesignGrid& grid) {
  const std::size_t d = grid.dimension();
  std::vector<std::int64_t> index(d, 0);
  DesignVector x(d);
  EnumerationResult out;
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) x[i] = grid.value(i, index[i]);
    const auto e = problem.evaluate(x);
    ++out.points;
    if (e.feasible) {
      ++out.feasible_points;
      if (!out.best || e.value < out.best_value) {
        out.best = x;
        out.best_value = e.value;
      }
    }
    std::size_t i = d;
    while (i-- > 0) {
      if (++index[i] < grid.count(i)) break;
      index[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

DescentResult first_improvement_descent(const Problem& problem, const DesignGrid& grid, DesignVector start,
                                        double initial_step) {
  DescentResult r{grid.snap(start), 0.0, 0};
  auto e = problem.evaluate(r.point);
  ++r.evaluations;
  if (!e.feasible) throw std::invalid_argument("first_improvement_descent: infeasible start");
  r.value = e.value;
  double step = initial_step;
  const double finest = grid.spacing().front();
  for (;;) {
    bool improved = false;
    for (std::size_t i = 0; i < r.point.size() && !improved; ++i) {
      for (double sign : {1.0, -1.0}) {
        auto trial = r.point;
        trial[i] = grid.snap(i, trial[i] + sign * step);
        if (trial[i] == r.point[i]) continue;
        const auto t = problem.evaluate(trial);
        ++r.evaluations;
        if (t.feasible && t.value < r.value) {
          r.point = std::move(trial);
          r.value = t.value;
          improved = true;
          break;
        }
      }
    }
    if (improved) continue;
    if (step <= finest * (1.0 + 1e-9)) break;
    step = std::max(finest, step / 2.0);
  }
  return r;
}

}  // namespace tsopt::oracles
