#include "tsopt/neighborhood.hpp"

#include <cmath>
#include <stdexcept>

namespace tsopt {

std::vector<DesignVector> generate_neighborhood(std::span<const double> base, std::span<const double> step,
                                                const DesignGrid& grid) {
  const std::size_t d = base.size();
  if (step.size() != d || grid.dimension() != d)
    throw std::invalid_argument("generate_neighborhood: dimension mismatch");

  std::vector<DesignVector> out;
  out.reserve(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (double sign : {1.0, -1.0}) {
      const double moved = grid.snap(i, base[i] + sign * step[i]);
      if (std::abs(moved - base[i]) <= 0.5 * grid.spacing()[i]) continue;
      DesignVector p(base.begin(), base.end());
      p[i] = moved;
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::optional<std::size_t> select_move(std::span<const CandidateMove> candidates, const TabuList& tabu,
                                       double incumbent) {
  std::optional<std::size_t> chosen;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    if (!c.feasible) continue;
    if (tabu.contains(c.point) && !(c.objective < incumbent)) continue;
    if (!chosen || c.objective < candidates[*chosen].objective) chosen = i;
  }
  return chosen;
}

DesignVector pattern_move(std::span<const double> old_base, std::span<const double> new_base, double k,
                          const DesignGrid& grid) {
  const std::size_t d = old_base.size();
  if (new_base.size() != d || grid.dimension() != d)
    throw std::invalid_argument("pattern_move: dimension mismatch");
  DesignVector p(d);
  for (std::size_t i = 0; i < d; ++i) p[i] = grid.snap(i, old_base[i] + k * (new_base[i] - old_base[i]));
  return p;
}

}  // namespace tsopt
