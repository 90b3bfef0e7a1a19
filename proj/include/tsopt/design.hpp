#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tsopt {

/// A point in the search space: one value per design variable.
using DesignVector = std::vector<double>;

struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t dimension() const noexcept { return lower.size(); }
  bool contains(std::span<const double> x) const;
};

/// The lattice lower + j * spacing (per variable), truncated at the upper
/// bound. Every point the search produces lives on this lattice.
class DesignGrid {
public:
  DesignGrid() = default;
  DesignGrid(Bounds bounds, std::vector<double> spacing);

  std::size_t dimension() const noexcept { return bounds_.dimension(); }
  const Bounds& bounds() const noexcept { return bounds_; }
  const std::vector<double>& spacing() const noexcept { return spacing_; }

  /// Number of lattice values of variable i.
  std::int64_t count(std::size_t i) const { return last_[i] + 1; }
  double value(std::size_t i, std::int64_t j) const;
  /// Index of the lattice value nearest to x (ties round up), clamped to range.
  std::int64_t nearest_index(std::size_t i, double x) const;

  /// Clip to bounds, then round to the nearest lattice value.
  double snap(std::size_t i, double x) const { return value(i, nearest_index(i, x)); }
  DesignVector snap(std::span<const double> x) const;

  /// True when every component is within bounds and within a hair of a lattice value.
  bool is_aligned(std::span<const double> x) const;

  /// Component-wise |a_i - b_i| <= spacing_i / 2.
  bool same_point(std::span<const double> a, std::span<const double> b) const;

private:
  Bounds bounds_;
  std::vector<double> spacing_;
  std::vector<std::int64_t> last_;
};

}  // namespace tsopt
