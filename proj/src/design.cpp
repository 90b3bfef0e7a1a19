#include "tsopt/design.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tsopt {

bool Bounds::contains(std::span<const double> x) const {
  if (x.size() != lower.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < lower[i] || x[i] > upper[i]) return false;
  return true;
}

DesignGrid::DesignGrid(Bounds bounds, std::vector<double> spacing)
    : bounds_(std::move(bounds)), spacing_(std::move(spacing)) {
  const std::size_t d = bounds_.lower.size();
  if (bounds_.upper.size() != d || spacing_.size() != d)
    throw std::invalid_argument("DesignGrid: bounds and spacing sizes differ");
  last_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (!(bounds_.lower[i] < bounds_.upper[i]))
      throw std::invalid_argument("DesignGrid: empty range for variable " + std::to_string(i + 1));
    if (!(spacing_[i] > 0.0))
      throw std::invalid_argument("DesignGrid: spacing must be positive for variable " + std::to_string(i + 1));
    last_[i] = static_cast<std::int64_t>(std::floor((bounds_.upper[i] - bounds_.lower[i]) / spacing_[i] + 1e-9));
  }
}

double DesignGrid::value(std::size_t i, std::int64_t j) const {
  return bounds_.lower[i] + static_cast<double>(j) * spacing_[i];
}

std::int64_t DesignGrid::nearest_index(std::size_t i, double x) const {
  const double t = (x - bounds_.lower[i]) / spacing_[i];
  // Small bias so exact ties that land a few ulps low still round up.
  const auto j = static_cast<std::int64_t>(std::floor(t + 0.5 + 1e-9));
  return std::clamp<std::int64_t>(j, 0, last_[i]);
}

DesignVector DesignGrid::snap(std::span<const double> x) const {
  if (x.size() != dimension()) throw std::invalid_argument("DesignGrid::snap: dimension mismatch");
  DesignVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = snap(i, x[i]);
  return out;
}

bool DesignGrid::is_aligned(std::span<const double> x) const {
  if (x.size() != dimension()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double tol = 1e-6 * spacing_[i];
    if (x[i] < bounds_.lower[i] - tol || x[i] > bounds_.upper[i] + tol) return false;
    if (std::abs(x[i] - snap(i, x[i])) > tol) return false;
  }
  return true;
}

bool DesignGrid::same_point(std::span<const double> a, std::span<const double> b) const {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > 0.5 * spacing_[i]) return false;
  return true;
}

}  // namespace tsopt
