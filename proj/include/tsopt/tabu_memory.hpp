#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "tsopt/design.hpp"

namespace tsopt {

/// Short-term recency memory: the last n visited points, oldest evicted first.
/// Membership is component-wise within half the minimum step.
class TabuList {
public:
  TabuList(std::size_t capacity, std::vector<double> min_step);

  void push(DesignVector point);
  bool contains(std::span<const double> candidate) const;

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return entries_.empty(); }
  const std::deque<DesignVector>& entries() const noexcept { return entries_; }

private:
  std::size_t capacity_;
  std::vector<double> tolerance_;
  std::deque<DesignVector> entries_;
};

inline bool is_tabu(std::span<const double> candidate, const TabuList& tabu) { return tabu.contains(candidate); }

struct EliteEntry {
  DesignVector point;
  double value = 0.0;
};

/// Intermediate-term memory: the m best designs found, best first.
class EliteList {
public:
  EliteList(std::size_t capacity, std::vector<double> min_step);

  /// Offers a new incumbent. Rejected unless strictly better than the current
  /// best entry (or the list is empty). Returns whether it was inserted.
  bool offer(const DesignVector& point, double value);

  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<EliteEntry>& entries() const noexcept { return entries_; }

private:
  std::size_t capacity_;
  std::vector<double> tolerance_;
  std::vector<EliteEntry> entries_;
};

}  // namespace tsopt
