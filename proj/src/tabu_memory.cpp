#include "tsopt/tabu_memory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsopt {

namespace {

std::vector<double> halved(std::vector<double> v) {
  for (auto& x : v) x *= 0.5;
  return v;
}

bool within(std::span<const double> a, std::span<const double> b, const std::vector<double>& tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol[i]) return false;
  return true;
}

}  // namespace

TabuList::TabuList(std::size_t capacity, std::vector<double> min_step)
    : capacity_(capacity), tolerance_(halved(std::move(min_step))) {
  if (capacity_ == 0) throw std::invalid_argument("TabuList: capacity must be positive");
}

void TabuList::push(DesignVector point) {
  if (point.size() != tolerance_.size()) throw std::invalid_argument("TabuList::push: dimension mismatch");
  if (entries_.size() == capacity_) entries_.pop_front();
  entries_.push_back(std::move(point));
}

bool TabuList::contains(std::span<const double> candidate) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const DesignVector& e) { return within(candidate, e, tolerance_); });
}

EliteList::EliteList(std::size_t capacity, std::vector<double> min_step)
    : capacity_(capacity), tolerance_(halved(std::move(min_step))) {
  if (capacity_ == 0) throw std::invalid_argument("EliteList: capacity must be positive");
}

bool EliteList::offer(const DesignVector& point, double value) {
  if (!entries_.empty() && !(value < entries_.front().value)) return false;
  for (const auto& e : entries_)
    if (within(point, e.point, tolerance_)) return false;
  entries_.insert(entries_.begin(), EliteEntry{point, value});
  if (entries_.size() > capacity_) entries_.pop_back();
  return true;
}

}  // namespace tsopt
