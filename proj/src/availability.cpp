#include "ssgs/availability.hpp"

#include <algorithm>

namespace ssgs {

AvailabilityProfile::AvailabilityProfile(std::span<const int> capacities, int horizon)
    : stride_(static_cast<int>(capacities.size())),
      horizon_(horizon),
      capacities_(capacities.begin(), capacities.end()) {
  // Row 0 is unused and row horizon+1 is a guard; both stay at capacity.
  const std::size_t rows = static_cast<std::size_t>(horizon) + 2;
  cells_.resize(rows * stride_);
  for (std::size_t t = 0; t < rows; ++t) {
    std::copy(capacities_.begin(), capacities_.end(), cells_.begin() + t * stride_);
  }
}

void AvailabilityProfile::restore(int makespan) {
  assert(makespan <= horizon_);
  for (int t = 1; t <= makespan; ++t) {
    std::copy(capacities_.begin(), capacities_.end(), row(t));
  }
  restore_writes_ += static_cast<std::int64_t>(std::max(makespan, 0)) * stride_;
}

bool AvailabilityProfile::is_pristine() const {
  const std::size_t rows = static_cast<std::size_t>(horizon_) + 2;
  for (std::size_t t = 0; t < rows; ++t) {
    if (!std::equal(capacities_.begin(), capacities_.end(), cells_.begin() + t * stride_)) return false;
  }
  return true;
}

}  // namespace ssgs
