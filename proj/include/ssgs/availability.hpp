#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

namespace ssgs {

/// Remaining capacity per (slot, resource) over slots 1..horizon.
///
/// Rows are slots and each row holds all resources contiguously, so a
/// sufficiency test for one slot touches a single cache line for the usual
/// handful of resources. The profile is meant to be reused across SSGS
/// executions: an execution consumes cells and then restores only the rows
/// up to its makespan.
class AvailabilityProfile {
 public:
  AvailabilityProfile() = default;
  AvailabilityProfile(std::span<const int> capacities, int horizon);

  int horizon() const { return horizon_; }
  int num_resources() const { return stride_; }
  std::span<const int> capacities() const { return capacities_; }

  int at(int slot, int r) const {
    assert(slot >= 1 && slot <= horizon_ + 1);
    return cells_[static_cast<std::size_t>(slot) * stride_ + r];
  }
  const int* row(int slot) const { return cells_.data() + static_cast<std::size_t>(slot) * stride_; }
  int* row(int slot) { return cells_.data() + static_cast<std::size_t>(slot) * stride_; }
  std::span<const int> column(int slot) const { return {row(slot), static_cast<std::size_t>(stride_)}; }

  void consume(int slot, int r, int amount) {
    int& cell = cells_[static_cast<std::size_t>(slot) * stride_ + r];
    cell -= amount;
    assert(cell >= 0 && "availability driven negative");
  }

  /// Resets rows 1..makespan to full capacity.
  void restore(int makespan);

  /// True iff every cell equals its resource capacity.
  bool is_pristine() const;

  /// Cells written by restore() since construction.
  std::int64_t restore_writes() const { return restore_writes_; }

 private:
  int stride_ = 0;
  int horizon_ = 0;
  std::vector<int> capacities_;
  std::vector<int> cells_;
  std::int64_t restore_writes_ = 0;
};

}  // namespace ssgs
