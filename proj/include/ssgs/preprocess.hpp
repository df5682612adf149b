#pragma once

// Enhanced SSGS: per-job consumed-resource vectors, kernel specialisation,
// learned resource test order, and the instrumented data-collection run.

#include <cstdint>
#include <span>
#include <vector>

#include "ssgs/availability.hpp"
#include "ssgs/instance.hpp"
#include "ssgs/ssgs.hpp"

namespace ssgs {

/// Which find/update pair a job dispatches to, fixed at preprocessing.
enum class Kernel : std::uint8_t { None, Single, Multi };

struct JobView {
  int duration;
  Kernel kernel;
  std::span<const int> resources;  // consumed resources in test order
  std::span<const int> demands;    // aligned with resources
};

/// Tallies from one data-collection execution.
class InsufficiencyStats {
 public:
  InsufficiencyStats() = default;
  InsufficiencyStats(int num_jobs, std::span<const int> capacities);

  std::int64_t count(int job, int r) const { return counts_[static_cast<std::size_t>(job) * resources_ + r]; }
  std::span<const std::int64_t> histogram(int r) const { return histogram_[r]; }
  std::int64_t observations(int r) const;
  int num_resources() const { return resources_; }

  void add_insufficient(int job, int r) { ++counts_[static_cast<std::size_t>(job) * resources_ + r]; }
  void observe(int r, int available) { ++histogram_[r][available]; }
  void clear();

 private:
  int resources_ = 0;
  std::vector<std::int64_t> counts_;
  std::vector<std::vector<std::int64_t>> histogram_;  // per resource, bins 0..capacity
};

/// Per-job consumed resources R_j, stored flat.
class Preprocessing {
 public:
  Preprocessing() = default;
  explicit Preprocessing(const Instance& instance);

  int num_jobs() const { return static_cast<int>(durations_.size()); }

  JobView job(int j) const {
    const auto begin = static_cast<std::size_t>(offsets_[j]);
    const auto size = static_cast<std::size_t>(offsets_[j + 1] - offsets_[j]);
    return {durations_[j], kernels_[j], {resources_.data() + begin, size}, {demands_.data() + begin, size}};
  }

  /// Sorts each R_j by descending insufficiency count, stable on ties.
  void order_by(const InsufficiencyStats& stats);
  /// Back to ascending resource index.
  void reset_order();

 private:
  std::vector<int> durations_;
  std::vector<Kernel> kernels_;
  std::vector<int> offsets_;
  std::vector<int> resources_;
  std::vector<int> demands_;
};

inline void order_resources(Preprocessing& prep, const InsufficiencyStats& stats) { prep.order_by(stats); }

template <class Probe = NoProbe>
int find_enhanced(const JobView& job, int t0, const AvailabilityProfile& availability, Probe&& probe = {}) {
  const std::size_t k = job.resources.size();
  const int* res = job.resources.data();
  const int* dem = job.demands.data();
  return scan_backward(job.duration, t0, [&](int t) {
    probe.slot_test();
    const int* row = availability.row(t);
    for (std::size_t i = 0; i < k; ++i) {
      if (row[res[i]] < dem[i]) return false;
    }
    return true;
  });
}

template <class Probe = NoProbe>
int find_single_resource(int duration, int r, int demand, int t0, const AvailabilityProfile& availability,
                         Probe&& probe = {}) {
  const int* column = availability.row(0) + r;
  const std::size_t stride = static_cast<std::size_t>(availability.num_resources());
  return scan_backward(duration, t0, [&](int t) {
    probe.slot_test();
    return column[static_cast<std::size_t>(t) * stride] >= demand;
  });
}

inline void update_enhanced(const JobView& job, int start, AvailabilityProfile& availability) {
  const std::size_t k = job.resources.size();
  for (int t = start; t < start + job.duration; ++t) {
    int* row = availability.row(t);
    for (std::size_t i = 0; i < k; ++i) row[job.resources[i]] -= job.demands[i];
  }
}

inline void update_single_resource(int duration, int r, int demand, int start, AvailabilityProfile& availability) {
  int* column = availability.row(0) + r;
  const std::size_t stride = static_cast<std::size_t>(availability.num_resources());
  for (int t = start; t < start + duration; ++t) column[static_cast<std::size_t>(t) * stride] -= demand;
}

/// NBF: backward scan over R_j only, with kernel dispatch.
class EnhancedStrategy {
 public:
  explicit EnhancedStrategy(const Preprocessing& prep) : prep_(&prep) {}

  int find(int j, int t0, const AvailabilityProfile& availability) const {
    const JobView job = prep_->job(j);
    switch (job.kernel) {
      case Kernel::None:
        return t0;
      case Kernel::Single:
        return find_single_resource(job.duration, job.resources[0], job.demands[0], t0, availability);
      case Kernel::Multi:
        break;
    }
    return find_enhanced(job, t0, availability);
  }

  void update(int j, int start, AvailabilityProfile& availability) const {
    const JobView job = prep_->job(j);
    switch (job.kernel) {
      case Kernel::None:
        return;
      case Kernel::Single:
        update_single_resource(job.duration, job.resources[0], job.demands[0], start, availability);
        return;
      case Kernel::Multi:
        update_enhanced(job, start, availability);
        return;
    }
  }

  void restore(int makespan, AvailabilityProfile& availability) const { availability.restore(makespan); }

 private:
  const Preprocessing* prep_;
};

/// Backward scan that evaluates every consumed resource of every tested slot,
/// recording insufficiencies and observed availability.
class DataCollectionStrategy {
 public:
  DataCollectionStrategy(const Preprocessing& prep, InsufficiencyStats& stats) : prep_(&prep), stats_(&stats) {}

  int find(int j, int t0, const AvailabilityProfile& availability) const {
    const JobView job = prep_->job(j);
    if (job.kernel == Kernel::None) return t0;
    return scan_backward(job.duration, t0, [&](int t) {
      const int* row = availability.row(t);
      bool sufficient = true;
      for (std::size_t i = 0; i < job.resources.size(); ++i) {
        const int r = job.resources[i];
        stats_->observe(r, row[r]);
        if (row[r] < job.demands[i]) {
          stats_->add_insufficient(j, r);
          sufficient = false;
        }
      }
      return sufficient;
    });
  }

  void update(int j, int start, AvailabilityProfile& availability) const {
    update_enhanced(prep_->job(j), start, availability);
  }

  void restore(int makespan, AvailabilityProfile& availability) const { availability.restore(makespan); }

 private:
  const Preprocessing* prep_;
  InsufficiencyStats* stats_;
};

struct DataRunResult {
  Schedule schedule;
  InsufficiencyStats stats;
};

DataRunResult ssgs_data_run(const Instance& instance, const Preprocessing& prep, std::span<const int> order,
                            AvailabilityProfile& availability);

}  // namespace ssgs
