#pragma once

// Serial schedule generation: the driver shared by every implementation,
// the two slot-scan orders, and the conventional baseline strategy.

#include <algorithm>
#include <cassert>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <utility>

#include "ssgs/availability.hpp"
#include "ssgs/instance.hpp"

namespace ssgs {

/// Instrumentation hooks for slot tests. Production strategies use NoProbe,
/// which compiles to nothing.
struct NoProbe {
  void slot_test() {}
  void filter_rejection() {}
  void verification() {}
};

struct CountingProbe {
  std::int64_t slot_tests = 0;
  std::int64_t filter_rejections = 0;  // slots refuted by the Bloom filter alone
  std::int64_t verifications = 0;      // Bloom positives that needed the full check

  void slot_test() { ++slot_tests; }
  void filter_rejection() { ++filter_rejections; }
  void verification() { ++verifications; }
};

/// Forward scan: test slots start, start+1, ...; on a failure at t restart
/// the window at t+1. Returns the earliest start whose whole window passes.
template <class SlotTest>
int scan_forward(int duration, int t0, SlotTest&& sufficient) {
  int start = t0;
  int t = start;
  while (t < start + duration) {
    if (sufficient(t)) {
      ++t;
    } else {
      start = t + 1;
      t = start;
    }
  }
  return start;
}

/// Backward scan over the candidate window. A failure at t moves the window
/// to start at t+1, and the slots above t that already passed are never
/// tested again: the next window is scanned only down to the old window end.
template <class SlotTest>
int scan_backward(int duration, int t0, SlotTest&& sufficient) {
  int start = t0;
  int t = start + duration - 1;
  int floor = start;
  while (t >= floor) {
    if (sufficient(t)) {
      --t;
    } else {
      floor = start + duration;
      start = t + 1;
      t = start + duration - 1;
    }
  }
  return start;
}

template <class Probe = NoProbe>
int find_conventional(std::span<const int> demands, int duration, int t0,
                      const AvailabilityProfile& availability, Probe&& probe = {}) {
  const std::size_t R = demands.size();
  return scan_forward(duration, t0, [&](int t) {
    probe.slot_test();
    const int* row = availability.row(t);
    for (std::size_t r = 0; r < R; ++r) {
      if (row[r] < demands[r]) return false;
    }
    return true;
  });
}

/// Subtracts the job's demand from every slot it occupies, for all resources.
inline void update_availability(std::span<const int> demands, int duration, int start,
                                AvailabilityProfile& availability) {
  const std::size_t R = demands.size();
  for (int t = start; t < start + duration; ++t) {
    int* row = availability.row(t);
    for (std::size_t r = 0; r < R; ++r) {
      row[r] -= demands[r];
      assert(row[r] >= 0 && "availability driven negative");
    }
  }
}

/// Earliest start allowed by the predecessors: max over pred of start+duration,
/// or 1 without predecessors. A zero entry in `starts` means "not scheduled"
/// and raises InstanceError.
inline int precedence_earliest_start(const Instance& instance, int job, std::span<const int> starts) {
  int t0 = 1;
  for (int p : instance.job(job).predecessors) {
    const int s = starts[p];
    if (s == 0) {
      throw InstanceError("job " + std::to_string(job) + " is sequenced before its predecessor " +
                          std::to_string(p));
    }
    t0 = std::max(t0, s + instance.job(p).duration);
  }
  return t0;
}

template <class S>
concept SsgsStrategy = requires(S& s, int job, int slot, AvailabilityProfile& a) {
  { s.find(job, slot, std::as_const(a)) } -> std::convertible_to<int>;
  s.update(job, slot, a);
  s.restore(slot, a);
};

/// Decodes `order` into `out`.
///
/// `availability` must be pristine on entry and is pristine again on return,
/// including when the order is rejected (duplicate job, wrong length or a
/// predecessor sequenced too late), which raises InstanceError.
template <SsgsStrategy S>
void run_ssgs(const Instance& instance, std::span<const int> order, AvailabilityProfile& availability,
              S& strategy, Schedule& out) {
  const int n = instance.num_jobs();
  out.starts.assign(n, 0);
  out.makespan = 0;
  int makespan = 0;
  try {
    if (static_cast<int>(order.size()) != n) {
      throw InstanceError("permutation has " + std::to_string(order.size()) + " entries for " +
                          std::to_string(n) + " jobs");
    }
    for (const int j : order) {
      if (j < 0 || j >= n || out.starts[j] != 0) {
        throw InstanceError("permutation entry " + std::to_string(j) + " is out of range or repeated");
      }
      const int t0 = precedence_earliest_start(instance, j, out.starts);
      const int duration = instance.job(j).duration;
      const int start = strategy.find(j, t0, std::as_const(availability));
      assert(start + duration - 1 <= availability.horizon());
      strategy.update(j, start, availability);
      out.starts[j] = start;
      makespan = std::max(makespan, start + duration - 1);
    }
  } catch (...) {
    strategy.restore(makespan, availability);
    out.starts.clear();
    throw;
  }
  out.makespan = makespan;
  strategy.restore(makespan, availability);
}

template <SsgsStrategy S>
Schedule run_ssgs(const Instance& instance, std::span<const int> order, AvailabilityProfile& availability,
                  S& strategy) {
  Schedule out;
  run_ssgs(instance, order, availability, strategy, out);
  return out;
}

/// The baseline: forward scan over every resource, no preprocessing.
class ConventionalStrategy {
 public:
  explicit ConventionalStrategy(const Instance& instance) : instance_(&instance) {}

  int find(int job, int t0, const AvailabilityProfile& availability) const {
    const Job& j = instance_->job(job);
    return find_conventional(j.demands, j.duration, t0, availability);
  }
  void update(int job, int start, AvailabilityProfile& availability) const {
    const Job& j = instance_->job(job);
    update_availability(j.demands, j.duration, start, availability);
  }
  void restore(int makespan, AvailabilityProfile& availability) const { availability.restore(makespan); }

 private:
  const Instance* instance_;
};

}  // namespace ssgs
