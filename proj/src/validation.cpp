#include <algorithm>
#include <string>

#include "ssgs/instance.hpp"

namespace ssgs {

namespace {

// Per-slot resource usage, rows 1..span, stored slot-major.
class UsageGrid {
 public:
  UsageGrid(int span, int resources)
      : resources_(resources), cells_(static_cast<std::size_t>(span + 2) * resources, 0) {}

  long long& at(int slot, int r) { return cells_[static_cast<std::size_t>(slot) * resources_ + r]; }

  void add(const Job& job, int start, int sign) {
    for (int t = start; t < start + job.duration; ++t) {
      for (int r = 0; r < resources_; ++r) at(t, r) += sign * job.demands[r];
    }
  }

 private:
  int resources_;
  std::vector<long long> cells_;
};

}  // namespace

ValidationReport validate_schedule(const Instance& instance, const Schedule& schedule) {
  ValidationReport report;
  const int n = instance.num_jobs();
  const int R = instance.num_resources();
  if (static_cast<int>(schedule.starts.size()) != n) {
    report.violations.push_back({Violation::Kind::Range, -1, -1, 0, -1,
                                 "schedule has " + std::to_string(schedule.starts.size()) +
                                     " start times for " + std::to_string(n) + " jobs"});
    return report;
  }
  bool in_range = true;
  for (int j = 0; j < n; ++j) {
    if (schedule.starts[j] < 1) {
      report.violations.push_back({Violation::Kind::Range, j, -1, schedule.starts[j], -1,
                                   "job " + std::to_string(j) + " starts before slot 1"});
      in_range = false;
    }
  }
  if (!in_range) return report;

  const int span = makespan_of(instance, schedule.starts);
  if (schedule.makespan != span) {
    report.violations.push_back({Violation::Kind::Range, -1, -1, 0, -1,
                                 "makespan " + std::to_string(schedule.makespan) +
                                     " disagrees with start times (" + std::to_string(span) + ")"});
  }

  for (int j = 0; j < n; ++j) {
    for (int p : instance.job(j).predecessors) {
      const int finish = schedule.starts[p] + instance.job(p).duration;
      if (schedule.starts[j] < finish) {
        report.violations.push_back({Violation::Kind::Precedence, j, p, schedule.starts[j], -1,
                                     "job " + std::to_string(j) + " starts at " +
                                         std::to_string(schedule.starts[j]) + " before predecessor " +
                                         std::to_string(p) + " finishes (slot " +
                                         std::to_string(finish - 1) + ")"});
      }
    }
  }

  UsageGrid usage(span, R);
  for (int j = 0; j < n; ++j) usage.add(instance.job(j), schedule.starts[j], +1);
  for (int t = 1; t <= span; ++t) {
    for (int r = 0; r < R; ++r) {
      if (usage.at(t, r) > instance.capacity(r)) {
        report.violations.push_back({Violation::Kind::Resource, -1, -1, t, r,
                                     "slot " + std::to_string(t) + ", resource " + std::to_string(r) +
                                         ": usage " + std::to_string(usage.at(t, r)) + " exceeds capacity " +
                                         std::to_string(instance.capacity(r))});
      }
    }
  }
  return report;
}

bool is_active(const Instance& instance, const Schedule& schedule) {
  const ValidationReport report = validate_schedule(instance, schedule);
  if (!report.feasible()) {
    throw InstanceError("is_active requires a feasible schedule: " + report.violations.front().message);
  }
  const int n = instance.num_jobs();
  const int R = instance.num_resources();
  UsageGrid usage(schedule.makespan, R);
  for (int j = 0; j < n; ++j) usage.add(instance.job(j), schedule.starts[j], +1);

  for (int j = 0; j < n; ++j) {
    const Job& job = instance.job(j);
    const int start = schedule.starts[j];
    int earliest = 1;
    for (int p : job.predecessors) {
      earliest = std::max(earliest, schedule.starts[p] + instance.job(p).duration);
    }
    if (earliest >= start) continue;
    usage.add(job, start, -1);
    for (int s = earliest; s < start; ++s) {
      bool fits = true;
      for (int t = s; t < s + job.duration && fits; ++t) {
        for (int r = 0; r < R; ++r) {
          if (usage.at(t, r) + job.demands[r] > instance.capacity(r)) {
            fits = false;
            break;
          }
        }
      }
      if (fits) return false;
    }
    usage.add(job, start, +1);
  }
  return true;
}

}  // namespace ssgs
