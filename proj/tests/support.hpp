#pragma once

// Independent oracles and fixtures shared by the test binaries. Nothing here
// calls into the library's find/update code.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "ssgs/availability.hpp"
#include "ssgs/instance.hpp"
#include "ssgs/rng.hpp"

namespace testing {

using ssgs::Instance;
using ssgs::Job;

inline Instance make_instance(std::vector<int> capacities, std::vector<Job> jobs) {
  return Instance(std::move(capacities), std::move(jobs));
}

/// usage[t][r] recomputed from scratch for the jobs with starts[j] > 0.
inline std::vector<std::vector<int>> occupancy(const Instance& inst, const std::vector<int>& starts, int slots) {
  std::vector<std::vector<int>> usage(slots + 2, std::vector<int>(inst.num_resources(), 0));
  for (int j = 0; j < inst.num_jobs(); ++j) {
    if (starts[j] == 0) continue;
    const Job& job = inst.job(j);
    for (int t = starts[j]; t < starts[j] + job.duration; ++t) {
      for (int r = 0; r < inst.num_resources(); ++r) usage[t][r] += job.demands[r];
    }
  }
  return usage;
}

inline bool fits(const Instance& inst, const std::vector<std::vector<int>>& usage, int job, int s) {
  const Job& jb = inst.job(job);
  for (int t = s; t < s + jb.duration; ++t) {
    if (t >= static_cast<int>(usage.size())) return false;
    for (int r = 0; r < inst.num_resources(); ++r) {
      if (usage[t][r] + jb.demands[r] > inst.capacity(r)) return false;
    }
  }
  return true;
}

/// Serial scheme by exhaustive slot scan with occupancy recomputed per job.
inline std::vector<int> naive_ssgs(const Instance& inst, const std::vector<int>& order) {
  const int T = inst.horizon();
  std::vector<int> starts(inst.num_jobs(), 0);
  for (int j : order) {
    int t0 = 1;
    for (int p : inst.job(j).predecessors) t0 = std::max(t0, starts[p] + inst.job(p).duration);
    const auto usage = occupancy(inst, starts, T + 1);
    int s = t0;
    while (!fits(inst, usage, j, s)) ++s;
    starts[j] = s;
  }
  return starts;
}

/// Brute-force single-job left shift: true iff no job fits at any earlier
/// slot with everything else fixed.
inline bool brute_force_active(const Instance& inst, const std::vector<int>& starts) {
  const int n = inst.num_jobs();
  int slots = inst.horizon();
  for (int j = 0; j < n; ++j) slots = std::max(slots, starts[j] + inst.job(j).duration);
  for (int j = 0; j < n; ++j) {
    std::vector<int> others = starts;
    others[j] = 0;
    const auto usage = occupancy(inst, others, slots);
    for (int s = 1; s < starts[j]; ++s) {
      bool precedence_ok = true;
      for (int p : inst.job(j).predecessors) precedence_ok &= s >= starts[p] + inst.job(p).duration;
      for (int q = 0; q < n; ++q) {
        const auto& preds = inst.job(q).predecessors;
        if (std::find(preds.begin(), preds.end(), j) != preds.end()) {
          precedence_ok &= starts[q] >= s + inst.job(j).duration;
        }
      }
      if (precedence_ok && fits(inst, usage, j, s)) return false;
    }
  }
  return true;
}

/// Small random instance with arbitrary (not generator-shaped) structure.
inline Instance random_small_instance(std::uint64_t seed, int n, int resources, int max_cap, int max_duration) {
  ssgs::Rng rng(seed);
  std::vector<int> caps(resources);
  for (int& c : caps) c = rng.between(1, max_cap);
  std::vector<Job> jobs(n);
  for (int j = 0; j < n; ++j) {
    jobs[j].duration = rng.between(1, max_duration);
    jobs[j].demands.resize(resources);
    for (int r = 0; r < resources; ++r) jobs[j].demands[r] = rng.coin() ? rng.between(0, caps[r]) : 0;
    for (int p = 0; p < j; ++p) {
      if (rng.below(100) < 20) jobs[j].predecessors.push_back(p);
    }
  }
  return Instance(std::move(caps), std::move(jobs));
}

/// A partially filled profile and a job to place on it.
struct FindProbe {
  int job;
  int t0;
};

/// Fills `profile` with the first k jobs of a random order, each at the
/// earliest slot where it fits (scan recomputed from the profile cells), and
/// returns the next job with a t0 that leaves room below the horizon.
inline FindProbe make_probe(const Instance& inst, ssgs::AvailabilityProfile& profile, ssgs::Rng& rng) {
  const int n = inst.num_jobs();
  std::vector<int> order(n);
  for (int j = 0; j < n; ++j) order[j] = j;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  const int k = static_cast<int>(rng.below(n));
  for (int i = 0; i < k; ++i) {
    const Job& job = inst.job(order[i]);
    for (int s = 1;; ++s) {
      bool ok = true;
      for (int t = s; t < s + job.duration && ok; ++t) {
        for (int r = 0; r < inst.num_resources() && ok; ++r) ok = profile.at(t, r) >= job.demands[r];
      }
      if (ok) {
        for (int t = s; t < s + job.duration; ++t) {
          for (int r = 0; r < inst.num_resources(); ++r) profile.consume(t, r, job.demands[r]);
        }
        break;
      }
    }
  }
  int rest = 0;
  for (int i = k + 1; i < n; ++i) rest += inst.job(order[i]).duration;
  return {order[k], rng.between(1, 1 + rest)};
}

}  // namespace testing
