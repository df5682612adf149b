#include "ssgs/instance.hpp"

#include <algorithm>
#include <string>

#include "ssgs/rng.hpp"

namespace ssgs {

namespace {

std::string job_label(int j) { return "job " + std::to_string(j); }

}  // namespace

Instance::Instance(std::vector<int> capacities, std::vector<Job> jobs)
    : capacities_(std::move(capacities)), jobs_(std::move(jobs)) {
  const int n = num_jobs();
  const int R = num_resources();
  for (int r = 0; r < R; ++r) {
    if (capacities_[r] < 1) {
      throw InstanceError("resource " + std::to_string(r) + ": capacity must be positive");
    }
  }
  successors_.assign(n, {});
  long long horizon = 0;
  for (int j = 0; j < n; ++j) {
    Job& job = jobs_[j];
    if (job.duration < 1) throw InstanceError(job_label(j) + ": duration must be at least 1");
    if (static_cast<int>(job.demands.size()) != R) {
      throw InstanceError(job_label(j) + ": demand vector length differs from resource count");
    }
    for (int r = 0; r < R; ++r) {
      if (job.demands[r] < 0) {
        throw InstanceError(job_label(j) + ": negative demand on resource " + std::to_string(r));
      }
      if (job.demands[r] > capacities_[r]) {
        throw InstanceError(job_label(j) + ": demand exceeds capacity on resource " +
                            std::to_string(r));
      }
    }
    std::sort(job.predecessors.begin(), job.predecessors.end());
    job.predecessors.erase(std::unique(job.predecessors.begin(), job.predecessors.end()),
                           job.predecessors.end());
    for (int p : job.predecessors) {
      if (p < 0 || p >= n) {
        throw InstanceError(job_label(j) + ": predecessor " + std::to_string(p) +
                            " does not exist");
      }
      if (p == j) throw InstanceError(job_label(j) + ": job precedes itself");
      successors_[p].push_back(j);
    }
    horizon += job.duration;
  }
  if (horizon > INT32_MAX / 2) throw InstanceError("sum of durations is too large");
  horizon_ = static_cast<int>(horizon);

  // Kahn's algorithm; anything left unvisited lies on a cycle.
  std::vector<int> indegree(n);
  std::vector<int> ready;
  for (int j = 0; j < n; ++j) {
    indegree[j] = static_cast<int>(jobs_[j].predecessors.size());
    if (indegree[j] == 0) ready.push_back(j);
  }
  int visited = 0;
  while (!ready.empty()) {
    const int j = ready.back();
    ready.pop_back();
    ++visited;
    for (int s : successors_[j]) {
      if (--indegree[s] == 0) ready.push_back(s);
    }
  }
  if (visited != n) throw InstanceError("precedence relation contains a cycle");
}

int makespan_of(const Instance& instance, std::span<const int> starts) {
  int makespan = 0;
  for (int j = 0; j < instance.num_jobs(); ++j) {
    makespan = std::max(makespan, starts[j] + instance.job(j).duration - 1);
  }
  return makespan;
}

bool is_precedence_feasible(const Instance& instance, std::span<const int> order) {
  const int n = instance.num_jobs();
  if (static_cast<int>(order.size()) != n) return false;
  std::vector<int> position(n, -1);
  for (int i = 0; i < n; ++i) {
    const int j = order[i];
    if (j < 0 || j >= n || position[j] != -1) return false;
    position[j] = i;
  }
  for (int j = 0; j < n; ++j) {
    for (int p : instance.job(j).predecessors) {
      if (position[p] > position[j]) return false;
    }
  }
  return true;
}

Permutation random_topological_order(std::span<const std::vector<int>> predecessors,
                                     std::uint64_t seed) {
  const int n = static_cast<int>(predecessors.size());
  std::vector<std::vector<int>> successors(n);
  std::vector<int> remaining(n);
  for (int j = 0; j < n; ++j) {
    remaining[j] = static_cast<int>(predecessors[j].size());
    for (int p : predecessors[j]) {
      if (p < 0 || p >= n) throw InstanceError("predecessor index out of range");
      successors[p].push_back(j);
    }
  }
  std::vector<int> eligible;
  for (int j = 0; j < n; ++j) {
    if (remaining[j] == 0) eligible.push_back(j);
  }

  Rng rng(seed);
  Permutation order;
  order.reserve(n);
  while (!eligible.empty()) {
    const auto pick = static_cast<std::size_t>(rng.below(eligible.size()));
    const int j = eligible[pick];
    eligible[pick] = eligible.back();
    eligible.pop_back();
    order.push_back(j);
    for (int s : successors[j]) {
      if (--remaining[s] == 0) eligible.push_back(s);
    }
  }
  if (static_cast<int>(order.size()) != n) {
    throw InstanceError("precedence relation contains a cycle");
  }
  return order;
}

Permutation random_topological_order(const Instance& instance, std::uint64_t seed) {
  std::vector<std::vector<int>> predecessors;
  predecessors.reserve(instance.num_jobs());
  for (const Job& job : instance.jobs()) predecessors.push_back(job.predecessors);
  return random_topological_order(predecessors, seed);
}

}  // namespace ssgs
