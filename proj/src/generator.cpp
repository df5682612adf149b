#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ssgs/instance.hpp"
#include "ssgs/rng.hpp"

namespace ssgs {

namespace {

void check_params(const GeneratorParams& p) {
  if (p.num_jobs < 1) throw InstanceError("generator: num_jobs must be positive");
  if (p.num_resources < 1) throw InstanceError("generator: num_resources must be positive");
  if (p.max_duration < 1) throw InstanceError("generator: max_duration must be positive");
  if (!(p.network_complexity >= 0.0) || !std::isfinite(p.network_complexity)) {
    throw InstanceError("generator: network_complexity must be a finite value >= 0");
  }
  if (!(p.resource_factor >= 0.0 && p.resource_factor <= 1.0)) {
    throw InstanceError("generator: resource_factor must lie in [0,1]");
  }
  if (!(p.resource_strength >= 0.0 && p.resource_strength <= 1.0)) {
    throw InstanceError("generator: resource_strength must lie in [0,1]");
  }
}

}  // namespace

// Draw order is part of the format: durations, arcs, resource choices and
// demands, then the label shuffle. Changing it changes every fixture.
Instance generate_instance(const GeneratorParams& params) {
  check_params(params);
  const int n = params.num_jobs;
  const int R = params.num_resources;
  Rng rng(params.seed);

  std::vector<int> duration(n);
  for (int& d : duration) d = rng.between(1, params.max_duration);

  // Forward arcs i -> k (i < k) with a single probability chosen so that the
  // mean out-degree over all jobs equals the requested network complexity.
  std::vector<std::vector<int>> successors(n);
  if (n > 1) {
    const double probability =
        std::min(1.0, params.network_complexity * 2.0 / static_cast<double>(n - 1));
    for (int i = 0; i < n; ++i) {
      for (int k = i + 1; k < n; ++k) {
        if (rng.unit() < probability) successors[i].push_back(k);
      }
    }
  }

  const int consumed = static_cast<int>(std::lround(params.resource_factor * R));
  std::vector<std::vector<int>> demand(n, std::vector<int>(R, 0));
  std::vector<int> pool(R);
  for (int i = 0; i < n; ++i) {
    std::iota(pool.begin(), pool.end(), 0);
    for (int c = 0; c < consumed; ++c) {
      const int pick = c + static_cast<int>(rng.below(static_cast<std::uint64_t>(R - c)));
      std::swap(pool[c], pool[pick]);
      demand[i][pool[c]] = rng.between(1, kMaxGeneratedDemand);
    }
  }

  // Capacities: interpolate between the largest single demand and the peak
  // load of the precedence-only earliest-start schedule. Index order is
  // topological here because every arc points forward.
  std::vector<int> earliest(n, 1);
  for (int i = 0; i < n; ++i) {
    for (int k : successors[i]) earliest[k] = std::max(earliest[k], earliest[i] + duration[i]);
  }
  int span = 0;
  for (int i = 0; i < n; ++i) span = std::max(span, earliest[i] + duration[i] - 1);
  std::vector<int> capacity(R);
  std::vector<long long> load(static_cast<std::size_t>(span) + 2);
  for (int r = 0; r < R; ++r) {
    std::fill(load.begin(), load.end(), 0);
    int single_max = 0;
    for (int i = 0; i < n; ++i) {
      single_max = std::max(single_max, demand[i][r]);
      load[earliest[i]] += demand[i][r];
      load[earliest[i] + duration[i]] -= demand[i][r];
    }
    long long running = 0;
    long long peak = 0;
    for (int t = 1; t <= span; ++t) {
      running += load[t];
      peak = std::max(peak, running);
    }
    const double spread = static_cast<double>(peak - single_max);
    const int c = single_max + static_cast<int>(std::lround(params.resource_strength * spread));
    capacity[r] = std::max(1, c);
  }

  // Shuffle labels so that index order is no longer a topological order.
  std::vector<int> label(n);
  std::iota(label.begin(), label.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(label[i], label[pick]);
  }

  std::vector<Job> jobs(n);
  for (int i = 0; i < n; ++i) {
    Job& job = jobs[label[i]];
    job.duration = duration[i];
    job.demands = std::move(demand[i]);
    for (int k : successors[i]) jobs[label[k]].predecessors.push_back(label[i]);
  }
  return Instance(std::move(capacity), std::move(jobs));
}

}  // namespace ssgs
