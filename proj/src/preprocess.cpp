#include "ssgs/preprocess.hpp"

#include <algorithm>
#include <numeric>

namespace ssgs {

InsufficiencyStats::InsufficiencyStats(int num_jobs, std::span<const int> capacities)
    : resources_(static_cast<int>(capacities.size())),
      counts_(static_cast<std::size_t>(num_jobs) * capacities.size(), 0) {
  histogram_.reserve(capacities.size());
  for (int c : capacities) histogram_.emplace_back(static_cast<std::size_t>(c) + 1, 0);
}

std::int64_t InsufficiencyStats::observations(int r) const {
  return std::accumulate(histogram_[r].begin(), histogram_[r].end(), std::int64_t{0});
}

void InsufficiencyStats::clear() {
  std::fill(counts_.begin(), counts_.end(), 0);
  for (auto& bins : histogram_) std::fill(bins.begin(), bins.end(), 0);
}

Preprocessing::Preprocessing(const Instance& instance) {
  const int n = instance.num_jobs();
  durations_.reserve(n);
  kernels_.reserve(n);
  offsets_.reserve(static_cast<std::size_t>(n) + 1);
  offsets_.push_back(0);
  for (const Job& job : instance.jobs()) {
    durations_.push_back(job.duration);
    int consumed = 0;
    for (int r = 0; r < instance.num_resources(); ++r) {
      if (job.demands[r] > 0) {
        resources_.push_back(r);
        demands_.push_back(job.demands[r]);
        ++consumed;
      }
    }
    kernels_.push_back(consumed == 0 ? Kernel::None : consumed == 1 ? Kernel::Single : Kernel::Multi);
    offsets_.push_back(static_cast<int>(resources_.size()));
  }
}

namespace {

template <class Less>
void sort_each_job(std::vector<int>& resources, std::vector<int>& demands, const std::vector<int>& offsets,
                   Less&& less_for_job) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t j = 0; j + 1 < offsets.size(); ++j) {
    const int begin = offsets[j];
    const int end = offsets[j + 1];
    if (end - begin < 2) continue;
    pairs.clear();
    for (int i = begin; i < end; ++i) pairs.emplace_back(resources[i], demands[i]);
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
      return less_for_job(static_cast<int>(j), a.first, b.first);
    });
    for (int i = begin; i < end; ++i) {
      resources[i] = pairs[i - begin].first;
      demands[i] = pairs[i - begin].second;
    }
  }
}

}  // namespace

void Preprocessing::order_by(const InsufficiencyStats& stats) {
  // Ties keep ascending resource index, independent of any earlier order.
  reset_order();
  sort_each_job(resources_, demands_, offsets_,
                [&](int j, int a, int b) { return stats.count(j, a) > stats.count(j, b); });
}

void Preprocessing::reset_order() {
  sort_each_job(resources_, demands_, offsets_, [](int, int a, int b) { return a < b; });
}

DataRunResult ssgs_data_run(const Instance& instance, const Preprocessing& prep, std::span<const int> order,
                            AvailabilityProfile& availability) {
  DataRunResult result;
  result.stats = InsufficiencyStats(instance.num_jobs(), instance.capacities());
  DataCollectionStrategy strategy(prep, result.stats);
  run_ssgs(instance, order, availability, strategy, result.schedule);
  return result;
}

}  // namespace ssgs
