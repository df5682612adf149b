#include "ssgs/bloom.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <tuple>

namespace ssgs {

BloomStructure::BloomStructure(std::vector<LevelBit> bits, std::span<const int> capacities)
    : bits_(std::move(bits)), capacities_(capacities.begin(), capacities.end()) {
  const int R = num_resources();
  if (size() > kWordBits) throw std::invalid_argument("Bloom structure exceeds " + std::to_string(kWordBits) + " bits");
  std::vector<int> last_level(R, 0);
  for (const LevelBit& b : bits_) {
    if (b.resource < 0 || b.resource >= R) throw std::invalid_argument("Bloom structure: resource out of range");
    if (b.level < 1 || b.level > capacities_[b.resource]) {
      throw std::invalid_argument("Bloom structure: level out of range for resource " + std::to_string(b.resource));
    }
    // Also rules out duplicates.
    if (b.level <= last_level[b.resource]) {
      throw std::invalid_argument("Bloom structure: levels of resource " + std::to_string(b.resource) +
                                  " must be strictly increasing");
    }
    last_level[b.resource] = b.level;
  }

  offsets_.resize(R + 1);
  for (int r = 0; r < R; ++r) offsets_[r + 1] = offsets_[r] + capacities_[r] + 1;
  masks_.assign(offsets_[R], 0);
  for (int i = 0; i < size(); ++i) {
    const LevelBit& b = bits_[i];
    for (int a = b.level; a <= capacities_[b.resource]; ++a) masks_[offsets_[b.resource] + a] |= 1u << i;
  }
  for (int r = 0; r < R; ++r) full_word_ |= resource_mask(r);
}

BloomStructure BloomStructure::lossless(std::span<const int> capacities) {
  std::vector<LevelBit> bits;
  for (int r = 0; r < static_cast<int>(capacities.size()); ++r) {
    for (int k = 1; k <= capacities[r]; ++k) bits.push_back({r, k});
  }
  return BloomStructure(std::move(bits), capacities);
}

bool BloomStructure::contains(int r, int level) const {
  if (level < 1 || level > capacities_[r]) return false;
  return level_mask(r, level) != level_mask(r, level - 1);
}

std::uint32_t BloomStructure::encode_job(std::span<const int> demands) const {
  std::uint32_t word = 0;
  for (int r = 0; r < num_resources(); ++r) word |= level_mask(r, demands[r]);
  return word;
}

std::uint32_t BloomStructure::encode_slot(std::span<const int> availability) const {
  std::uint32_t word = 0;
  for (int r = 0; r < num_resources(); ++r) word |= level_mask(r, availability[r]);
  return word;
}

std::string BloomStructure::format(std::uint32_t word) const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    if (i > 0 && bits_[i].resource != bits_[i - 1].resource) out += ' ';
    out += ((word >> i) & 1u) ? '1' : '0';
  }
  return out;
}

std::string BloomStructure::dump() const {
  std::ostringstream out;
  for (const LevelBit& b : bits_) out << b.resource << ' ' << b.level << '\n';
  return out.str();
}

BloomStructure BloomStructure::parse_dump(const std::string& text, std::span<const int> capacities) {
  std::istringstream in(text);
  std::vector<LevelBit> bits;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    LevelBit b{};
    if (!(fields >> b.resource)) continue;
    if (!(fields >> b.level)) throw std::invalid_argument("Bloom dump: expected 'r k', got '" + line + "'");
    bits.push_back(b);
  }
  return BloomStructure(std::move(bits), capacities);
}

std::vector<Distribution> demand_distribution(const Instance& instance) {
  std::vector<Distribution> D;
  const double share = instance.num_jobs() > 0 ? 1.0 / instance.num_jobs() : 0.0;
  for (int r = 0; r < instance.num_resources(); ++r) {
    Distribution d(static_cast<std::size_t>(instance.capacity(r)) + 1, 0.0);
    for (const Job& job : instance.jobs()) d[job.demands[r]] += share;
    if (instance.num_jobs() == 0) d[0] = 1.0;
    D.push_back(std::move(d));
  }
  return D;
}

std::vector<Distribution> availability_distribution(const InsufficiencyStats& stats, std::span<const int> capacities) {
  std::vector<Distribution> E;
  for (int r = 0; r < static_cast<int>(capacities.size()); ++r) {
    const auto bins = static_cast<std::size_t>(capacities[r]) + 1;
    const std::int64_t total = stats.observations(r);
    Distribution e(bins, 0.0);
    if (total == 0) {
      std::fill(e.begin(), e.end(), 1.0 / static_cast<double>(bins));
    } else {
      const auto histogram = stats.histogram(r);
      for (std::size_t k = 0; k < bins; ++k) e[k] = static_cast<double>(histogram[k]) / static_cast<double>(total);
    }
    E.push_back(std::move(e));
  }
  return E;
}

double deletion_cost(std::span<const double> demand, std::span<const double> availability, int lower, int level,
                     int upper) {
  double jobs = 0.0;
  for (int k = level; k < upper; ++k) jobs += demand[k];
  double slots = 0.0;
  for (int k = lower; k < level; ++k) slots += availability[k];
  return jobs * slots;
}

BloomStructure build_structure(std::span<const Distribution> demand, std::span<const Distribution> availability,
                               std::span<const int> capacities, int limit, std::vector<LevelBit>* deletions) {
  if (limit < 1) throw std::invalid_argument("Bloom structure limit must be at least 1");
  if (limit > BloomStructure::kWordBits) {
    throw std::invalid_argument("Bloom structure limit exceeds the word width");
  }
  const int R = static_cast<int>(capacities.size());
  if (static_cast<int>(demand.size()) != R || static_cast<int>(availability.size()) != R) {
    throw std::invalid_argument("one demand and one availability distribution per resource expected");
  }

  // Prefix sums make each cost O(1); prefix[k] = sum of entries below k.
  std::vector<std::vector<double>> demand_prefix(R), avail_prefix(R);
  // Retained levels per resource as a linked list with sentinels 0 and c_r + 1.
  std::vector<std::vector<int>> prev(R), next(R), version(R);
  long long retained = 0;
  for (int r = 0; r < R; ++r) {
    const int c = capacities[r];
    if (static_cast<int>(demand[r].size()) != c + 1 || static_cast<int>(availability[r].size()) != c + 1) {
      throw std::invalid_argument("distribution size must be capacity + 1 for resource " + std::to_string(r));
    }
    demand_prefix[r].assign(c + 2, 0.0);
    avail_prefix[r].assign(c + 2, 0.0);
    for (int k = 0; k <= c; ++k) {
      demand_prefix[r][k + 1] = demand_prefix[r][k] + demand[r][k];
      avail_prefix[r][k + 1] = avail_prefix[r][k] + availability[r][k];
    }
    prev[r].resize(c + 2);
    next[r].resize(c + 2);
    version[r].assign(c + 2, 0);
    for (int k = 0; k <= c + 1; ++k) {
      prev[r][k] = k - 1;
      next[r][k] = k + 1;
    }
    retained += c;
  }

  auto cost = [&](int r, int k) {
    const int lower = prev[r][k];
    const int upper = next[r][k];
    return (demand_prefix[r][upper] - demand_prefix[r][k]) * (avail_prefix[r][k] - avail_prefix[r][lower]);
  };

  using Entry = std::tuple<double, int, int, int>;  // cost, resource, level, version
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  if (retained > limit) {
    for (int r = 0; r < R; ++r) {
      for (int k = 1; k <= capacities[r]; ++k) heap.emplace(cost(r, k), r, k, 0);
    }
  }
  while (retained > limit) {
    const auto [c, r, k, v] = heap.top();
    heap.pop();
    if (v != version[r][k]) continue;  // stale
    version[r][k] = -1;
    const int lower = prev[r][k];
    const int upper = next[r][k];
    next[r][lower] = upper;
    prev[r][upper] = lower;
    --retained;
    if (deletions != nullptr) deletions->push_back({r, k});
    if (lower >= 1) heap.emplace(cost(r, lower), r, lower, ++version[r][lower]);
    if (upper <= capacities[r]) heap.emplace(cost(r, upper), r, upper, ++version[r][upper]);
  }

  std::vector<LevelBit> bits;
  for (int r = 0; r < R; ++r) {
    for (int k = next[r][0]; k <= capacities[r]; k = next[r][k]) bits.push_back({r, k});
  }
  return BloomStructure(std::move(bits), capacities);
}

bool compute_exactness(const BloomStructure& structure, std::span<const int> demands) {
  for (int r = 0; r < structure.num_resources(); ++r) {
    if (demands[r] > 0 && !structure.contains(r, demands[r])) return false;
  }
  return true;
}

JobFilter encode_job_filter(const BloomStructure& structure, std::span<const int> demands) {
  return {structure.encode_job(demands), compute_exactness(structure, demands)};
}

}  // namespace ssgs
