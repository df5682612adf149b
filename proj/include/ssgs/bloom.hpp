#pragma once

// Resource-level Bloom filters for constant-time slot sufficiency pretests.
//
// A level bit u(r,k) reads "at least k units of resource r". A job word has
// the bit set when the job demands at least k units; a slot word has it set
// when at least k units are available. A slot can only be sufficient if
// every bit of the job word is also set in the slot word.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssgs/availability.hpp"
#include "ssgs/instance.hpp"
#include "ssgs/preprocess.hpp"
#include "ssgs/ssgs.hpp"

namespace ssgs {

struct LevelBit {
  int resource;
  int level;

  auto operator<=>(const LevelBit&) const = default;
};

/// The ordered subset L of level bits; element i maps to bit i of a word.
class BloomStructure {
 public:
  static constexpr int kWordBits = 32;

  BloomStructure() = default;
  /// Throws std::invalid_argument unless the bits are within range, unique,
  /// at most kWordBits, and strictly increasing in level within a resource.
  BloomStructure(std::vector<LevelBit> bits, std::span<const int> capacities);

  /// L = U. Throws when that needs more than kWordBits bits.
  static BloomStructure lossless(std::span<const int> capacities);

  std::span<const LevelBit> bits() const { return bits_; }
  int size() const { return static_cast<int>(bits_.size()); }
  int num_resources() const { return static_cast<int>(capacities_.size()); }
  std::span<const int> capacities() const { return capacities_; }
  bool contains(int r, int level) const;

  /// Bits of resource r whose level is at most `amount` (0 <= amount <= c_r).
  std::uint32_t level_mask(int r, int amount) const { return masks_[offsets_[r] + amount]; }
  std::uint32_t resource_mask(int r) const { return level_mask(r, capacities_[r]); }
  std::uint32_t full_word() const { return full_word_; }

  std::uint32_t encode_job(std::span<const int> demands) const;
  std::uint32_t encode_slot(std::span<const int> availability) const;

  /// Bits in list order, one space between resource groups: "110 10 000".
  std::string format(std::uint32_t word) const;

  /// One line per bit, "r k".
  std::string dump() const;
  static BloomStructure parse_dump(const std::string& text, std::span<const int> capacities);

 private:
  std::vector<LevelBit> bits_;
  std::vector<int> capacities_;
  std::vector<int> offsets_;
  std::vector<std::uint32_t> masks_;
  std::uint32_t full_word_ = 0;
};

// ---------------------------------------------------------------------------
// Structure optimisation

/// Probability by units, index 0..c_r.
using Distribution = std::vector<double>;

/// D^r_k: share of jobs demanding exactly k units of r.
std::vector<Distribution> demand_distribution(const Instance& instance);

/// E^r_k: share of examined slots with exactly k units of r available.
/// Resources never observed fall back to uniform over 0..c_r.
std::vector<Distribution> availability_distribution(const InsufficiencyStats& stats,
                                                    std::span<const int> capacities);

/// Expected false positives introduced by deleting level `level` of one
/// resource whose nearest retained levels are `lower` (0 if none) and
/// `upper` (c_r + 1 if none):
///   (sum_{k=level}^{upper-1} D_k) * (sum_{k=lower}^{level-1} E_k)
double deletion_cost(std::span<const double> demand, std::span<const double> availability, int lower, int level,
                     int upper);

/// Greedy structure builder: start from L = U and delete the cheapest bit
/// until |L| <= limit. Ties go to the lexicographically smallest (r, k).
/// When `deletions` is given, the deleted bits are appended in order.
BloomStructure build_structure(std::span<const Distribution> demand, std::span<const Distribution> availability,
                               std::span<const int> capacities, int limit = BloomStructure::kWordBits,
                               std::vector<LevelBit>* deletions = nullptr);

// ---------------------------------------------------------------------------
// Filters at run time

struct JobFilter {
  std::uint32_t word = 0;
  bool exact = false;  // a positive filter test needs no verification
};

/// True iff u(r, v_r) is retained for every resource the job consumes. Then
/// the filter decides sufficiency on its own, in both directions.
bool compute_exactness(const BloomStructure& structure, std::span<const int> demands);

JobFilter encode_job_filter(const BloomStructure& structure, std::span<const int> demands);

enum class FilterVerdict { DefinitelyInsufficient, MaybeSufficient };

inline FilterVerdict filter_test(std::uint32_t job_word, std::uint32_t slot_word) {
  return (job_word & ~slot_word) != 0 ? FilterVerdict::DefinitelyInsufficient : FilterVerdict::MaybeSufficient;
}

/// One slot word per slot 1..horizon, kept in step with an AvailabilityProfile.
class SlotFilterBank {
 public:
  SlotFilterBank() = default;
  SlotFilterBank(int horizon, std::uint32_t full_word) { reset(horizon, full_word); }

  void reset(int horizon, std::uint32_t full_word) {
    full_word_ = full_word;
    words_.assign(static_cast<std::size_t>(horizon) + 2, full_word);
  }
  void restore(int makespan) {
    std::fill(words_.begin() + 1, words_.begin() + 1 + makespan, full_word_);
  }

  std::uint32_t word(int slot) const { return words_[slot]; }
  std::uint32_t& word(int slot) { return words_[slot]; }
  int horizon() const { return static_cast<int>(words_.size()) - 2; }

 private:
  std::vector<std::uint32_t> words_;
  std::uint32_t full_word_ = 0;
};

/// Backward scan where each slot is first tested with the filter words.
template <class Probe = NoProbe>
int find_bloom(const JobView& job, const JobFilter& filter, int t0, const AvailabilityProfile& availability,
               const SlotFilterBank& bank, Probe&& probe = {}) {
  const std::size_t k = job.resources.size();
  const int* res = job.resources.data();
  const int* dem = job.demands.data();
  return scan_backward(job.duration, t0, [&](int t) {
    probe.slot_test();
    if ((filter.word & ~bank.word(t)) != 0) {
      probe.filter_rejection();
      return false;
    }
    if (filter.exact) return true;
    probe.verification();
    const int* row = availability.row(t);
    for (std::size_t i = 0; i < k; ++i) {
      if (row[res[i]] < dem[i]) return false;
    }
    return true;
  });
}

/// Applies the job's consumption and rewrites only the consumed resources'
/// bit spans of each touched slot word.
inline void update_with_filters(const JobView& job, int start, AvailabilityProfile& availability,
                                const BloomStructure& structure, SlotFilterBank& bank) {
  const std::size_t k = job.resources.size();
  for (int t = start; t < start + job.duration; ++t) {
    int* row = availability.row(t);
    std::uint32_t word = bank.word(t);
    for (std::size_t i = 0; i < k; ++i) {
      const int r = job.resources[i];
      row[r] -= job.demands[i];
      word = (word & ~structure.resource_mask(r)) | structure.level_mask(r, row[r]);
    }
    bank.word(t) = word;
  }
}

/// BF: Bloom pretest for multi-resource jobs, the single-resource kernel
/// otherwise, with slot words maintained on every update.
class BloomStrategy {
 public:
  BloomStrategy(const Preprocessing& prep, const BloomStructure& structure, std::span<const JobFilter> filters,
                SlotFilterBank& bank)
      : prep_(&prep), structure_(&structure), filters_(filters), bank_(&bank) {}

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
    return find_bloom(job, filters_[j], t0, availability, *bank_);
  }

  void update(int j, int start, AvailabilityProfile& availability) const {
    const JobView job = prep_->job(j);
    if (job.kernel != Kernel::None) update_with_filters(job, start, availability, *structure_, *bank_);
  }

  void restore(int makespan, AvailabilityProfile& availability) const {
    availability.restore(makespan);
    bank_->restore(makespan);
  }

 private:
  const Preprocessing* prep_;
  const BloomStructure* structure_;
  std::span<const JobFilter> filters_;
  SlotFilterBank* bank_;
};

}  // namespace ssgs
