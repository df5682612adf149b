#pragma once

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "ssgs/availability.hpp"
#include "ssgs/bloom.hpp"
#include "ssgs/instance.hpp"
#include "ssgs/preprocess.hpp"

namespace ssgs {

enum class Implementation { Conv, Data, Nbf, Bf, Hybrid };

std::string_view to_string(Implementation impl);
/// Accepts "conv", "data", "nbf", "bf", "hybrid" (any case).
Implementation parse_implementation(std::string_view name);

/// Everything one instance needs for any SSGS variant: the shared
/// availability profile, preprocessing, and the data learned by the last
/// data-collection run (resource order, distributions, Bloom structure).
///
/// Single-owner mutable state; use one context per thread.
class SolverContext {
 public:
  explicit SolverContext(const Instance& instance, int bloom_bits = BloomStructure::kWordBits);

  SolverContext(const SolverContext&) = delete;
  SolverContext& operator=(const SolverContext&) = delete;

  const Instance& instance() const { return *instance_; }

  void run_conventional(std::span<const int> order, Schedule& out);
  /// Decodes while collecting statistics, then reorders R_j and rebuilds the
  /// Bloom structure and job filters from what was observed.
  void run_data(std::span<const int> order, Schedule& out);
  /// Require learned().
  void run_enhanced(std::span<const int> order, Schedule& out);
  void run_bloom(std::span<const int> order, Schedule& out);

  bool learned() const { return learned_; }
  /// Erases everything run_data learned.
  void forget();

  const AvailabilityProfile& availability() const { return availability_; }
  const SlotFilterBank& slot_filters() const { return bank_; }
  const Preprocessing& preprocessing() const { return prep_; }
  const InsufficiencyStats& stats() const { return stats_; }
  const BloomStructure& structure() const { return structure_; }
  std::span<const JobFilter> job_filters() const { return filters_; }
  std::span<const Distribution> demand() const { return demand_; }
  std::span<const Distribution> availability_seen() const { return seen_; }

 private:
  const Instance* instance_;
  int bloom_bits_;
  AvailabilityProfile availability_;
  Preprocessing prep_;
  std::vector<Distribution> demand_;  // instance-derived, never erased
  bool learned_ = false;
  InsufficiencyStats stats_;
  std::vector<Distribution> seen_;
  BloomStructure structure_;
  std::vector<JobFilter> filters_;
  SlotFilterBank bank_;
};

/// What a metaheuristic calls to evaluate a permutation.
class Decoder {
 public:
  virtual ~Decoder() = default;
  virtual Implementation implementation() const = 0;
  virtual void decode(std::span<const int> order, Schedule& out) = 0;

  Schedule decode(std::span<const int> order) {
    Schedule out;
    decode(order, out);
    return out;
  }
};

/// Conv, Data, Nbf or Bf. Nbf and Bf run one data-collection execution first.
/// Use HybridScheduler (hybrid.hpp) or make_decoder for Hybrid.
std::unique_ptr<Decoder> make_fixed_decoder(Implementation impl, const Instance& instance);

}  // namespace ssgs
