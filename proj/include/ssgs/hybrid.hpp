#pragma once

// Online selection between the Bloom (BF) and non-Bloom (NBF) decoders.
//
// Each period starts with one data-collection execution. BF and NBF then
// alternate, each timed, and every completed (BF, NBF) pair feeds a sign
// test. The controller commits to the faster implementation once the test
// is significant or the alternation cap is reached, and forgets everything
// it learned when the period ends.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ssgs/decoders.hpp"

namespace ssgs {

enum class SignVerdict { BfFaster, NbfFaster, Inconclusive };

struct SignTestResult {
  SignVerdict verdict;
  double p_value;
};

/// Exact two-sided sign test under a fair-coin null:
/// p = min(1, 2 * min(P[X <= wins], P[X >= wins])), X ~ Binomial(trials, 1/2).
SignTestResult sign_test(int wins, int trials, double alpha = 0.05);

/// Returns a monotonic timestamp in nanoseconds.
using NanoClock = std::function<std::int64_t()>;
std::int64_t steady_nanos();

struct HybridConfig {
  int period_length = 10'000;
  int alternation_cap = 100;  // executions, i.e. at most cap / 2 pairs
  double alpha = 0.05;
  int bloom_bits = BloomStructure::kWordBits;
  /// false: keep the first commitment for the whole run (no restarts).
  bool adaptive = true;
  /// Time every execution and keep a TraceRecord for it.
  bool record_trace = false;
};

enum class Phase { Data, Alternating, Committed };

struct HybridState {
  Phase phase = Phase::Data;
  int execution_count = 0;          // within the current period
  int alternation_executions = 0;
  std::optional<std::int64_t> pending_bf_nanos;  // first leg of the open pair
  bool pending_valid = true;
  int wins = 0;                     // pairs where BF beat the following NBF
  int trials = 0;                   // completed pairs
  Implementation committed = Implementation::Nbf;  // meaningful once Committed

  bool operator==(const HybridState&) const = default;
};

struct TraceRecord {
  std::int64_t index;
  Implementation impl;
  std::int64_t nanos;
};

class HybridScheduler final : public Decoder {
 public:
  explicit HybridScheduler(const Instance& instance, HybridConfig config = {}, NanoClock clock = steady_nanos);

  Implementation implementation() const override { return Implementation::Hybrid; }
  void decode(std::span<const int> order, Schedule& out) override;
  using Decoder::decode;

  const HybridState& state() const { return state_; }
  const HybridConfig& config() const { return config_; }
  const SolverContext& context() const { return context_; }

  /// Implementation of the execution in progress, or of the next one between
  /// executions.
  Implementation running() const { return running_; }

  std::int64_t executions() const { return total_executions_; }
  std::int64_t executions(Implementation impl) const;
  int restarts() const { return restarts_; }
  std::span<const TraceRecord> trace() const { return trace_; }
  /// Every commitment made so far, in order (at most one per period).
  std::span<const Implementation> commitments() const { return commitments_; }
  std::optional<Implementation> first_commitment() const {
    if (commitments_.empty()) return std::nullopt;
    return commitments_.front();
  }

  /// Erases all learned data; the next execution collects data again.
  void restart();

 private:
  Implementation next_implementation() const;
  void commit(Implementation impl);
  void record_pair(std::int64_t nbf_nanos, bool nbf_valid);

  HybridConfig config_;
  NanoClock clock_;
  SolverContext context_;
  HybridState state_;
  Implementation running_ = Implementation::Data;
  std::int64_t total_executions_ = 0;
  std::int64_t per_impl_[5] = {};
  int restarts_ = 0;
  std::vector<Implementation> commitments_;
  std::vector<TraceRecord> trace_;
};

/// Any implementation behind the Decoder interface.
std::unique_ptr<Decoder> make_decoder(Implementation impl, const Instance& instance, HybridConfig config = {});

}  // namespace ssgs
