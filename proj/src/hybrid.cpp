#include "ssgs/hybrid.hpp"

#include <stdexcept>

namespace ssgs {

HybridScheduler::HybridScheduler(const Instance& instance, HybridConfig config, NanoClock clock)
    : config_(config), clock_(std::move(clock)), context_(instance, config.bloom_bits) {
  if (config_.period_length < 1) throw std::invalid_argument("hybrid: period length must be at least 1");
  if (config_.alternation_cap < 0) throw std::invalid_argument("hybrid: alternation cap must be non-negative");
  if (!(config_.alpha > 0.0 && config_.alpha < 1.0)) throw std::invalid_argument("hybrid: alpha must be in (0, 1)");
  if (!clock_) throw std::invalid_argument("hybrid: clock is empty");
}

std::int64_t HybridScheduler::executions(Implementation impl) const {
  return per_impl_[static_cast<int>(impl)];
}

Implementation HybridScheduler::next_implementation() const {
  switch (state_.phase) {
    case Phase::Data:
      return Implementation::Data;
    case Phase::Alternating:
      return state_.pending_bf_nanos ? Implementation::Nbf : Implementation::Bf;
    case Phase::Committed:
      return state_.committed;
  }
  return Implementation::Data;
}

void HybridScheduler::commit(Implementation impl) {
  state_.phase = Phase::Committed;
  state_.committed = impl;
  state_.pending_bf_nanos.reset();
  commitments_.push_back(impl);
}

void HybridScheduler::record_pair(std::int64_t nbf_nanos, bool nbf_valid) {
  const std::int64_t bf_nanos = *state_.pending_bf_nanos;
  // A non-monotonic reading on either leg counts as a tie.
  const bool valid = state_.pending_valid && nbf_valid;
  ++state_.trials;
  if (valid && bf_nanos < nbf_nanos) ++state_.wins;
  state_.pending_bf_nanos.reset();
  state_.pending_valid = true;

  const SignTestResult result = sign_test(state_.wins, state_.trials, config_.alpha);
  if (result.verdict == SignVerdict::BfFaster) {
    commit(Implementation::Bf);
  } else if (result.verdict == SignVerdict::NbfFaster) {
    commit(Implementation::Nbf);
  } else if (state_.alternation_executions + 2 > config_.alternation_cap) {
    commit(state_.wins > state_.trials - state_.wins ? Implementation::Bf : Implementation::Nbf);
  }
}

void HybridScheduler::decode(std::span<const int> order, Schedule& out) {
  const Implementation impl = next_implementation();
  running_ = impl;
  const bool timed = config_.record_trace || state_.phase == Phase::Alternating;

  const std::int64_t begin = timed ? clock_() : 0;
  switch (impl) {
    case Implementation::Data:
      context_.run_data(order, out);
      break;
    case Implementation::Nbf:
      context_.run_enhanced(order, out);
      break;
    case Implementation::Bf:
      context_.run_bloom(order, out);
      break;
    default:
      throw std::logic_error("hybrid: unexpected implementation");
  }
  const std::int64_t end = timed ? clock_() : 0;
  const std::int64_t nanos = end - begin;
  const bool valid = nanos >= 0;

  if (config_.record_trace) trace_.push_back({total_executions_, impl, valid ? nanos : 0});
  ++total_executions_;
  ++per_impl_[static_cast<int>(impl)];

  switch (state_.phase) {
    case Phase::Data:
      state_.phase = Phase::Alternating;
      if (config_.alternation_cap < 2) commit(Implementation::Nbf);
      break;
    case Phase::Alternating:
      ++state_.alternation_executions;
      if (impl == Implementation::Bf) {
        state_.pending_bf_nanos = valid ? nanos : 0;
        state_.pending_valid = valid;
      } else {
        record_pair(nanos, valid);
      }
      break;
    case Phase::Committed:
      break;
  }

  ++state_.execution_count;
  if (state_.execution_count >= config_.period_length) {
    if (config_.adaptive) {
      restart();
    } else {
      state_.execution_count = 0;
    }
  }
  running_ = next_implementation();
}

void HybridScheduler::restart() {
  context_.forget();
  state_ = HybridState{};
  running_ = Implementation::Data;
  ++restarts_;
}

std::unique_ptr<Decoder> make_decoder(Implementation impl, const Instance& instance, HybridConfig config) {
  if (impl == Implementation::Hybrid) return std::make_unique<HybridScheduler>(instance, config);
  return make_fixed_decoder(impl, instance);
}

}  // namespace ssgs
