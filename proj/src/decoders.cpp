#include "ssgs/decoders.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "ssgs/ssgs.hpp"

namespace ssgs {

std::string_view to_string(Implementation impl) {
  switch (impl) {
    case Implementation::Conv:
      return "Conv";
    case Implementation::Data:
      return "data";
    case Implementation::Nbf:
      return "NBF";
    case Implementation::Bf:
      return "BF";
    case Implementation::Hybrid:
      return "Hybrid";
  }
  return "?";
}

Implementation parse_implementation(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "conv") return Implementation::Conv;
  if (lower == "data") return Implementation::Data;
  if (lower == "nbf") return Implementation::Nbf;
  if (lower == "bf") return Implementation::Bf;
  if (lower == "hybrid") return Implementation::Hybrid;
  throw std::invalid_argument("unknown implementation '" + std::string(name) + "'");
}

SolverContext::SolverContext(const Instance& instance, int bloom_bits)
    : instance_(&instance),
      bloom_bits_(bloom_bits),
      availability_(instance.capacities(), instance.horizon()),
      prep_(instance),
      demand_(demand_distribution(instance)),
      stats_(instance.num_jobs(), instance.capacities()) {}

void SolverContext::run_conventional(std::span<const int> order, Schedule& out) {
  ConventionalStrategy strategy(*instance_);
  run_ssgs(*instance_, order, availability_, strategy, out);
}

void SolverContext::run_data(std::span<const int> order, Schedule& out) {
  stats_.clear();
  DataCollectionStrategy strategy(prep_, stats_);
  run_ssgs(*instance_, order, availability_, strategy, out);

  prep_.order_by(stats_);
  seen_ = availability_distribution(stats_, instance_->capacities());
  structure_ = build_structure(demand_, seen_, instance_->capacities(), bloom_bits_);
  filters_.clear();
  filters_.reserve(instance_->num_jobs());
  for (const Job& job : instance_->jobs()) filters_.push_back(encode_job_filter(structure_, job.demands));
  bank_.reset(instance_->horizon(), structure_.full_word());
  learned_ = true;
}

void SolverContext::run_enhanced(std::span<const int> order, Schedule& out) {
  if (!learned_) throw std::logic_error("run_enhanced before run_data");
  EnhancedStrategy strategy(prep_);
  run_ssgs(*instance_, order, availability_, strategy, out);
}

void SolverContext::run_bloom(std::span<const int> order, Schedule& out) {
  if (!learned_) throw std::logic_error("run_bloom before run_data");
  BloomStrategy strategy(prep_, structure_, filters_, bank_);
  run_ssgs(*instance_, order, availability_, strategy, out);
}

void SolverContext::forget() {
  learned_ = false;
  stats_.clear();
  prep_.reset_order();
  seen_.clear();
  structure_ = BloomStructure();
  filters_.clear();
  bank_ = SlotFilterBank();
}

namespace {

class ConvDecoder final : public Decoder {
 public:
  explicit ConvDecoder(const Instance& instance) : context_(instance) {}
  Implementation implementation() const override { return Implementation::Conv; }
  void decode(std::span<const int> order, Schedule& out) override { context_.run_conventional(order, out); }

 private:
  SolverContext context_;
};

class DataDecoder final : public Decoder {
 public:
  explicit DataDecoder(const Instance& instance) : context_(instance) {}
  Implementation implementation() const override { return Implementation::Data; }
  void decode(std::span<const int> order, Schedule& out) override { context_.run_data(order, out); }

 private:
  SolverContext context_;
};

class LearningDecoder final : public Decoder {
 public:
  LearningDecoder(const Instance& instance, Implementation impl) : context_(instance), impl_(impl) {}
  Implementation implementation() const override { return impl_; }
  void decode(std::span<const int> order, Schedule& out) override {
    if (!context_.learned()) {
      context_.run_data(order, out);
    } else if (impl_ == Implementation::Bf) {
      context_.run_bloom(order, out);
    } else {
      context_.run_enhanced(order, out);
    }
  }

 private:
  SolverContext context_;
  Implementation impl_;
};

}  // namespace

std::unique_ptr<Decoder> make_fixed_decoder(Implementation impl, const Instance& instance) {
  switch (impl) {
    case Implementation::Conv:
      return std::make_unique<ConvDecoder>(instance);
    case Implementation::Data:
      return std::make_unique<DataDecoder>(instance);
    case Implementation::Nbf:
    case Implementation::Bf:
      return std::make_unique<LearningDecoder>(instance, impl);
    case Implementation::Hybrid:
      break;
  }
  throw std::invalid_argument("make_fixed_decoder: Hybrid is not a fixed implementation");
}

}  // namespace ssgs
