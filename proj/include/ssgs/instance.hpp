#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssgs {

/// Raised when instance data violates a model invariant.
class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Job {
  int duration = 1;
  std::vector<int> demands;       // one entry per resource
  std::vector<int> predecessors;  // job indices, sorted and unique once inside an Instance

  bool operator==(const Job&) const = default;
};

/// Single-mode RCPSP instance with renewable resources.
///
/// Jobs and resources are indexed from 0. Construction checks every model
/// invariant (durations, demand bounds, predecessor range, acyclicity) and
/// throws InstanceError on the first violation, so an Instance object is
/// always valid and immutable.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<int> capacities, std::vector<Job> jobs);

  int num_jobs() const { return static_cast<int>(jobs_.size()); }
  int num_resources() const { return static_cast<int>(capacities_.size()); }

  std::span<const int> capacities() const { return capacities_; }
  int capacity(int r) const { return capacities_[r]; }

  std::span<const Job> jobs() const { return jobs_; }
  const Job& job(int j) const { return jobs_[j]; }
  std::span<const int> successors(int j) const { return successors_[j]; }

  /// Upper bound on the makespan of any serial schedule: the sum of durations.
  int horizon() const { return horizon_; }

  bool operator==(const Instance& other) const {
    return capacities_ == other.capacities_ && jobs_ == other.jobs_;
  }

 private:
  std::vector<int> capacities_;
  std::vector<Job> jobs_;
  std::vector<std::vector<int>> successors_;
  int horizon_ = 0;
};

/// A job sequence; SSGS accepts it when it is a precedence-feasible
/// ordering of all jobs.
using Permutation = std::vector<int>;

/// Start slots are 1-based. A job starting at slot s occupies s .. s+d-1.
struct Schedule {
  std::vector<int> starts;
  int makespan = 0;

  bool operator==(const Schedule&) const = default;
};

int makespan_of(const Instance& instance, std::span<const int> starts);

/// True iff order lists every job exactly once, each after all its predecessors.
bool is_precedence_feasible(const Instance& instance, std::span<const int> order);

/// Uniformly picks among currently eligible jobs at each step.
/// Throws InstanceError if the predecessor lists contain a cycle.
Permutation random_topological_order(std::span<const std::vector<int>> predecessors,
                                     std::uint64_t seed);
Permutation random_topological_order(const Instance& instance, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Generation

struct GeneratorParams {
  int num_jobs = 120;
  int num_resources = 4;
  int max_duration = 10;
  double network_complexity = 1.0;  // mean number of direct successors
  double resource_factor = 0.75;    // fraction of resources each job consumes
  double resource_strength = 0.1;   // 0 = tightest capacity, 1 = loosest
  std::uint64_t seed = 1;
};

/// Largest demand the generator assigns to a consumed resource.
inline constexpr int kMaxGeneratedDemand = 10;

/// Deterministic for a fixed seed. Throws InstanceError on illegal parameters.
Instance generate_instance(const GeneratorParams& params);

// ---------------------------------------------------------------------------
// Text formats

/// Raised by the readers; the message names the line and field at fault.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& field, const std::string& what);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

/// Reads the single-mode PSPLIB `.sm` layout. The zero-duration source and
/// sink dummies are dropped; job numbering shifts accordingly.
Instance parse_psplib(const std::string& text);

/// Native line format:
///
///     <jobs> <resources>
///     <capacity_0> ... <capacity_{R-1}>
///     <duration> <k_pred> <pred>... <k_res> <r> <v> ...     (one line per job)
///
/// Indices are 0-based; only positive demands are listed; `#` starts a comment.
std::string write_native(const Instance& instance);
Instance parse_native(const std::string& text);

/// Picks the reader by content: PSPLIB files start with a row of asterisks.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  enum class Kind { Precedence, Resource, Range };
  Kind kind;
  int job = -1;          // the job at fault (successor for Precedence)
  int other = -1;        // predecessor for Precedence
  int slot = 0;          // for Resource
  int resource = -1;     // for Resource
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool feasible() const { return violations.empty(); }
};

ValidationReport validate_schedule(const Instance& instance, const Schedule& schedule);

/// True iff no single job can start earlier while all others stay fixed.
/// Throws InstanceError when the schedule itself is infeasible.
bool is_active(const Instance& instance, const Schedule& schedule);

}  // namespace ssgs
