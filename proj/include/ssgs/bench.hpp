#pragma once

// Benchmark harness: one-axis sweeps over generator parameters, and the
// adaptive-trace experiment for the hybrid controller.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssgs/decoders.hpp"
#include "ssgs/hybrid.hpp"
#include "ssgs/instance.hpp"

namespace ssgs {

enum class Axis { NumJobs, NumResources, ResourceStrength, ResourceFactor, NetworkComplexity, MaxDuration };

inline constexpr Axis kAllAxes[] = {Axis::NumJobs,        Axis::NumResources,      Axis::ResourceStrength,
                                    Axis::ResourceFactor, Axis::NetworkComplexity, Axis::MaxDuration};

/// "num_jobs", "num_resources", "resource_strength", "resource_factor",
/// "network_complexity", "max_duration".
std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view name);

/// base with one parameter replaced. Integer axes reject fractional values.
GeneratorParams apply_axis(GeneratorParams base, Axis axis, double value);
std::vector<double> default_axis_values(Axis axis);

struct SweepConfig {
  Axis axis = Axis::NumJobs;
  std::vector<double> values;
  GeneratorParams base;
  int instances_per_point = 50;
  std::int64_t iterations = 1'000'000;
  std::vector<Implementation> implementations = {Implementation::Conv, Implementation::Nbf, Implementation::Bf,
                                                 Implementation::Hybrid};
  std::uint64_t seed = 1;  // instance k of every point uses generator seed seed + k
  std::int64_t warmup = 100;
  /// false: validation mode. Points may run on `threads` threads and every
  /// implementation must reach the same best makespan on every instance.
  bool timing = true;
  int threads = 1;
  HybridConfig hybrid;
};

struct BenchRecord {
  Axis axis;
  double value;
  Implementation impl;
  double seconds;
  std::int64_t executions;
  double relative_pct;  // 100 * seconds / Conv seconds at the same point; NaN without Conv

  bool operator==(const BenchRecord&) const = default;
};

using WarningSink = std::function<void(const std::string&)>;

/// One record per (axis value, implementation), in config order. A point
/// whose instances cannot be generated is skipped with a warning.
std::vector<BenchRecord> run_sweep(const SweepConfig& config, const WarningSink& warn = {});

/// Header "axis,value,impl,seconds,executions,relative_pct", preceded by one
/// '#' metadata line when config is given.
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records, const SweepConfig* config = nullptr);
/// Skips '#' lines and the header. Throws ParseError on malformed rows.
std::vector<BenchRecord> read_csv(std::istream& in);

struct TraceConfig {
  std::int64_t iterations = 1'000'000;
  std::uint64_t seed = 1;
  HybridConfig hybrid;
  /// Also run the initially committed implementation alone for the ratio.
  bool compare = true;
};

struct AdaptiveTrace {
  std::vector<TraceRecord> records;
  std::vector<Implementation> commitments;  // one per period that committed
  int switches = 0;                         // commitment changes between consecutive periods
  double hybrid_seconds = 0.0;
  std::optional<Implementation> initial;
  double initial_seconds = 0.0;
  double ratio = 0.0;  // hybrid_seconds / initial_seconds; NaN when not compared
};

AdaptiveTrace run_adaptive_trace(const Instance& instance, const TraceConfig& config);

/// "index,impl,nanos" header, then one line per execution.
void write_trace(std::ostream& out, const std::vector<TraceRecord>& records);
std::vector<TraceRecord> read_trace(std::istream& in);

}  // namespace ssgs
