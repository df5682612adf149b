#include "ssgs/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ssgs/metaheuristic.hpp"

namespace ssgs {

std::string_view to_string(Axis axis) {
  switch (axis) {
    case Axis::NumJobs:
      return "num_jobs";
    case Axis::NumResources:
      return "num_resources";
    case Axis::ResourceStrength:
      return "resource_strength";
    case Axis::ResourceFactor:
      return "resource_factor";
    case Axis::NetworkComplexity:
      return "network_complexity";
    case Axis::MaxDuration:
      return "max_duration";
  }
  return "?";
}

Axis parse_axis(std::string_view name) {
  for (Axis axis : kAllAxes) {
    if (to_string(axis) == name) return axis;
  }
  throw std::invalid_argument("unknown axis '" + std::string(name) + "'");
}

namespace {

int integral(Axis axis, double value) {
  if (value != std::floor(value) || std::abs(value) > 1e9) {
    throw std::invalid_argument(std::string(to_string(axis)) + " needs an integer value");
  }
  return static_cast<int>(value);
}

}  // namespace

GeneratorParams apply_axis(GeneratorParams base, Axis axis, double value) {
  switch (axis) {
    case Axis::NumJobs:
      base.num_jobs = integral(axis, value);
      break;
    case Axis::NumResources:
      base.num_resources = integral(axis, value);
      break;
    case Axis::ResourceStrength:
      base.resource_strength = value;
      break;
    case Axis::ResourceFactor:
      base.resource_factor = value;
      break;
    case Axis::NetworkComplexity:
      base.network_complexity = value;
      break;
    case Axis::MaxDuration:
      base.max_duration = integral(axis, value);
      break;
  }
  return base;
}

std::vector<double> default_axis_values(Axis axis) {
  switch (axis) {
    case Axis::NumJobs:
      return {30, 60, 120, 240, 480};
    case Axis::NumResources:
      return {1, 2, 4, 8, 16};
    case Axis::ResourceStrength:
      return {0.0, 0.1, 0.2, 0.4, 0.7, 1.0};
    case Axis::ResourceFactor:
      return {0.25, 0.5, 0.75, 1.0};
    case Axis::NetworkComplexity:
      return {0.25, 0.5, 1.0, 1.5, 2.0};
    case Axis::MaxDuration:
      return {5, 10, 20, 40};
  }
  return {};
}

namespace {

struct PointTotals {
  bool ok = false;
  std::vector<double> seconds;
  std::vector<std::int64_t> executions;
};

PointTotals run_point(const SweepConfig& config, double value, const WarningSink& warn, std::mutex& warn_mutex) {
  auto warning = [&](const std::string& message) {
    if (!warn) return;
    std::lock_guard lock(warn_mutex);
    warn(message);
  };

  const std::size_t impls = config.implementations.size();
  PointTotals totals;
  totals.seconds.assign(impls, 0.0);
  totals.executions.assign(impls, 0);

  std::vector<Instance> instances;
  try {
    const GeneratorParams params = apply_axis(config.base, config.axis, value);
    for (int k = 0; k < config.instances_per_point; ++k) {
      GeneratorParams p = params;
      p.seed = config.seed + static_cast<std::uint64_t>(k);
      instances.push_back(generate_instance(p));
    }
  } catch (const std::exception& e) {
    std::ostringstream msg;
    msg << "skipping " << to_string(config.axis) << "=" << value << ": " << e.what();
    warning(msg.str());
    return totals;
  }

  SearchOptions options;
  options.iterations = config.iterations;
  options.warmup = config.warmup;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    options.seed = config.seed + k;
    std::optional<int> reference;
    for (std::size_t i = 0; i < impls; ++i) {
      auto decoder = make_decoder(config.implementations[i], instances[k], config.hybrid);
      const SearchResult result = run_metaheuristic(instances[k], *decoder, options);
      totals.seconds[i] += result.decode_seconds;
      totals.executions[i] += result.iterations;
      if (!config.timing) {
        if (!reference) reference = result.best.makespan;
        if (*reference != result.best.makespan) {
          std::ostringstream msg;
          msg << "implementations disagree at " << to_string(config.axis) << "=" << value << " instance " << k;
          throw std::runtime_error(msg.str());
        }
      }
    }
  }
  totals.ok = true;
  return totals;
}

}  // namespace

std::vector<BenchRecord> run_sweep(const SweepConfig& config, const WarningSink& warn) {
  if (config.instances_per_point < 1) throw std::invalid_argument("instances per point must be positive");
  if (config.iterations < 1) throw std::invalid_argument("iterations must be positive");
  if (config.implementations.empty()) throw std::invalid_argument("no implementations selected");
  if (config.threads < 1) throw std::invalid_argument("threads must be positive");

  std::mutex warn_mutex;
  std::vector<PointTotals> points(config.values.size());
  const int threads = config.timing ? 1 : std::min<int>(config.threads, static_cast<int>(points.size()));
  if (threads <= 1) {
    for (std::size_t v = 0; v < points.size(); ++v) points[v] = run_point(config, config.values[v], warn, warn_mutex);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t v = next++; v < points.size(); v = next++) {
          try {
            points[v] = run_point(config, config.values[v], warn, warn_mutex);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  const auto conv = std::find(config.implementations.begin(), config.implementations.end(), Implementation::Conv);
  std::vector<BenchRecord> records;
  for (std::size_t v = 0; v < points.size(); ++v) {
    const PointTotals& p = points[v];
    if (!p.ok) continue;
    const double conv_seconds = conv == config.implementations.end()
                                    ? std::numeric_limits<double>::quiet_NaN()
                                    : p.seconds[conv - config.implementations.begin()];
    for (std::size_t i = 0; i < config.implementations.size(); ++i) {
      records.push_back({config.axis, config.values[v], config.implementations[i], p.seconds[i], p.executions[i],
                         100.0 * (p.seconds[i] / conv_seconds)});
    }
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records, const SweepConfig* config) {
  if (config != nullptr) {
    out << "# instances_per_point=" << config->instances_per_point << " iterations=" << config->iterations
        << " warmup=" << config->warmup << " seed=" << config->seed << " mode=" << (config->timing ? "timing" : "validation")
        << '\n';
  }
  out << "axis,value,impl,seconds,executions,relative_pct\n";
  std::ostringstream row;
  row.precision(17);
  for (const BenchRecord& r : records) {
    row.str("");
    row << to_string(r.axis) << ',' << r.value << ',' << to_string(r.impl) << ',' << r.seconds << ',' << r.executions
        << ',';
    if (std::isnan(r.relative_pct)) {
      row << "nan";
    } else {
      row << r.relative_pct;
    }
    out << row.str() << '\n';
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <class T>
T parse_field(const std::string& text, int line, const char* name) {
  T value{};
  std::istringstream in(text);
  if constexpr (std::is_floating_point_v<T>) {
    if (text == "nan") return std::numeric_limits<T>::quiet_NaN();
  }
  if (!(in >> value) || !(in >> std::ws).eof()) throw ParseError(line, name, "bad value '" + text + "'");
  return value;
}

}  // namespace

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::vector<BenchRecord> records;
  std::string line;
  int number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "axis,value,impl,seconds,executions,relative_pct") throw ParseError(number, "header", "unexpected header");
      header = true;
      continue;
    }
    const auto f = split_commas(line);
    if (f.size() != 6) throw ParseError(number, "row", "expected 6 fields");
    BenchRecord r{};
    try {
      r.axis = parse_axis(f[0]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(number, "axis", e.what());
    }
    r.value = parse_field<double>(f[1], number, "value");
    try {
      r.impl = parse_implementation(f[2]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(number, "impl", e.what());
    }
    r.seconds = parse_field<double>(f[3], number, "seconds");
    r.executions = parse_field<std::int64_t>(f[4], number, "executions");
    r.relative_pct = parse_field<double>(f[5], number, "relative_pct");
    records.push_back(r);
  }
  return records;
}

AdaptiveTrace run_adaptive_trace(const Instance& instance, const TraceConfig& config) {
  HybridConfig hybrid_config = config.hybrid;
  hybrid_config.record_trace = true;
  HybridScheduler hybrid(instance, hybrid_config);

  SearchOptions options;
  options.iterations = config.iterations;
  options.seed = config.seed;
  options.warmup = 0;
  const SearchResult run = run_metaheuristic(instance, hybrid, options);

  AdaptiveTrace trace;
  trace.records.assign(hybrid.trace().begin(), hybrid.trace().end());
  trace.commitments.assign(hybrid.commitments().begin(), hybrid.commitments().end());
  for (std::size_t i = 1; i < trace.commitments.size(); ++i) {
    if (trace.commitments[i] != trace.commitments[i - 1]) ++trace.switches;
  }
  trace.hybrid_seconds = run.decode_seconds;
  trace.initial = hybrid.first_commitment();
  trace.ratio = std::numeric_limits<double>::quiet_NaN();
  if (config.compare) {
    auto fixed = make_fixed_decoder(trace.initial.value_or(Implementation::Nbf), instance);
    trace.initial_seconds = run_metaheuristic(instance, *fixed, options).decode_seconds;
    if (trace.initial_seconds > 0.0) trace.ratio = trace.hybrid_seconds / trace.initial_seconds;
  }
  return trace;
}

void write_trace(std::ostream& out, const std::vector<TraceRecord>& records) {
  out << "index,impl,nanos\n";
  for (const TraceRecord& r : records) out << r.index << ',' << to_string(r.impl) << ',' << r.nanos << '\n';
}

std::vector<TraceRecord> read_trace(std::istream& in) {
  std::vector<TraceRecord> records;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == "index,impl,nanos") continue;
    const auto f = split_commas(line);
    if (f.size() != 3) throw ParseError(number, "row", "expected 3 fields");
    TraceRecord r{};
    r.index = parse_field<std::int64_t>(f[0], number, "index");
    try {
      r.impl = parse_implementation(f[1]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(number, "impl", e.what());
    }
    r.nanos = parse_field<std::int64_t>(f[2], number, "nanos");
    records.push_back(r);
  }
  return records;
}

}  // namespace ssgs
