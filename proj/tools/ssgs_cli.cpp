// rcpsp-ssgs: generate instances, decode with any SSGS implementation, and
// run the benchmark experiments.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssgs/bench.hpp"
#include "ssgs/decoders.hpp"
#include "ssgs/hybrid.hpp"
#include "ssgs/instance.hpp"
#include "ssgs/metaheuristic.hpp"

namespace {

using namespace ssgs;

void add_generator_options(CLI::App* app, GeneratorParams& p) {
  app->add_option("--jobs", p.num_jobs, "Number of jobs")->capture_default_str();
  app->add_option("--resources", p.num_resources, "Number of resources")->capture_default_str();
  app->add_option("--max-duration", p.max_duration, "Maximum job duration")->capture_default_str();
  app->add_option("--nc", p.network_complexity, "Network complexity")->capture_default_str();
  app->add_option("--rf", p.resource_factor, "Resource factor")->capture_default_str();
  app->add_option("--rs", p.resource_strength, "Resource strength")->capture_default_str();
  app->add_option("--gen-seed", p.seed, "Generator seed")->capture_default_str();
}

void add_hybrid_options(CLI::App* app, HybridConfig& h) {
  app->add_option("--period", h.period_length, "Hybrid restart period (executions)")->capture_default_str();
  app->add_option("--cap", h.alternation_cap, "Hybrid alternation cap (executions)")->capture_default_str();
  app->add_option("--bloom-bits", h.bloom_bits, "Bloom structure size limit")->capture_default_str();
}

std::vector<Implementation> parse_impls(const std::string& list) {
  std::vector<Implementation> impls;
  std::stringstream in(list);
  std::string name;
  while (std::getline(in, name, ',')) impls.push_back(parse_implementation(name));
  return impls;
}

Instance instance_from(const std::string& path, const GeneratorParams& params) {
  return path.empty() ? generate_instance(params) : load_instance(path);
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

int selftest(int instances, int permutations, std::uint64_t seed) {
  int failures = 0;
  for (int k = 0; k < instances; ++k) {
    GeneratorParams p;
    p.num_jobs = 30;
    p.seed = seed + k;
    p.resource_strength = 0.1 + 0.8 * (k % 5) / 4.0;
    const Instance instance = generate_instance(p);
    std::vector<std::unique_ptr<Decoder>> decoders;
    for (Implementation impl : {Implementation::Conv, Implementation::Nbf, Implementation::Bf, Implementation::Hybrid}) {
      decoders.push_back(make_decoder(impl, instance, {.period_length = 7, .alternation_cap = 4}));
    }
    for (int i = 0; i < permutations; ++i) {
      const Permutation order = random_topological_order(instance, seed * 7919 + k * 131 + i);
      const Schedule reference = decoders[0]->decode(order);
      if (!validate_schedule(instance, reference).feasible() || !is_active(instance, reference)) ++failures;
      for (std::size_t d = 1; d < decoders.size(); ++d) {
        if (decoders[d]->decode(order).starts != reference.starts) {
          ++failures;
          std::cerr << "mismatch: instance " << k << " permutation " << i << " " << to_string(decoders[d]->implementation())
                    << '\n';
        }
      }
    }
  }
  std::cout << (failures == 0 ? "selftest passed" : "selftest FAILED") << " (" << instances << " instances x "
            << permutations << " permutations, " << failures << " failures)\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial schedule generation for the RCPSP"};
  app.require_subcommand(1);

  // generate
  GeneratorParams gen;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Generate a random instance in the native format");
  add_generator_options(generate, gen);
  generate->add_option("-o,--output", gen_out, "Output file (default stdout)");

  // solve
  GeneratorParams solve_gen;
  std::string solve_in, solve_impl = "hybrid";
  SearchOptions search;
  search.iterations = 100'000;
  HybridConfig solve_hybrid;
  bool print_starts = false;
  auto* solve = app.add_subcommand("solve", "Run the metaheuristic with one implementation");
  solve->add_option("instance", solve_in, "PSPLIB or native instance file (default: generate one)");
  add_generator_options(solve, solve_gen);
  add_hybrid_options(solve, solve_hybrid);
  solve->add_option("--impl", solve_impl, "conv, data, nbf, bf or hybrid")->capture_default_str();
  solve->add_option("--iterations", search.iterations, "Metaheuristic iterations")->capture_default_str();
  solve->add_option("--seed", search.seed, "Search seed")->capture_default_str();
  solve->add_option("--warmup", search.warmup, "Decodes excluded from timing")->capture_default_str();
  solve->add_flag("--starts", print_starts, "Print the best schedule's start slots");

  // sweep
  SweepConfig sweep_cfg;
  sweep_cfg.instances_per_point = 5;
  sweep_cfg.iterations = 100'000;
  std::string axis_name = "num_jobs", impl_list = "conv,nbf,bf,hybrid", mode = "timing", sweep_out;
  std::vector<double> values;
  auto* sweep = app.add_subcommand("sweep", "Benchmark implementations along one generator axis");
  add_generator_options(sweep, sweep_cfg.base);
  add_hybrid_options(sweep, sweep_cfg.hybrid);
  sweep->add_option("--axis", axis_name, "num_jobs, num_resources, resource_strength, resource_factor, "
                                         "network_complexity or max_duration")
      ->capture_default_str();
  sweep->add_option("--values", values, "Axis values (default: a built-in range)")->delimiter(',');
  sweep->add_option("--instances", sweep_cfg.instances_per_point, "Instances per axis value")->capture_default_str();
  sweep->add_option("--iterations", sweep_cfg.iterations, "Iterations per instance")->capture_default_str();
  sweep->add_option("--impls", impl_list, "Comma-separated implementations")->capture_default_str();
  sweep->add_option("--seed", sweep_cfg.seed, "Base seed for instances and searches")->capture_default_str();
  sweep->add_option("--warmup", sweep_cfg.warmup, "Decodes excluded from timing")->capture_default_str();
  sweep->add_option("--mode", mode, "timing (single thread) or validation")
      ->check(CLI::IsMember({"timing", "validation"}))
      ->capture_default_str();
  sweep->add_option("--threads", sweep_cfg.threads, "Threads in validation mode")->capture_default_str();
  sweep->add_option("-o,--output", sweep_out, "CSV output file (default stdout)");

  // trace
  GeneratorParams trace_gen;
  std::string trace_in, trace_out;
  TraceConfig trace_cfg;
  bool forced = false;
  auto* trace = app.add_subcommand("trace", "Record the hybrid controller's choices during one run");
  trace->add_option("instance", trace_in, "Instance file (default: generate one)");
  add_generator_options(trace, trace_gen);
  add_hybrid_options(trace, trace_cfg.hybrid);
  trace->add_option("--iterations", trace_cfg.iterations, "Metaheuristic iterations")->capture_default_str();
  trace->add_option("--seed", trace_cfg.seed, "Search seed")->capture_default_str();
  trace->add_flag("--forced", forced, "Keep the first commitment for the whole run");
  trace->add_option("-o,--output", trace_out, "Trace output file (default stdout)");

  // selftest
  int st_instances = 20, st_permutations = 20;
  std::uint64_t st_seed = 1;
  auto* self = app.add_subcommand("selftest", "Check that all implementations agree on random inputs");
  self->add_option("--instances", st_instances, "Random instances")->capture_default_str();
  self->add_option("--permutations", st_permutations, "Permutations per instance")->capture_default_str();
  self->add_option("--seed", st_seed, "Base seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      std::ofstream file;
      open_output(gen_out, file) << write_native(generate_instance(gen));
    } else if (*solve) {
      const Instance instance = instance_from(solve_in, solve_gen);
      auto decoder = make_decoder(parse_implementation(solve_impl), instance, solve_hybrid);
      const SearchResult result = run_metaheuristic(instance, *decoder, search);
      std::cout << "impl " << to_string(decoder->implementation()) << "\n"
                << "jobs " << instance.num_jobs() << "\n"
                << "best_makespan " << result.best.makespan << "\n"
                << "iterations " << result.iterations << "\n"
                << "decode_seconds " << result.decode_seconds << "\n";
      if (const auto* hybrid = dynamic_cast<const HybridScheduler*>(decoder.get())) {
        for (Implementation impl : {Implementation::Data, Implementation::Nbf, Implementation::Bf}) {
          std::cout << "executions_" << to_string(impl) << ' ' << hybrid->executions(impl) << '\n';
        }
      }
      if (print_starts) {
        std::cout << "starts";
        for (int s : result.best.starts) std::cout << ' ' << s;
        std::cout << '\n';
      }
    } else if (*sweep) {
      sweep_cfg.axis = parse_axis(axis_name);
      sweep_cfg.values = values.empty() ? default_axis_values(sweep_cfg.axis) : values;
      sweep_cfg.implementations = parse_impls(impl_list);
      sweep_cfg.timing = mode == "timing";
      const auto records = run_sweep(sweep_cfg, [](const std::string& m) { std::cerr << "warning: " << m << '\n'; });
      std::ofstream file;
      write_csv(open_output(sweep_out, file), records, &sweep_cfg);
    } else if (*trace) {
      const Instance instance = instance_from(trace_in, trace_gen);
      trace_cfg.hybrid.adaptive = !forced;
      const AdaptiveTrace result = run_adaptive_trace(instance, trace_cfg);
      std::ofstream file;
      write_trace(open_output(trace_out, file), result.records);
      std::cerr << "initial " << (result.initial ? std::string(to_string(*result.initial)) : "none") << "\n"
                << "commitments " << result.commitments.size() << " switches " << result.switches << "\n"
                << "hybrid_seconds " << result.hybrid_seconds << " initial_only_seconds " << result.initial_seconds
                << "\n"
                << "ratio " << result.ratio << '\n';
    } else if (*self) {
      return selftest(st_instances, st_permutations, st_seed);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
