#include "ssgs/metaheuristic.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace ssgs {

namespace {

enum StreamTag : std::uint64_t { kInitial = 1, kJobChoice = 2, kPositionChoice = 3, kAcceptCoin = 4 };

void index_positions(std::span<const int> order, std::vector<int>& position_of) {
  position_of.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) position_of[order[i]] = static_cast<int>(i);
}

}  // namespace

PositionInterval feasible_positions_indexed(const Instance& instance, std::span<const int> position_of, int job) {
  int lo = 0;
  int hi = instance.num_jobs() - 1;
  for (int p : instance.job(job).predecessors) lo = std::max(lo, position_of[p] + 1);
  for (int s : instance.successors(job)) hi = std::min(hi, position_of[s] - 1);
  return {lo, hi};
}

PositionInterval feasible_positions(const Instance& instance, std::span<const int> order, int job) {
  if (!is_precedence_feasible(instance, order)) throw std::invalid_argument("feasible_positions: infeasible order");
  if (job < 0 || job >= instance.num_jobs()) throw std::out_of_range("feasible_positions: job out of range");
  std::vector<int> position_of;
  index_positions(order, position_of);
  return feasible_positions_indexed(instance, position_of, job);
}

void move_element(std::vector<int>& order, int from, int to) {
  if (from < to) {
    std::rotate(order.begin() + from, order.begin() + from + 1, order.begin() + to + 1);
  } else if (to < from) {
    std::rotate(order.begin() + to, order.begin() + from, order.begin() + from + 1);
  }
}

Permutation propose_move(const Instance& instance, std::span<const int> current, Rng& job_rng, Rng& position_rng) {
  Permutation next(current.begin(), current.end());
  if (next.empty()) return next;
  std::vector<int> position_of;
  index_positions(current, position_of);
  const int job = static_cast<int>(job_rng.below(next.size()));
  const auto [lo, hi] = feasible_positions_indexed(instance, position_of, job);
  move_element(next, position_of[job], position_rng.between(lo, hi));
  return next;
}

bool accept(int old_makespan, int new_makespan, Rng& coin_rng) {
  if (new_makespan <= old_makespan) return true;
  return coin_rng.coin();
}

SearchResult run_metaheuristic(const Instance& instance, Decoder& decoder, const SearchOptions& options) {
  if (options.iterations < 1) throw std::invalid_argument("run_metaheuristic: iterations must be at least 1");
  if (options.warmup < 0) throw std::invalid_argument("run_metaheuristic: warmup must be non-negative");

  using Clock = std::chrono::steady_clock;
  Rng job_rng = Rng::substream(options.seed, kJobChoice);
  Rng position_rng = Rng::substream(options.seed, kPositionChoice);
  Rng coin_rng = Rng::substream(options.seed, kAcceptCoin);

  SearchResult result;
  Clock::duration decode_time{};
  Schedule decoded;
  auto decode = [&](std::span<const int> order, std::int64_t iteration) {
    const auto begin = Clock::now();
    decoder.decode(order, decoded);
    const auto end = Clock::now();
    if (iteration >= options.warmup) {
      decode_time += end - begin;
      ++result.timed_decodes;
    }
    if (options.record_candidates) result.candidate_makespans.push_back(decoded.makespan);
  };

  Permutation current = random_topological_order(instance, Rng::substream(options.seed, kInitial).next());
  std::vector<int> position_of;
  index_positions(current, position_of);
  decode(current, 0);
  int current_makespan = decoded.makespan;
  result.best = decoded;
  result.best_order = current;
  result.trajectory.emplace_back(0, current_makespan);

  const int n = instance.num_jobs();
  Permutation candidate;
  for (std::int64_t it = 1; it < options.iterations; ++it) {
    candidate = current;
    if (n > 0) {
      const int job = static_cast<int>(job_rng.below(static_cast<std::uint64_t>(n)));
      const auto [lo, hi] = feasible_positions_indexed(instance, position_of, job);
      move_element(candidate, position_of[job], position_rng.between(lo, hi));
    }
    decode(candidate, it);
    if (!accept(current_makespan, decoded.makespan, coin_rng)) continue;
    current.swap(candidate);
    index_positions(current, position_of);
    current_makespan = decoded.makespan;
    if (current_makespan < result.best.makespan) {
      result.best = decoded;
      result.best_order = current;
      result.trajectory.emplace_back(it, current_makespan);
    }
  }
  result.iterations = options.iterations;
  result.current_makespan = current_makespan;
  result.decode_seconds = std::chrono::duration<double>(decode_time).count();
  return result;
}

}  // namespace ssgs
