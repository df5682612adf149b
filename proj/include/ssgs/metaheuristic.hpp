#pragma once

// Simplified simulated annealing over job permutations: move one random job
// to a random position that keeps the order precedence-feasible; keep the
// new order if it is not worse, otherwise keep it on a fair coin flip.

#include <cstdint>
#include <span>
#include <vector>

#include "ssgs/decoders.hpp"
#include "ssgs/instance.hpp"
#include "ssgs/rng.hpp"

namespace ssgs {

/// Positions are 0-based indices into the permutation.
struct PositionInterval {
  int lo;
  int hi;
};

/// Range of positions job can be moved to (remove, then reinsert) without
/// breaking precedence. order must be precedence-feasible.
PositionInterval feasible_positions(const Instance& instance, std::span<const int> order, int job);
/// Same, with position_of[j] = index of j in the order.
PositionInterval feasible_positions_indexed(const Instance& instance, std::span<const int> position_of, int job);

/// Removes the element at from and reinserts it so that it ends up at to.
void move_element(std::vector<int>& order, int from, int to);

/// Picks a job with job_rng and a target position with position_rng.
Permutation propose_move(const Instance& instance, std::span<const int> current, Rng& job_rng, Rng& position_rng);

bool accept(int old_makespan, int new_makespan, Rng& coin_rng);

struct SearchOptions {
  std::int64_t iterations = 1'000'000;  // decodes, including the initial order
  std::uint64_t seed = 1;
  std::int64_t warmup = 100;            // decodes excluded from decode_seconds
  bool record_candidates = false;
};

struct SearchResult {
  Schedule best;
  Permutation best_order;
  std::int64_t iterations = 0;
  double decode_seconds = 0.0;
  std::int64_t timed_decodes = 0;
  /// (iteration, best makespan) at the start and on each improvement.
  std::vector<std::pair<std::int64_t, int>> trajectory;
  /// Makespan of every decoded order, when record_candidates is set.
  std::vector<int> candidate_makespans;
  /// Final makespan of the current (accepted) order.
  int current_makespan = 0;
};

/// Same seed, same instance: the same sequence of orders with any decoder.
SearchResult run_metaheuristic(const Instance& instance, Decoder& decoder, const SearchOptions& options);

}  // namespace ssgs
