#pragma once

// Exact reference implementations for the Bloom structure and the sign test,
// written from the definitions with no shared code paths.

#include <cstdint>
#include <span>
#include <vector>

#include "ssgs/bloom.hpp"
#include "ssgs/hybrid.hpp"
#include "ssgs/rng.hpp"

namespace testing {

using ssgs::BloomStructure;
using ssgs::Distribution;
using ssgs::LevelBit;
using ssgs::Rng;

inline bool fully_sufficient(std::span<const int> demand, std::span<const int> available) {
  for (std::size_t r = 0; r < demand.size(); ++r) {
    if (available[r] < demand[r]) return false;
  }
  return true;
}

/// Bit i set iff value[r_i] >= k_i, straight from the definition.
inline std::uint32_t reference_word(const BloomStructure& s, std::span<const int> values) {
  std::uint32_t w = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (values[s.bits()[i].resource] >= s.bits()[i].level) w |= 1u << i;
  }
  return w;
}

inline BloomStructure random_structure(Rng& rng, const std::vector<int>& caps) {
  std::vector<LevelBit> bits;
  for (int r = 0; r < static_cast<int>(caps.size()); ++r) {
    for (int k = 1; k <= caps[r]; ++k) {
      if (rng.below(3) != 0) bits.push_back({r, k});
    }
  }
  while (bits.size() > 32) bits.erase(bits.begin() + static_cast<long>(rng.below(bits.size())));
  return BloomStructure(bits, caps);
}

inline std::vector<int> random_vector(Rng& rng, const std::vector<int>& caps) {
  std::vector<int> v(caps.size());
  for (std::size_t r = 0; r < caps.size(); ++r) v[r] = rng.between(0, caps[r]);
  return v;
}

/// Per-step exhaustive argmin over the retained bits; ties to smallest (r, k).
/// Missing neighbours default to q = 0 and m = c_r + 1.
inline std::vector<LevelBit> oracle_deletions(const std::vector<Distribution>& D, const std::vector<Distribution>& E,
                                              const std::vector<int>& caps, int limit) {
  std::vector<std::vector<bool>> kept(caps.size());
  int total = 0;
  for (std::size_t r = 0; r < caps.size(); ++r) {
    kept[r].assign(caps[r] + 2, true);
    total += caps[r];
  }
  std::vector<LevelBit> out;
  while (total > limit) {
    double best = 0;
    LevelBit arg{-1, -1};
    for (int r = 0; r < static_cast<int>(caps.size()); ++r) {
      for (int i = 1; i <= caps[r]; ++i) {
        if (!kept[r][i]) continue;
        int q = i - 1;
        while (q > 0 && !kept[r][q]) --q;
        int m = i + 1;
        while (m <= caps[r] && !kept[r][m]) ++m;
        double jobs = 0, slots = 0;
        for (int k = i; k <= m - 1; ++k) jobs += D[r][k];
        for (int k = q; k <= i - 1; ++k) slots += E[r][k];
        const double cost = jobs * slots;
        if (arg.resource < 0 || cost < best) {
          best = cost;
          arg = {r, i};
        }
      }
    }
    kept[arg.resource][arg.level] = false;
    out.push_back(arg);
    --total;
  }
  return out;
}

/// Random distribution over 0..c with probabilities in multiples of 1/16, so
/// every cost is exact in double arithmetic.
inline Distribution dyadic(Rng& rng, int c) {
  Distribution d(c + 1, 0.0);
  for (int u = 0; u < 16; ++u) d[rng.between(0, c)] += 1.0 / 16;
  return d;
}

/// Exact two-sided binomial test at alpha = 0.05 in integer arithmetic:
/// significant iff 2 * min_tail / 2^n < 1/20, i.e. 40 * min_tail < 2^n.
inline ssgs::SignVerdict oracle_verdict(int wins, int trials) {
  using ssgs::SignVerdict;
  if (trials == 0) return SignVerdict::Inconclusive;
  using u128 = unsigned __int128;
  std::vector<u128> row(trials + 1, 0);
  row[0] = 1;
  for (int n = 1; n <= trials; ++n) {
    for (int k = n; k > 0; --k) row[k] += row[k - 1];
  }
  u128 below = 0, above = 0;
  for (int k = 0; k <= trials; ++k) {
    if (k <= wins) below += row[k];
    if (k >= wins) above += row[k];
  }
  const u128 tail = below < above ? below : above;
  const u128 total = u128{1} << trials;
  if (!(tail * 40 < total)) return SignVerdict::Inconclusive;
  return 2 * wins > trials ? SignVerdict::BfFaster : SignVerdict::NbfFaster;
}

}  // namespace testing
