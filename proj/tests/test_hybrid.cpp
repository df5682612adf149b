#include <functional>

#include "doctest.h"
#include "ssgs/hybrid.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace ssgs;
using testing::oracle_verdict;

namespace {

/// Clock that advances by a scripted cost each time an execution ends.
struct ScriptedClock {
  const HybridScheduler* scheduler = nullptr;
  std::function<std::int64_t(Implementation, std::int64_t pair)> cost;
  std::int64_t now = 0;
  std::int64_t calls = 0;
  std::int64_t nbf_seen = 0;
  std::int64_t bf_seen = 0;

  std::int64_t tick() {
    if (calls++ % 2 == 1) {
      const Implementation impl = scheduler->running();
      const std::int64_t index = impl == Implementation::Nbf ? nbf_seen++ : impl == Implementation::Bf ? bf_seen++ : 0;
      now += cost(impl, index);
    }
    return now;
  }
};

Instance small_instance(std::uint64_t seed = 3) {
  GeneratorParams g;
  g.num_jobs = 12;
  g.num_resources = 3;
  g.seed = seed;
  return generate_instance(g);
}

struct Harness {
  Instance instance;
  ScriptedClock clock;
  HybridScheduler hybrid;
  Harness(HybridConfig config, std::function<std::int64_t(Implementation, std::int64_t)> cost,
          std::uint64_t seed = 3)
      : instance(small_instance(seed)), hybrid(instance, config, [this] { return clock.tick(); }) {
    clock.scheduler = &hybrid;
    clock.cost = std::move(cost);
  }
  Schedule step(std::uint64_t seed) { return hybrid.decode(random_topological_order(instance, seed)); }
};

std::int64_t bf_fast(Implementation impl, std::int64_t) { return impl == Implementation::Bf ? 10 : 20; }
std::int64_t nbf_fast(Implementation impl, std::int64_t) { return impl == Implementation::Bf ? 20 : 10; }

}  // namespace

TEST_CASE("sign test anchors") {
  auto r = sign_test(3, 6);
  CHECK(r.verdict == SignVerdict::Inconclusive);
  CHECK(r.p_value == doctest::Approx(1.0));
  r = sign_test(0, 6);
  CHECK(r.verdict == SignVerdict::NbfFaster);
  CHECK(r.p_value == doctest::Approx(0.03125));
  r = sign_test(6, 6);
  CHECK(r.verdict == SignVerdict::BfFaster);
  r = sign_test(1, 6);
  CHECK(r.verdict == SignVerdict::Inconclusive);
  CHECK(r.p_value == doctest::Approx(14.0 / 64));
  r = sign_test(0, 0);
  CHECK(r.verdict == SignVerdict::Inconclusive);
  CHECK(r.p_value == 1.0);
  CHECK(sign_test(0, 5).verdict == SignVerdict::Inconclusive);  // p = 1/16
  CHECK_THROWS_AS(sign_test(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(sign_test(-1, 3), std::invalid_argument);
}

TEST_CASE("sign test agrees with the exact oracle up to 100 trials") {
  for (int n = 0; n <= 100; ++n) {
    for (int w = 0; w <= n; ++w) {
      INFO("wins=" << w << " trials=" << n);
      CHECK(sign_test(w, n).verdict == oracle_verdict(w, n));
    }
  }
  CHECK(sign_test(10000, 20000).verdict == SignVerdict::Inconclusive);
  CHECK(sign_test(9000, 20000).verdict == SignVerdict::NbfFaster);
}

TEST_CASE("first period: data, alternation, commitment") {
  SUBCASE("BF faster") {
    Harness h({}, bf_fast);
    CHECK(h.hybrid.running() == Implementation::Data);
    h.step(1);
    CHECK(h.hybrid.state().phase == Phase::Alternating);
    CHECK(h.hybrid.executions(Implementation::Data) == 1);
    for (int i = 0; i < 11; ++i) {
      CHECK(h.hybrid.running() == (i % 2 == 0 ? Implementation::Bf : Implementation::Nbf));
      h.step(2 + i);
      CHECK(h.hybrid.state().phase == Phase::Alternating);
    }
    h.step(100);  // sixth pair: 6/6, p = 1/32
    CHECK(h.hybrid.state().phase == Phase::Committed);
    CHECK(h.hybrid.state().committed == Implementation::Bf);
    CHECK(h.hybrid.state().wins == 6);
    CHECK(h.hybrid.state().trials == 6);
    for (int i = 0; i < 20; ++i) h.step(200 + i);
    CHECK(h.hybrid.executions(Implementation::Bf) == 26);
    CHECK(h.hybrid.executions(Implementation::Nbf) == 6);
  }
  SUBCASE("NBF faster") {
    Harness h({}, nbf_fast);
    for (int i = 0; i < 13; ++i) h.step(i);
    CHECK(h.hybrid.state().committed == Implementation::Nbf);
    CHECK(h.hybrid.state().phase == Phase::Committed);
    CHECK(h.hybrid.state().wins == 0);
  }
  SUBCASE("equal timings are ties, which favour NBF") {
    Harness h({}, [](Implementation, std::int64_t) { return 7; });
    for (int i = 0; i < 13; ++i) h.step(i);
    CHECK(h.hybrid.state().phase == Phase::Committed);
    CHECK(h.hybrid.state().committed == Implementation::Nbf);
    CHECK(h.hybrid.state().trials == 6);
  }
  SUBCASE("even split runs to the cap and falls back to NBF") {
    Harness h({}, [](Implementation impl, std::int64_t pair) {
      const bool bf_wins = pair % 2 == 0;
      return impl == Implementation::Bf ? (bf_wins ? 5 : 15) : 10;
    });
    int steps = 0;
    while (h.hybrid.state().phase != Phase::Committed) {
      h.step(steps++);
      REQUIRE(h.hybrid.state().alternation_executions <= 100);
    }
    CHECK(steps == 101);
    CHECK(h.hybrid.state().alternation_executions == 100);
    CHECK(h.hybrid.state().trials == 50);
    CHECK(h.hybrid.state().wins == 25);
    CHECK(h.hybrid.state().committed == Implementation::Nbf);
  }
  SUBCASE("majority at the cap without significance") {
    Harness h({}, [](Implementation impl, std::int64_t pair) {
      const bool bf_wins = pair % 2 == 0 || pair == 49;
      return impl == Implementation::Bf ? (bf_wins ? 5 : 15) : 10;
    });
    for (int i = 0; i < 101; ++i) h.step(i);
    CHECK(h.hybrid.state().phase == Phase::Committed);
    CHECK(h.hybrid.state().wins == 26);
    CHECK(h.hybrid.state().committed == Implementation::Bf);
  }
  SUBCASE("backwards clock reading counts as a tie") {
    Harness h({}, [](Implementation impl, std::int64_t) { return impl == Implementation::Bf ? -5 : 10; });
    for (int i = 0; i < 13; ++i) h.step(i);
    CHECK(h.hybrid.state().wins == 0);
    CHECK(h.hybrid.state().committed == Implementation::Nbf);
  }
  SUBCASE("odd and tiny caps") {
    Harness odd({.alternation_cap = 5}, [](Implementation, std::int64_t) { return 1; });
    for (int i = 0; i < 5; ++i) odd.step(i);
    CHECK(odd.hybrid.state().phase == Phase::Committed);
    CHECK(odd.hybrid.state().alternation_executions == 4);
    Harness none({.alternation_cap = 0}, bf_fast);
    none.step(1);
    CHECK(none.hybrid.state().phase == Phase::Committed);
    CHECK(none.hybrid.state().committed == Implementation::Nbf);
  }
}

TEST_CASE("restart every period") {
  Harness h({}, bf_fast);
  const HybridState fresh;
  for (int i = 0; i < 9999; ++i) h.step(i);
  CHECK(h.hybrid.state().execution_count == 9999);
  CHECK(h.hybrid.context().learned());
  h.step(9999);
  CHECK(h.hybrid.restarts() == 1);
  CHECK(h.hybrid.state() == fresh);
  CHECK_FALSE(h.hybrid.context().learned());
  CHECK(h.hybrid.context().stats().observations(0) == 0);
  CHECK(h.hybrid.running() == Implementation::Data);
  CHECK(h.hybrid.executions(Implementation::Data) == 1);
  h.step(10000);
  CHECK(h.hybrid.executions(Implementation::Data) == 2);
  for (int i = 10001; i < 20000; ++i) h.step(i);
  CHECK(h.hybrid.executions(Implementation::Data) == 2);
  CHECK(h.hybrid.restarts() == 2);
  CHECK(h.hybrid.commitments().size() == 2);
}

TEST_CASE("transparency across periods") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorParams g;
    g.num_jobs = 30;
    g.seed = seed;
    g.resource_strength = 0.1 * static_cast<double>(seed % 4);
    const Instance inst = generate_instance(g);
    HybridScheduler hybrid(inst, {.period_length = 37, .alternation_cap = 10});
    auto conv = make_fixed_decoder(Implementation::Conv, inst);
    for (std::uint64_t k = 0; k < 200; ++k) {
      const Permutation order = random_topological_order(inst, seed * 1000 + k);
      CHECK(hybrid.decode(order) == conv->decode(order));
    }
    CHECK(hybrid.executions(Implementation::Data) == 6);
    CHECK(hybrid.context().availability().is_pristine());
  }
}

TEST_CASE("forced commitment keeps one implementation") {
  Harness h({.period_length = 50, .adaptive = false, .record_trace = true}, bf_fast);
  for (int i = 0; i < 400; ++i) h.step(i);
  CHECK(h.hybrid.executions(Implementation::Data) == 1);
  CHECK(h.hybrid.commitments().size() == 1);
  const auto trace = h.hybrid.trace();
  REQUIRE(trace.size() == 400);
  CHECK(trace[0].impl == Implementation::Data);
  for (std::size_t i = 13; i < trace.size(); ++i) CHECK(trace[i].impl == Implementation::Bf);
  for (std::size_t i = 0; i < trace.size(); ++i) CHECK(trace[i].index == static_cast<std::int64_t>(i));
}

TEST_CASE("trace records scripted durations") {
  Harness h({.record_trace = true}, bf_fast);
  for (int i = 0; i < 5; ++i) h.step(i);
  const auto trace = h.hybrid.trace();
  REQUIRE(trace.size() == 5);
  CHECK(trace[1].impl == Implementation::Bf);
  CHECK(trace[1].nanos == 10);
  CHECK(trace[2].impl == Implementation::Nbf);
  CHECK(trace[2].nanos == 20);
}

TEST_CASE("invalid order leaves the controller unchanged") {
  Harness h({}, bf_fast);
  h.step(1);
  const HybridState before = h.hybrid.state();
  const Permutation bad(h.instance.num_jobs(), 0);
  CHECK_THROWS_AS(h.hybrid.decode(bad), InstanceError);
  CHECK(h.hybrid.state() == before);
  CHECK(h.hybrid.context().availability().is_pristine());
}

TEST_CASE("make_decoder and configuration checks") {
  const Instance inst = small_instance();
  CHECK(make_decoder(Implementation::Hybrid, inst)->implementation() == Implementation::Hybrid);
  CHECK(make_decoder(Implementation::Bf, inst)->implementation() == Implementation::Bf);
  CHECK_THROWS_AS(make_fixed_decoder(Implementation::Hybrid, inst), std::invalid_argument);
  CHECK_THROWS_AS(HybridScheduler(inst, {.period_length = 0}), std::invalid_argument);
  CHECK_THROWS_AS(HybridScheduler(inst, {.alpha = 0}), std::invalid_argument);
  CHECK(parse_implementation("nbf") == Implementation::Nbf);
  CHECK(parse_implementation("HYBRID") == Implementation::Hybrid);
  CHECK_THROWS_AS(parse_implementation("fast"), std::invalid_argument);
}
