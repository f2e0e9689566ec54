#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "choreo/baselines.hpp"
#include "choreo/error.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace choreo;
using A = Action;

TEST_CASE("names round-trip") {
  for (BaselineKind k : kAllBaselines) CHECK(baseline_from_string(to_string(k)) == k);
  CHECK(to_string(BaselineKind::UnsyncRandom) == "unsync-random");
  CHECK_FALSE(baseline_from_string("random").has_value());
  CHECK(is_random(BaselineKind::SyncRandom));
  CHECK_FALSE(is_random(BaselineKind::UnsyncSeq));
  CHECK(is_synced(BaselineKind::SyncSeq));
  CHECK_FALSE(is_synced(BaselineKind::UnsyncRandom));
}

TEST_CASE("the generator is the standard 64-bit Mersenne Twister") {
  BaselineRng rng;  // default seed 5489
  for (int i = 0; i < 9999; ++i) rng();
  CHECK(rng() == 9981545732273789042ULL);
  CHECK(kBaselineRngName == "mt19937_64");
}

TEST_CASE("allowed actions exclude out-of-bounds moves") {
  A out[3];
  CHECK(allowed_actions(0, 20, out) == 2);
  CHECK(out[0] == A::Stay);
  CHECK(out[1] == A::Up);
  CHECK(allowed_actions(19, 20, out) == 2);
  CHECK(out[0] == A::Down);
  CHECK(out[1] == A::Stay);
  CHECK(allowed_actions(7, 20, out) == 3);
}

TEST_CASE("specified examples") {
  CHECK(generate_baseline(BaselineKind::SyncSeq, {20, 4, 10}, {0, 2}).states == std::vector{11, 11, 12, 12});
  CHECK(generate_baseline(BaselineKind::UnsyncSeq, {3, 5, 1}, {}).states == std::vector{2, 1, 0, 1, 2});
  auto still = generate_baseline(BaselineKind::SyncRandom, {20, 30, 10}, {}, 42);
  CHECK(std::all_of(still.actions.begin(), still.actions.end(), [](A a) { return a == A::Stay; }));
  CHECK(std::all_of(still.states.begin(), still.states.end(), [](int s) { return s == 10; }));
}

TEST_CASE("uniform draws at an interior state are balanced") {
  BaselineRng rng(2024);
  std::size_t counts[3] = {0, 0, 0};
  A choices[3];
  const std::size_t n_allowed = allowed_actions(10, 20, choices);
  REQUIRE(n_allowed == 3);
  for (int i = 0; i < 10000; ++i) ++counts[uniform_below(rng, n_allowed)];
  for (std::size_t c : counts) CHECK(std::abs(static_cast<double>(c) / 10000.0 - 1.0 / 3.0) <= 0.02);

  // The same through the generator: first step of many seeds from the middle.
  std::size_t firsts[3] = {0, 0, 0};
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    auto seq = generate_baseline(BaselineKind::UnsyncRandom, {20, 1, 10}, {}, seed);
    ++firsts[static_cast<int>(seq.actions[0]) + 1];
  }
  for (std::size_t c : firsts) CHECK(std::abs(static_cast<double>(c) / 10000.0 - 1.0 / 3.0) <= 0.02);
}

TEST_CASE("uniform_below rejects a zero bound and stays below the bound") {
  BaselineRng rng(1);
  CHECK_THROWS_AS(uniform_below(rng, 0), Error);
  for (int i = 0; i < 1000; ++i) CHECK(uniform_below(rng, 7) < 7);
}

TEST_CASE("baseline properties over random configurations") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    int k = 2 + static_cast<int>(rng() % 25);
    int n = 1 + static_cast<int>(rng() % 120);
    int start = static_cast<int>(rng() % k);
    AgentConfig agent{k, n, start};
    std::set<std::size_t> beats;
    for (int t = 0; t < n; ++t)
      if (rng() % 3 == 0) beats.insert(static_cast<std::size_t>(t));
    std::uint64_t seed = rng();
    for (BaselineKind kind : kAllBaselines) {
      CAPTURE(to_string(kind));
      auto seq = generate_baseline(kind, agent, beats, seed);
      REQUIRE(seq.size() == static_cast<std::size_t>(n));
      CHECK(seq.states == oracle::states_for(start, k, seq.actions));
      CHECK(generate_baseline(kind, agent, beats, seed) == seq);

      int prev = start;
      for (int t = 0; t < n; ++t) {
        // Baselines never push against a boundary.
        CHECK(seq.states[t] == prev + static_cast<int>(seq.actions[t]));
        if (is_synced(kind) && !beats.contains(static_cast<std::size_t>(t))) CHECK(seq.actions[t] == A::Stay);
        if (!is_random(kind) && (!is_synced(kind) || beats.contains(static_cast<std::size_t>(t))))
          CHECK(seq.actions[t] != A::Stay);
        prev = seq.states[t];
      }
    }
  }
}

TEST_CASE("unsynced sequential walk visits both extremes") {
  for (int k = 2; k <= 25; ++k) {
    for (int start = 0; start < k; ++start) {
      int n = 2 * (k - 1);
      auto seq = generate_baseline(BaselineKind::UnsyncSeq, {k, n, start}, {});
      CHECK(std::find(seq.states.begin(), seq.states.end(), 0) != seq.states.end());
      CHECK(std::find(seq.states.begin(), seq.states.end(), k - 1) != seq.states.end());
    }
  }
}

TEST_CASE("different seeds give different random dances") {
  auto a = generate_baseline(BaselineKind::UnsyncRandom, {20, 50, 10}, {}, 1);
  auto b = generate_baseline(BaselineKind::UnsyncRandom, {20, 50, 10}, {}, 2);
  CHECK(a.actions != b.actions);
}
