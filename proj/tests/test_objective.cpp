#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "choreo/error.hpp"
#include "choreo/objective.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace choreo;
using A = Action;

namespace {

std::optional<double> r(std::vector<double> x, std::vector<double> y) { return pearson(x, y); }

MusicMatrix as_music(SquareMatrix values) {
  MusicMatrix m;
  m.values = std::move(values);
  return m;
}

}  // namespace

TEST_CASE("pearson examples and errors") {
  CHECK(*r({1, 2, 3}, {1, 2, 3}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*r({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK_FALSE(r({1, 1, 1}, {4, 5, 9}).has_value());
  CHECK_FALSE(r({4, 5, 9}, {2, 2, 2}).has_value());
  CHECK_THROWS_AS(r({1, 2}, {1, 2, 3}), Error);
  CHECK_THROWS_AS(r({1}, {1}), Error);
}

TEST_CASE("pearson agrees with the reference and stays in [-1, 1]") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 2 + rng() % 300;
    std::vector<double> x(n), y(n);
    double mix = std::uniform_real_distribution<double>(-1, 1)(rng);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = g(rng);
      y[i] = mix * x[i] + g(rng) * 0.3;
    }
    auto got = pearson(x, y);
    auto ref = oracle::pearson(x, y);
    REQUIRE(got.has_value());
    REQUIRE(ref.has_value());
    CHECK(std::abs(*got - *ref) <= 1e-12);
    CHECK(*got >= -1.0);
    CHECK(*got <= 1.0);
  }
}

TEST_CASE("music window size") {
  CHECK(music_window_size(100, 100, 431) == 431);
  CHECK(music_window_size(5, 100, 431) == 22);    // 21.55 rounds to 22
  CHECK(music_window_size(1, 100, 50) == 2);      // floor of 2
  CHECK(music_window_size(10, 20, 10) == 10);     // never below L
  CHECK(music_window_size(3, 10, 5) == 3);        // round(1.5) = 2, raised to L
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 1 + rng() % 120;
    std::size_t l = 1 + rng() % n;
    std::size_t m = n + rng() % 500;
    CHECK(music_window_size(l, n, m) == oracle::window_size(l, n, m));
  }
}

TEST_CASE("alignment score matches the reference within 1e-12") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 30;
    std::size_t m = std::max<std::size_t>(2, n + rng() % 60);
    auto music = fixtures::random_music(rng, m);
    auto seq = fixtures::random_sequence(rng, 2 + static_cast<int>(rng() % 25), n);
    std::size_t l = 1 + rng() % n;
    for (Representation rep : kAllRepresentations) {
      auto got = alignment_score(music, seq, rep, l);
      auto ref = oracle::alignment(music, seq, rep, l);
      CHECK(got.l_steps == l);
      CHECK(got.m_frames == oracle::window_size(l, n, m));
      REQUIRE(got.defined() == ref.has_value());
      if (ref) CHECK(std::abs(*got.pearson - *ref) <= 1e-12);
    }
  }
}

TEST_CASE("ten random steps against a 20-frame music matrix") {
  std::mt19937_64 rng(0);
  auto music = fixtures::random_music(rng, 20);
  auto seq = fixtures::random_sequence(rng, 20, 10);
  for (Representation rep : kAllRepresentations) {
    auto got = alignment_score(music, seq, rep);
    auto ref = oracle::alignment(music, seq, rep, 10);
    REQUIRE(ref.has_value());
    CHECK(std::abs(*got.pearson - *ref) <= 1e-12);
  }
}

TEST_CASE("music built from the upsampled dance scores 1") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng() % 25;
    auto seq = fixtures::random_sequence(rng, 20, n);
    for (Representation rep : kAllRepresentations) {
      auto d = dance_matrix(seq, rep, n);
      std::size_t m = n + rng() % 100;
      auto music = as_music(upsample_nearest(d, m));
      auto score = alignment_score(music, seq, rep);
      if (!score.defined()) continue;  // constant dance
      CHECK(*score.pearson == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("all-Stay under the action representation is undefined") {
  std::mt19937_64 rng(4);
  auto music = fixtures::random_music(rng, 60);
  std::vector<A> stays(25, A::Stay);
  auto seq = apply_actions({20, 25, 10}, stays);
  auto score = alignment_score(music, seq, Representation::Action);
  CHECK_FALSE(score.defined());
  CHECK_FALSE(alignment_score(music, seq, Representation::State).defined());
  CHECK_FALSE(alignment_score(music, seq, Representation::StateAction).defined());
  CHECK(score_better(0.0, score.pearson));
  CHECK(score_better(-1.0, score.pearson));
  CHECK_FALSE(score_better(score.pearson, -1.0));
  CHECK_FALSE(score_better(score.pearson, std::nullopt));
}

TEST_CASE("scores are invariant to positive affine changes of the music") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + rng() % 20;
    std::size_t m = n + rng() % 40;
    auto music = fixtures::random_music(rng, m);
    double a = std::uniform_real_distribution<double>(0.01, 50.0)(rng);
    double b = std::uniform_real_distribution<double>(-10.0, 10.0)(rng);
    MusicMatrix scaled = music;
    for (double& v : scaled.values.data()) v = a * v + b;
    auto seq = fixtures::random_sequence(rng, 20, n);
    for (Representation rep : kAllRepresentations) {
      auto s1 = alignment_score(music, seq, rep);
      auto s2 = alignment_score(scaled, seq, rep);
      REQUIRE(s1.defined() == s2.defined());
      if (s1.defined()) CHECK(std::abs(*s1.pearson - *s2.pearson) <= 1e-12);
    }
  }
}

TEST_CASE("MusicWindow correlation is identical to alignment_score") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng() % 20;
    std::size_t m = std::max<std::size_t>(2, n + rng() % 40);
    auto music = fixtures::random_music(rng, m);
    auto seq = fixtures::random_sequence(rng, 20, n);
    std::size_t l = 1 + rng() % n;
    auto rep = kAllRepresentations[rng() % 3];
    MusicWindow window(music, music_window_size(l, n, m));
    auto direct = alignment_score(music, seq, rep, l);
    auto windowed = window.correlate(dance_matrix(seq, rep, l).values);
    CHECK(direct.pearson == windowed);
  }
}

TEST_CASE("invalid prefixes and undersized music are rejected") {
  std::mt19937_64 rng(9);
  auto music = fixtures::random_music(rng, 5);
  auto seq = fixtures::random_sequence(rng, 20, 8);
  CHECK_THROWS_AS(alignment_score(music, seq, Representation::Action, 8), Error);
  auto big = fixtures::random_music(rng, 20);
  CHECK_THROWS_AS(alignment_score(big, seq, Representation::Action, 0), Error);
  CHECK_THROWS_AS(alignment_score(big, seq, Representation::Action, 9), Error);
}
