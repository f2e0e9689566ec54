#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "json.hpp"

#include "choreo/error.hpp"
#include "choreo/render.hpp"
#include "support/fixtures.hpp"
#include "support/images.hpp"

using namespace choreo;
using A = Action;

namespace {

constexpr Rgb kBlack{0, 0, 0};

DanceTrace make_trace(std::vector<A> actions, int k = 20, int start = 10, double duration = 0.0) {
  DanceTrace t;
  t.audio = {"clip.wav", duration, 22050};
  t.params.k_states = k;
  t.params.n_steps = static_cast<int>(actions.size());
  t.params.start_state = start;
  t.params.representation = Representation::Action;
  t.params.approach = "search";
  t.params.chunk_size = 5;
  t.params.action_space = "clamped";
  auto seq = apply_actions(t.agent(), actions);
  t.actions = seq.actions;
  t.states = seq.states;
  t.score = 0.25;
  return t;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

std::uint32_t pack(Rgb c) { return (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | c.b; }

}  // namespace

TEST_CASE("grid dot endpoints") {
  const int w = 320, h = 240;
  Point p0 = grid_dot_center(0, 20, w, h), p19 = grid_dot_center(19, 20, w, h);
  for (int s = 1; s < 20; ++s) {
    CHECK(grid_dot_center(s, 20, w, h).x > grid_dot_center(s - 1, 20, w, h).x);
    CHECK(grid_dot_center(s, 20, w, h).y == p0.y);
  }
  // Equal spacing.
  double gap = grid_dot_center(1, 20, w, h).x - p0.x;
  for (int s = 1; s < 20; ++s)
    CHECK(grid_dot_center(s, 20, w, h).x - grid_dot_center(s - 1, 20, w, h).x == doctest::Approx(gap));
  CHECK(p0.x - grid_dot_radius(20, w, h) >= 0.0);
  CHECK(p19.x + grid_dot_radius(20, w, h) <= w);

  auto left = render_state(VisKind::GridDot, 0, 20, w, h);
  auto right = render_state(VisKind::GridDot, 19, 20, w, h);
  CHECK(left.at(static_cast<int>(p0.x), static_cast<int>(p0.y)) == kBlack);
  CHECK(right.at(static_cast<int>(p0.x), static_cast<int>(p0.y)) != kBlack);
  CHECK(right.at(static_cast<int>(p19.x), static_cast<int>(p19.y)) == kBlack);
  CHECK(left.at(static_cast<int>(p19.x), static_cast<int>(p19.y)) != kBlack);
}

TEST_CASE("pulse disc radius is linear in the state") {
  const int w = 200, h = 200;
  double lo = disc_min_radius(w, h), hi = disc_max_radius(w, h);
  CHECK(lo < hi);
  CHECK(disc_radius(0, 20, w, h) == lo);
  CHECK(disc_radius(19, 20, w, h) == hi);
  CHECK(disc_radius(10, 20, w, h) == doctest::Approx(lo + 10.0 / 19.0 * (hi - lo)).epsilon(1e-15));

  // Count black pixels along the centre row to measure the drawn radius.
  for (int s : {0, 10, 19}) {
    auto img = render_state(VisKind::PulseDisc, s, 20, w, h);
    int black = 0;
    for (int x = 0; x < w; ++x) black += img.at(x, h / 2) == kBlack;
    CHECK(std::abs(black / 2.0 - disc_radius(s, 20, w, h)) <= 1.0);
  }
}

TEST_CASE("stick figure pose interpolates between the extremes") {
  CHECK(stick_pose(0, 20).arm_deg == -60.0);
  CHECK(stick_pose(19, 20).arm_deg == 60.0);
  CHECK(stick_pose(0, 20).leg_deg == 0.0);
  CHECK(stick_pose(19, 20).leg_deg == 25.0);
  for (int s = 1; s < 20; ++s) {
    CHECK(stick_pose(s, 20).arm_deg > stick_pose(s - 1, 20).arm_deg);
    CHECK(stick_pose(s, 20).leg_deg > stick_pose(s - 1, 20).leg_deg);
  }
  auto low = render_state(VisKind::StickFigure, 0, 20, 200, 200);
  auto high = render_state(VisKind::StickFigure, 19, 20, 200, 200);
  CHECK(low != high);
}

TEST_CASE("canvas and state are validated") {
  CHECK(code_of([] { render_state(VisKind::GridDot, 0, 20, 63, 100); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { render_state(VisKind::GridDot, 20, 20, 100, 100); }) == ErrorCode::InvalidArgument);
  CHECK_NOTHROW(render_state(VisKind::PulseDisc, 0, 2, 64, 64));
}

TEST_CASE("frame arithmetic") {
  CHECK(frame_count(10.0, 20.0) == 200);
  CHECK(frame_count(9.975, 20.0) == 200);
  CHECK(frame_count(0.0, 20.0) == 0);
  CHECK_THROWS_AS(frame_count(1.0, 0.0), Error);

  // Each step gets floor or ceil of F / N frames, in order.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 100;
    std::size_t f = n + rng() % 500;
    std::vector<std::size_t> runs(n, 0);
    std::size_t prev = 0;
    for (std::size_t i = 0; i < f; ++i) {
      std::size_t s = frame_step(i, f, n);
      REQUIRE(s < n);
      CHECK(s >= prev);
      prev = s;
      ++runs[s];
    }
    for (std::size_t r : runs) {
      CHECK(r >= f / n);
      CHECK(r <= f / n + 1);
    }
  }
}

TEST_CASE("render_frames holds each step and follows the states") {
  std::mt19937_64 rng(8);
  auto actions = fixtures::random_actions(rng, 50);
  auto trace = make_trace(actions, 20, 10, 10.0);
  Visualization vis{VisKind::PulseDisc, 96, 80, 20.0};
  auto frames = render_frames(trace, vis);
  REQUIRE(frames.size() == 200);
  for (std::size_t f = 0; f < frames.size(); ++f) {
    int state = trace.states[f * 50 / 200];
    CHECK(frames[f] == render_state(VisKind::PulseDisc, state, 20, 96, 80));
  }
  CHECK(render_frames(trace, vis) == frames);

  auto short_trace = make_trace({A::Up, A::Down, A::Down});
  auto three = render_frames(short_trace, {VisKind::GridDot, 64, 64, 20.0});
  CHECK(three.size() == 3);
}

TEST_CASE("GIF encoding") {
  std::vector<Image> frames;
  for (int s : {0, 5, 19}) frames.push_back(render_state(VisKind::GridDot, s, 20, 120, 70));
  auto bytes = encode_gif(frames, 20.0);
  auto gif = images::decode_gif(bytes);
  CHECK(gif.width == 120);
  CHECK(gif.height == 70);
  CHECK(gif.loops);
  REQUIRE(gif.frames.size() == 3);
  for (std::size_t f = 0; f < 3; ++f) {
    CHECK(gif.frames[f].delay_cs == 5);
    for (int y = 0; y < 70; ++y)
      for (int x = 0; x < 120; ++x) REQUIRE(gif.rgb(f, x, y) == pack(frames[f].at(x, y)));
  }
  CHECK(encode_gif(frames, 20.0) == bytes);
  CHECK(images::decode_gif(encode_gif(frames, 30.0)).frames[0].delay_cs == 3);
}

TEST_CASE("two hundred frames at 20 fps carry 5 cs delays") {
  auto trace = make_trace(std::vector<A>(20, A::Up), 20, 0, 10.0);
  auto frames = render_frames(trace, {VisKind::GridDot, 64, 64, 20.0});
  auto gif = images::decode_gif(encode_gif(frames, 20.0));
  REQUIRE(gif.frames.size() == 200);
  for (const auto& f : gif.frames) CHECK(f.delay_cs == 5);
}

TEST_CASE("single frame and black-and-white palettes") {
  Image img(64, 64);
  for (int y = 10; y < 30; ++y)
    for (int x = 5; x < 50; ++x) img.set(x, y, kBlack);
  std::vector<Image> one{img};
  auto gif = images::decode_gif(encode_gif(one, 20.0));
  REQUIRE(gif.frames.size() == 1);
  std::set<std::uint8_t> used(gif.frames[0].indices.begin(), gif.frames[0].indices.end());
  CHECK(used.size() <= 2);
  CHECK(gif.rgb(0, 0, 0) == 0xFFFFFFu);
  CHECK(gif.rgb(0, 6, 11) == 0u);

  std::vector<Image> frames;
  for (int s = 0; s < 20; ++s) frames.push_back(render_state(VisKind::PulseDisc, s, 20, 80, 80));
  auto bw = images::decode_gif(encode_gif(frames, 10.0));
  std::set<std::uint8_t> all;
  for (const auto& f : bw.frames) all.insert(f.indices.begin(), f.indices.end());
  CHECK(all.size() <= 2);
}

TEST_CASE("noisy frames exercise long LZW streams and the fixed palette") {
  std::mt19937_64 rng(17);
  std::vector<Image> frames;
  for (int f = 0; f < 3; ++f) {
    Image img(257, 190);
    for (auto& v : img.rgb) v = static_cast<std::uint8_t>(rng());
    frames.push_back(img);
  }
  auto gif = images::decode_gif(encode_gif(frames, 12.5));
  REQUIRE(gif.frames.size() == 3);
  CHECK(gif.frames[0].delay_cs == 8);
  // Fixed 3-3-2 palette: each channel lands on its quantised level.
  for (int y = 0; y < 190; y += 7) {
    for (int x = 0; x < 257; x += 5) {
      Rgb c = frames[1].at(x, y);
      std::uint32_t expect = pack({static_cast<std::uint8_t>((c.r >> 5) * 255 / 7),
                                   static_cast<std::uint8_t>((c.g >> 5) * 255 / 7),
                                   static_cast<std::uint8_t>((c.b >> 6) * 255 / 3)});
      CHECK(gif.rgb(1, x, y) == expect);
    }
  }

  // Few colours but long runs and many distinct strings.
  Image stripes(400, 300);
  for (int y = 0; y < 300; ++y)
    for (int x = 0; x < 400; ++x) {
      auto v = static_cast<std::uint8_t>((x * 7 + y * 13 + (x * y) % 11) % 5 * 60);
      stripes.set(x, y, {v, v, v});
    }
  std::vector<Image> s{stripes};
  auto decoded = images::decode_gif(encode_gif(s, 20.0));
  for (int y = 0; y < 300; ++y)
    for (int x = 0; x < 400; ++x) REQUIRE(decoded.rgb(0, x, y) == pack(stripes.at(x, y)));
}

TEST_CASE("GIF encoder rejects empty input and mismatched frames") {
  std::vector<Image> none;
  CHECK_THROWS_AS(encode_gif(none, 20.0), Error);
  std::vector<Image> mixed{Image(64, 64), Image(65, 64)};
  CHECK_THROWS_AS(encode_gif(mixed, 20.0), Error);
}

TEST_CASE("PNG frame export layout") {
  auto dir = fixtures::temp_dir("render_png");
  std::vector<Image> frames;
  for (int s : {0, 19}) frames.push_back(render_state(VisKind::GridDot, s, 20, 64, 64));
  write_png_frames(frames, dir / "out");
  CHECK(std::filesystem::exists(dir / "out" / "frame_000000.png"));
  CHECK(std::filesystem::exists(dir / "out" / "frame_000001.png"));
  CHECK_FALSE(std::filesystem::exists(dir / "out" / "frame_000002.png"));
  auto png = images::read_png(dir / "out" / "frame_000001.png");
  REQUIRE(png.channels == 3);
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x) {
      const auto* p = &png.pixels[3 * (static_cast<std::size_t>(y) * 64 + x)];
      REQUIRE(Rgb{p[0], p[1], p[2]} == frames[1].at(x, y));
    }
  auto first = fixtures::read_bytes(dir / "out" / "frame_000000.png");
  write_png_frames(frames, dir / "again");
  CHECK(fixtures::read_bytes(dir / "again" / "frame_000000.png") == first);
  for (const auto& c : images::png_chunks(first)) {
    CHECK(c != "tIME");
    CHECK(c != "tEXt");
  }
}

TEST_CASE("trace round trip") {
  auto dir = fixtures::temp_dir("render_trace");
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    auto actions = fixtures::random_actions(rng, 1 + rng() % 60);
    auto t = make_trace(actions, 2 + static_cast<int>(rng() % 20), 0, 3.0 + trial * 0.1);
    t.params.representation = kAllRepresentations[rng() % 3];
    if (trial % 3 == 0) t.score = std::nullopt;
    if (trial % 2 == 0) {
      t.params.approach = "unsync-random";
      t.params.seed = rng();
      t.params.rng = "mt19937_64";
      t.params.chunk_size = std::nullopt;
      t.params.action_space = "allowed";
      t.beats_s = std::vector<double>{0.1, 0.35, 1.0 / 3.0};
    }
    if (t.score) t.score = std::uniform_real_distribution<double>(-1, 1)(rng);
    write_trace(t, dir / "t.json");
    CHECK(read_trace(dir / "t.json") == t);
    CHECK(trace_from_json(trace_to_json(t)) == t);
  }
}

TEST_CASE("trace JSON layout and key order independence") {
  auto t = make_trace({A::Up, A::Stay, A::Down});
  auto j = nlohmann::json::parse(trace_to_json(t));
  CHECK(j["schema_version"] == 1);
  CHECK(j["params"]["K"] == 20);
  CHECK(j["params"]["N"] == 3);
  CHECK(j["params"]["representation"] == "action");
  CHECK(j["actions"] == nlohmann::json::array({"U", "S", "D"}));
  CHECK(j["states"] == nlohmann::json::array({11, 11, 10}));
  CHECK(j["score"] == 0.25);

  // nlohmann::json sorts keys, which reorders every object.
  CHECK(trace_from_json(j.dump()) == t);
  auto reversed = nlohmann::ordered_json::object();
  auto ordered = nlohmann::ordered_json::parse(trace_to_json(t));
  std::vector<std::string> keys;
  for (auto it = ordered.begin(); it != ordered.end(); ++it) keys.push_back(it.key());
  for (auto it = keys.rbegin(); it != keys.rend(); ++it) reversed[*it] = ordered[*it];
  CHECK(trace_from_json(reversed.dump()) == t);
}

TEST_CASE("trace read errors") {
  auto dir = fixtures::temp_dir("render_errors");
  fixtures::write_text(dir / "empty.json", "");
  CHECK(code_of([&] { read_trace(dir / "empty.json"); }) == ErrorCode::Malformed);
  CHECK(code_of([&] { read_trace(dir / "missing.json"); }) == ErrorCode::Io);
  CHECK(code_of([] { trace_from_json("[1, 2]"); }) == ErrorCode::Malformed);

  auto good = nlohmann::json::parse(trace_to_json(make_trace({A::Up, A::Up, A::Up, A::Up, A::Up})));

  auto bad_state = good;
  bad_state["states"][3] = 7;
  try {
    trace_from_json(bad_state.dump());
    FAIL("expected an invariant violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvariantViolation);
    CHECK(std::string(e.what()).find("states[3]") != std::string::npos);
  }

  auto version = good;
  version["schema_version"] = 2;
  CHECK(code_of([&] { trace_from_json(version.dump()); }) == ErrorCode::SchemaVersion);

  auto symbol = good;
  symbol["actions"][0] = "X";
  CHECK(code_of([&] { trace_from_json(symbol.dump()); }) == ErrorCode::Malformed);

  auto short_states = good;
  short_states["states"].erase(4);
  CHECK(code_of([&] { trace_from_json(short_states.dump()); }) == ErrorCode::InvariantViolation);

  auto no_params = good;
  no_params.erase("params");
  CHECK(code_of([&] { trace_from_json(no_params.dump()); }) == ErrorCode::Malformed);

  auto wrong_type = good;
  wrong_type["params"]["K"] = "twenty";
  CHECK(code_of([&] { trace_from_json(wrong_type.dump()); }) == ErrorCode::Malformed);
}
