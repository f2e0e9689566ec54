#include "support/fixtures.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

namespace fixtures {

choreo::AudioBuffer click_track(double period_s, double duration_s, int sample_rate) {
  choreo::AudioBuffer a;
  a.sample_rate = sample_rate;
  auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  a.samples.assign(n, 0.0);
  const auto burst = static_cast<std::size_t>(0.02 * sample_rate);
  for (double t : click_times(period_s, duration_s)) {
    auto start = static_cast<std::size_t>(std::llround(t * sample_rate));
    for (std::size_t k = 0; k < burst && start + k < n; ++k) {
      double x = static_cast<double>(k) / sample_rate;
      a.samples[start + k] += 0.8 * std::sin(2.0 * std::numbers::pi * 1000.0 * x) * std::exp(-x / 0.004);
    }
  }
  return a;
}

std::vector<double> click_times(double period_s, double duration_s) {
  std::vector<double> t;
  for (int k = 0; k * period_s < duration_s; ++k) t.push_back(k * period_s);
  return t;
}

choreo::AudioBuffer repeated_clip(int sample_rate) {
  const double notes[] = {220.0, 330.0, 262.0, 392.0, 294.0};
  const auto per_note = static_cast<std::size_t>(sample_rate);
  std::vector<double> segment(5 * per_note, 0.0);
  for (std::size_t k = 0; k < 5; ++k) {
    for (std::size_t i = 0; i < per_note; ++i) {
      double t = static_cast<double>(i) / sample_rate;
      double v = 0.0;
      for (int h = 1; h <= 3; ++h) v += std::sin(2.0 * std::numbers::pi * notes[k] * h * t) / h;
      segment[k * per_note + i] = 0.3 * v;
    }
  }
  choreo::AudioBuffer a;
  a.sample_rate = sample_rate;
  a.samples = segment;
  a.samples.insert(a.samples.end(), segment.begin(), segment.end());
  return a;
}

choreo::AudioBuffer sine(double freq_hz, double seconds, int sample_rate, double amplitude) {
  choreo::AudioBuffer a;
  a.sample_rate = sample_rate;
  auto n = static_cast<std::size_t>(std::llround(seconds * sample_rate));
  a.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.samples[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(i) / sample_rate);
  }
  return a;
}

choreo::AudioBuffer silence(double seconds, int sample_rate) {
  choreo::AudioBuffer a;
  a.sample_rate = sample_rate;
  a.samples.assign(static_cast<std::size_t>(std::llround(seconds * sample_rate)), 0.0);
  return a;
}

choreo::MfccFrames random_frames(std::mt19937_64& rng, std::size_t m, std::size_t n_coeffs) {
  std::normal_distribution<double> step(0.0, 0.25);
  std::normal_distribution<double> jump(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  choreo::MfccFrames f;
  f.hop_length = 512;
  f.sample_rate = 22050;
  f.coeffs.n_frames = m;
  f.coeffs.n_columns = n_coeffs;
  f.coeffs.values.resize(m * n_coeffs);
  std::vector<double> cur(n_coeffs);
  for (auto& c : cur) c = jump(rng);
  for (std::size_t i = 0; i < m; ++i) {
    bool leap = u(rng) < 0.1;
    for (std::size_t c = 0; c < n_coeffs; ++c) {
      cur[c] = leap ? jump(rng) : cur[c] + step(rng);
      f.coeffs.values[i * n_coeffs + c] = cur[c];
    }
  }
  return f;
}

choreo::MusicMatrix random_music(std::mt19937_64& rng, std::size_t m) {
  return choreo::music_matrix(random_frames(rng, m));
}

std::vector<choreo::Action> random_actions(std::mt19937_64& rng, std::size_t n) {
  std::vector<choreo::Action> a(n);
  for (auto& x : a) x = choreo::kAllActions[rng() % 3];
  return a;
}

choreo::DanceSequence random_sequence(std::mt19937_64& rng, int k_states, std::size_t n) {
  auto actions = random_actions(rng, n);
  return choreo::apply_actions(choreo::AgentConfig::centered(k_states, static_cast<int>(n)), actions);
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("choreo_" + std::to_string(::getpid()) + "_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace fixtures
