#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "choreo/audio.hpp"
#include "choreo/dance.hpp"
#include "choreo/features.hpp"

namespace fixtures {

// Short decaying 1 kHz bursts at `period_s` spacing, starting at t = 0.
choreo::AudioBuffer click_track(double period_s, double duration_s, int sample_rate = 22050);
std::vector<double> click_times(double period_s, double duration_s);

// Five sustained one-second harmonic notes, the 5 s segment played twice.
choreo::AudioBuffer repeated_clip(int sample_rate = 22050);

choreo::AudioBuffer sine(double freq_hz, double seconds, int sample_rate, double amplitude = 0.5);
choreo::AudioBuffer silence(double seconds, int sample_rate = 22050);

// Random-walk MFCC frames with occasional jumps, so the matrix has both
// near-diagonal blocks and far-apart repeats.
choreo::MfccFrames random_frames(std::mt19937_64& rng, std::size_t m, std::size_t n_coeffs = 20);
choreo::MusicMatrix random_music(std::mt19937_64& rng, std::size_t m);

std::vector<choreo::Action> random_actions(std::mt19937_64& rng, std::size_t n);
choreo::DanceSequence random_sequence(std::mt19937_64& rng, int k_states, std::size_t n);

// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(const std::string& name);
std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace fixtures
