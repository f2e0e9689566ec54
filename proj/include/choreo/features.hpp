#pragma once

#include <cstddef>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "choreo/audio.hpp"
#include "choreo/matrix.hpp"
#include "choreo/mfcc.hpp"

namespace choreo {

/// Self-similarity of MFCC frames: values(i, j) = exp(-||mfcc_i - mfcc_j||).
/// Symmetric with unit diagonal; every entry lies in (0, 1].
struct MusicMatrix {
  SquareMatrix values;
  double frame_hop_seconds = 0.0;

  std::size_t m() const noexcept { return values.size(); }
};

/// Requires at least two frames. Each unordered pair is computed once and
/// mirrored. Entries that would underflow are held at the smallest normal
/// double so the range stays open at zero.
MusicMatrix music_matrix(const MfccFrames& frames);

void write_music_csv(const MusicMatrix& music, const std::filesystem::path& path);
std::string music_csv(const MusicMatrix& music);

/// Grayscale heatmap, row i top-down, value 1 rendered white.
void write_music_png(const MusicMatrix& music, const std::filesystem::path& path);

struct BeatTimes {
  std::vector<double> times;  // seconds, strictly increasing
  double tempo_bpm = 0.0;
};

struct BeatTrackerConfig {
  MfccConfig analysis;  // STFT/mel parameters shared with the MFCC front end
  double min_bpm = 60.0;
  double max_bpm = 180.0;
  double prior_center_bpm = 120.0;
  double prior_octaves = 1.0;  // std-dev of the log2-tempo prior
  double tightness = 100.0;    // penalty weight on log inter-beat deviation
  double min_duration_s = 3.0;
};

/// Spectral-flux onset envelope: sum over mel bands of the half-wave
/// rectified increase in log mel energy between consecutive frames.
/// Entry 0 is zero. All-silent input gives an all-zero envelope.
std::vector<double> onset_envelope(const AudioBuffer& audio, const MfccConfig& analysis);

/// Autocorrelation tempo estimate within [min_bpm, max_bpm]. Returns 0 for a
/// flat envelope.
double estimate_tempo(const std::vector<double>& envelope, double frames_per_second,
                      const BeatTrackerConfig& config);

/// Onset envelope -> tempo -> dynamic-programming beat placement.
/// Audio shorter than min_duration_s is rejected; silence gives no beats
/// and tempo 0.
BeatTimes detect_beats(const AudioBuffer& audio, const BeatTrackerConfig& config = {});

/// Steps whose window [s*d/n, (s+1)*d/n) contains at least one beat.
std::set<std::size_t> beats_to_steps(const BeatTimes& beats, std::size_t n_steps, double duration_s);

std::string beats_json(const BeatTimes& beats);

}  // namespace choreo
