#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "choreo/audio.hpp"

namespace choreo {

struct MfccConfig {
  int sample_rate = kDefaultSampleRate;  // rate audio is loaded at
  int n_fft = 2048;
  int hop_length = 512;
  int n_mels = 128;
  int n_coeffs = 20;
  double fmin = 0.0;
  double fmax = 0.0;  // 0 means sample_rate / 2
  double log_floor = 1e-10;

  void validate() const;
};

/// Row-major frames x columns matrix of real features.
struct FeatureFrames {
  std::vector<double> values;
  std::size_t n_frames = 0;
  std::size_t n_columns = 0;

  std::span<const double> frame(std::size_t i) const {
    return {values.data() + i * n_columns, n_columns};
  }
};

struct MfccFrames {
  FeatureFrames coeffs;
  int hop_length = 0;
  int sample_rate = 0;

  std::size_t size() const noexcept { return coeffs.n_frames; }
  std::size_t n_coeffs() const noexcept { return coeffs.n_columns; }
  std::span<const double> frame(std::size_t i) const { return coeffs.frame(i); }
  double hop_seconds() const noexcept {
    return sample_rate > 0 ? static_cast<double>(hop_length) / sample_rate : 0.0;
  }
};

/// Frame count of a center-padded STFT: floor(n / hop) + 1.
std::size_t stft_frame_count(std::size_t n_samples, int hop_length);

/// Slaney-style mel scale (linear below 1 kHz, logarithmic above).
double hz_to_mel(double hz);
double mel_to_hz(double mel);

/// n_mels x (n_fft/2 + 1) triangular filterbank with Slaney area normalization.
FeatureFrames mel_filterbank(int sample_rate, int n_fft, int n_mels, double fmin, double fmax);

/// Mel-band power per frame (frames x n_mels), from a reflect-padded,
/// Hann-windowed STFT.
FeatureFrames mel_power_spectrogram(const AudioBuffer& audio, const MfccConfig& config);

/// ln(mel power + floor) followed by an orthonormal DCT-II, keeping the first
/// n_coeffs coefficients. Throws when the audio is shorter than n_fft.
MfccFrames compute_mfcc(const AudioBuffer& audio, const MfccConfig& config = {});

}  // namespace choreo
