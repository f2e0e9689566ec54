#include "choreo/mfcc.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "choreo/error.hpp"

namespace choreo {
namespace {

// FFTW's planner is not reentrant; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class RealFft {
public:
  explicit RealFft(int n) : n_(n) {
    in_ = fftw_alloc_real(static_cast<std::size_t>(n));
    out_ = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(n, in_, out_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  double* input() { return in_; }

  // Writes |X[k]|^2 for k = 0..n/2.
  void power(std::span<double> out) {
    fftw_execute(plan_);
    for (int k = 0; k <= n_ / 2; ++k) out[k] = out_[k][0] * out_[k][0] + out_[k][1] * out_[k][1];
  }

private:
  int n_;
  double* in_;
  fftw_complex* out_;
  fftw_plan plan_;
};

constexpr double kMelLinearStep = 200.0 / 3.0;
constexpr double kMelLogStartHz = 1000.0;
constexpr double kMelLogStart = kMelLogStartHz / kMelLinearStep;  // 15

double mel_log_step() { return std::log(6.4) / 27.0; }

}  // namespace

void MfccConfig::validate() const {
  if (sample_rate <= 0) fail(ErrorCode::InvalidArgument, "sample_rate must be positive");
  if (n_fft < 2 || n_fft % 2 != 0) fail(ErrorCode::InvalidArgument, "n_fft must be a positive even number");
  if (hop_length <= 0) fail(ErrorCode::InvalidArgument, "hop_length must be positive");
  if (n_fft < hop_length) fail(ErrorCode::InvalidArgument, "n_fft must be at least hop_length");
  if (n_mels < 1) fail(ErrorCode::InvalidArgument, "n_mels must be positive");
  if (n_coeffs < 1 || n_coeffs > n_mels) fail(ErrorCode::InvalidArgument, "n_coeffs must be in [1, n_mels]");
  if (fmin < 0.0) fail(ErrorCode::InvalidArgument, "fmin must be non-negative");
  if (fmax != 0.0 && fmax <= fmin) fail(ErrorCode::InvalidArgument, "fmax must exceed fmin");
  if (!(log_floor > 0.0)) fail(ErrorCode::InvalidArgument, "log_floor must be positive");
}

std::size_t stft_frame_count(std::size_t n_samples, int hop_length) {
  return n_samples / static_cast<std::size_t>(hop_length) + 1;
}

double hz_to_mel(double hz) {
  if (hz < kMelLogStartHz) return hz / kMelLinearStep;
  return kMelLogStart + std::log(hz / kMelLogStartHz) / mel_log_step();
}

double mel_to_hz(double mel) {
  if (mel < kMelLogStart) return mel * kMelLinearStep;
  return kMelLogStartHz * std::exp(mel_log_step() * (mel - kMelLogStart));
}

FeatureFrames mel_filterbank(int sample_rate, int n_fft, int n_mels, double fmin, double fmax) {
  int n_bins = n_fft / 2 + 1;
  double mel_lo = hz_to_mel(fmin);
  double mel_hi = hz_to_mel(fmax);

  std::vector<double> edges(static_cast<std::size_t>(n_mels) + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    double mel = mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) / (n_mels + 1);
    edges[i] = mel_to_hz(mel);
  }

  FeatureFrames fb;
  fb.n_frames = static_cast<std::size_t>(n_mels);
  fb.n_columns = static_cast<std::size_t>(n_bins);
  fb.values.assign(fb.n_frames * fb.n_columns, 0.0);
  for (int m = 0; m < n_mels; ++m) {
    double lo = edges[m], center = edges[m + 1], hi = edges[m + 2];
    double enorm = 2.0 / (hi - lo);
    for (int k = 0; k < n_bins; ++k) {
      double f = static_cast<double>(k) * sample_rate / n_fft;
      double rising = (f - lo) / (center - lo);
      double falling = (hi - f) / (hi - center);
      double w = std::max(0.0, std::min(rising, falling));
      fb.values[static_cast<std::size_t>(m) * n_bins + k] = w * enorm;
    }
  }
  return fb;
}

FeatureFrames mel_power_spectrogram(const AudioBuffer& audio, const MfccConfig& config) {
  config.validate();
  const std::size_t n = audio.samples.size();
  const auto n_fft = static_cast<std::size_t>(config.n_fft);
  if (n < n_fft) {
    fail(ErrorCode::InvalidArgument, "audio shorter than one analysis window (" +
                                         std::to_string(n) + " < " + std::to_string(n_fft) +
                                         " samples)");
  }

  const std::size_t pad = n_fft / 2;
  std::vector<double> padded(n + 2 * pad);
  for (std::size_t i = 0; i < pad; ++i) {
    padded[pad - 1 - i] = audio.samples[i + 1];
    padded[pad + n + i] = audio.samples[n - 2 - i];
  }
  std::copy(audio.samples.begin(), audio.samples.end(), padded.begin() + static_cast<std::ptrdiff_t>(pad));

  std::vector<double> window(n_fft);
  for (std::size_t i = 0; i < n_fft; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / n_fft);
  }

  double fmax = config.fmax > 0.0 ? config.fmax : audio.sample_rate / 2.0;
  FeatureFrames fb = mel_filterbank(audio.sample_rate, config.n_fft, config.n_mels, config.fmin, fmax);
  const std::size_t n_bins = fb.n_columns;

  const std::size_t n_frames = stft_frame_count(n, config.hop_length);
  FeatureFrames mel;
  mel.n_frames = n_frames;
  mel.n_columns = fb.n_frames;
  mel.values.assign(n_frames * mel.n_columns, 0.0);

  RealFft fft(config.n_fft);
  std::vector<double> power(n_bins);
  for (std::size_t t = 0; t < n_frames; ++t) {
    const double* src = padded.data() + t * static_cast<std::size_t>(config.hop_length);
    double* dst = fft.input();
    for (std::size_t i = 0; i < n_fft; ++i) dst[i] = src[i] * window[i];
    fft.power(power);
    for (std::size_t m = 0; m < mel.n_columns; ++m) {
      const double* w = fb.values.data() + m * n_bins;
      double e = 0.0;
      for (std::size_t k = 0; k < n_bins; ++k) e += w[k] * power[k];
      mel.values[t * mel.n_columns + m] = e;
    }
  }
  return mel;
}

MfccFrames compute_mfcc(const AudioBuffer& audio, const MfccConfig& config) {
  FeatureFrames mel = mel_power_spectrogram(audio, config);
  const std::size_t n_mels = mel.n_columns;
  const auto n_coeffs = static_cast<std::size_t>(config.n_coeffs);

  // Orthonormal DCT-II basis, n_coeffs x n_mels.
  std::vector<double> basis(n_coeffs * n_mels);
  for (std::size_t k = 0; k < n_coeffs; ++k) {
    double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n_mels));
    for (std::size_t i = 0; i < n_mels; ++i) {
      basis[k * n_mels + i] =
          scale * std::cos(std::numbers::pi * static_cast<double>(k) * (2.0 * i + 1.0) / (2.0 * n_mels));
    }
  }

  MfccFrames out;
  out.hop_length = config.hop_length;
  out.sample_rate = audio.sample_rate;
  out.coeffs.n_frames = mel.n_frames;
  out.coeffs.n_columns = n_coeffs;
  out.coeffs.values.assign(mel.n_frames * n_coeffs, 0.0);

  std::vector<double> log_mel(n_mels);
  for (std::size_t t = 0; t < mel.n_frames; ++t) {
    for (std::size_t i = 0; i < n_mels; ++i) {
      log_mel[i] = std::log(mel.values[t * n_mels + i] + config.log_floor);
    }
    for (std::size_t k = 0; k < n_coeffs; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n_mels; ++i) acc += basis[k * n_mels + i] * log_mel[i];
      out.coeffs.values[t * n_coeffs + k] = acc;
    }
  }
  return out;
}

}  // namespace choreo
