#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "json.hpp"

#include "choreo/error.hpp"
#include "choreo/features.hpp"

namespace choreo {
namespace {

// Log-mel values are floored 80 dB below the loudest bin.
constexpr double kLogFloorRatio = 1e-8;
constexpr int kTempoHarmonics = 4;
constexpr double kTempoGridBpm = 0.05;
constexpr double kMinBeatGapSeconds = 0.1;

std::vector<double> gaussian_smooth(const std::vector<double>& x, double sigma) {
  if (sigma <= 0.0) return x;
  int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  for (int k = -radius; k <= radius; ++k) kernel[k + radius] = std::exp(-0.5 * (k / sigma) * (k / sigma));
  auto n = static_cast<int>(x.size());
  std::vector<double> out(x.size(), 0.0);
  for (int t = 0; t < n; ++t) {
    double acc = 0.0;
    for (int k = -radius; k <= radius; ++k) {
      int s = t + k;
      if (s >= 0 && s < n) acc += kernel[k + radius] * x[s];
    }
    out[t] = acc;
  }
  return out;
}

double interp(const std::vector<double>& v, double pos) {
  auto i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  double f = pos - static_cast<double>(i);
  return v[i] * (1.0 - f) + v[i + 1] * f;
}

double frames_per_second(const MfccConfig& analysis, int sample_rate) {
  return static_cast<double>(sample_rate) / analysis.hop_length;
}

// Least-squares beat period over the placed beats, each numbered by its
// rounded distance from the first beat in units of the rough period.
std::optional<double> refine_tempo(const std::vector<double>& times, double period_s) {
  if (times.size() < 4) return std::nullopt;
  std::vector<double> idx(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) idx[i] = std::round((times[i] - times[0]) / period_s);
  double mx = std::accumulate(idx.begin(), idx.end(), 0.0) / static_cast<double>(idx.size());
  double my = std::accumulate(times.begin(), times.end(), 0.0) / static_cast<double>(times.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    sxy += (idx[i] - mx) * (times[i] - my);
    sxx += (idx[i] - mx) * (idx[i] - mx);
  }
  if (sxx <= 0.0 || sxy <= 0.0) return std::nullopt;
  double bpm = 60.0 * sxx / sxy;
  return std::abs(bpm * period_s / 60.0 - 1.0) < 0.1 ? std::optional<double>(bpm) : std::nullopt;
}

}  // namespace

std::vector<double> onset_envelope(const AudioBuffer& audio, const MfccConfig& analysis) {
  FeatureFrames mel = mel_power_spectrogram(audio, analysis);
  std::vector<double> env(mel.n_frames, 0.0);
  double peak = 0.0;
  for (double e : mel.values) peak = std::max(peak, e);
  if (peak <= 0.0) return env;

  const double floor = peak * kLogFloorRatio;
  std::vector<double> prev(mel.n_columns), cur(mel.n_columns);
  for (std::size_t t = 0; t < mel.n_frames; ++t) {
    auto frame = mel.frame(t);
    for (std::size_t b = 0; b < mel.n_columns; ++b) cur[b] = std::log(std::max(frame[b], floor));
    if (t > 0) {
      double flux = 0.0;
      for (std::size_t b = 0; b < mel.n_columns; ++b) flux += std::max(0.0, cur[b] - prev[b]);
      env[t] = flux;
    }
    std::swap(prev, cur);
  }
  return env;
}

double estimate_tempo(const std::vector<double>& envelope, double fps, const BeatTrackerConfig& config) {
  const std::size_t n = envelope.size();
  if (n < 4 || *std::max_element(envelope.begin(), envelope.end()) <= 0.0) return 0.0;

  double mean = std::accumulate(envelope.begin(), envelope.end(), 0.0) / static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = envelope[i] - mean;
  centered = gaussian_smooth(centered, 1.0);

  const double longest_period = 60.0 * fps / config.min_bpm;
  const std::size_t max_lag =
      std::min(n - 1, static_cast<std::size_t>(std::ceil(kTempoHarmonics * longest_period)) + 2);
  std::vector<double> acf(max_lag + 1, 0.0);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) acc += centered[t] * centered[t + lag];
    acf[lag] = acc / static_cast<double>(n - lag);
  }
  if (acf[0] <= 0.0) return 0.0;

  double best_bpm = 0.0;
  double best_score = -std::numeric_limits<double>::infinity();
  auto steps = static_cast<int>(std::round((config.max_bpm - config.min_bpm) / kTempoGridBpm));
  for (int s = 0; s <= steps; ++s) {
    double bpm = config.min_bpm + s * kTempoGridBpm;
    double period = 60.0 * fps / bpm;
    double score = 0.0;
    for (int h = 1; h <= kTempoHarmonics; ++h) {
      double lag = h * period;
      if (lag > static_cast<double>(max_lag)) break;
      score += interp(acf, lag);
    }
    double octaves = std::log2(bpm / config.prior_center_bpm) / config.prior_octaves;
    double weight = std::exp(-0.5 * octaves * octaves);
    // The prior scales only positive evidence; negative scores stay put.
    double weighted = score > 0.0 ? score * weight : score;
    if (weighted > best_score) {
      best_score = weighted;
      best_bpm = bpm;
    }
  }
  return best_score > 0.0 ? best_bpm : 0.0;
}

BeatTimes detect_beats(const AudioBuffer& audio, const BeatTrackerConfig& config) {
  double duration = audio.duration_seconds();
  if (duration < config.min_duration_s) {
    fail(ErrorCode::InvalidArgument, "audio too short for beat tracking (need at least " +
                                         std::to_string(config.min_duration_s) + " s)");
  }

  const double fps = frames_per_second(config.analysis, audio.sample_rate);
  std::vector<double> env = onset_envelope(audio, config.analysis);
  BeatTimes out;
  out.tempo_bpm = estimate_tempo(env, fps, config);
  if (out.tempo_bpm <= 0.0) {
    out.tempo_bpm = 0.0;
    return out;
  }

  const auto n = static_cast<int>(env.size());
  const double period = 60.0 * fps / out.tempo_bpm;

  double mean = std::accumulate(env.begin(), env.end(), 0.0) / n;
  double var = 0.0;
  for (double e : env) var += (e - mean) * (e - mean);
  double sd = std::sqrt(var / n);
  if (sd <= 0.0) {
    out.tempo_bpm = 0.0;
    return out;
  }
  std::vector<double> normalized(env.size());
  for (int t = 0; t < n; ++t) normalized[t] = env[t] / sd;
  std::vector<double> local = gaussian_smooth(normalized, period / 32.0);

  // Cumulative score: each beat extends the best predecessor 0.5..2 periods back.
  std::vector<double> cum(env.size(), 0.0);
  std::vector<int> back(env.size(), -1);
  const int far = static_cast<int>(std::round(2.0 * period));
  const int near = std::max(1, static_cast<int>(std::round(period / 2.0)));
  for (int t = 0; t < n; ++t) {
    double best = -std::numeric_limits<double>::infinity();
    int arg = -1;
    for (int p = std::max(0, t - far); p <= t - near; ++p) {
      double dev = std::log(static_cast<double>(t - p) / period);
      double s = cum[p] - config.tightness * dev * dev;
      if (s > best) {
        best = s;
        arg = p;
      }
    }
    cum[t] = local[t] + (arg >= 0 ? best : 0.0);
    back[t] = arg;
  }

  // Last beat: the final interior local maximum of the cumulative score that
  // reaches half the median local-maximum height. The last frame is not a
  // candidate since the score still rises there between beats.
  auto is_peak = [&](int t) { return t > 0 && t < n - 1 && cum[t] >= cum[t - 1] && cum[t] > cum[t + 1]; };
  std::vector<double> peaks;
  for (int t = 0; t < n; ++t) {
    if (is_peak(t)) peaks.push_back(cum[t]);
  }
  if (peaks.empty()) return out;
  std::nth_element(peaks.begin(), peaks.begin() + static_cast<std::ptrdiff_t>(peaks.size() / 2), peaks.end());
  double threshold = 0.5 * peaks[peaks.size() / 2];
  int last = -1;
  for (int t = n - 1; t >= 0; --t) {
    if (is_peak(t) && cum[t] >= threshold) {
      last = t;
      break;
    }
  }
  if (last < 0) return out;

  std::vector<int> frames;
  for (int t = last; t >= 0; t = back[t]) frames.push_back(t);
  std::reverse(frames.begin(), frames.end());

  // Drop weak beats at either end (silence before the music starts or after it stops).
  double rms = 0.0;
  for (double v : local) rms += v * v;
  rms = std::sqrt(rms / n);
  auto strong = [&](int f) { return local[f] >= 0.5 * rms; };
  auto first_strong = std::find_if(frames.begin(), frames.end(), strong);
  auto last_strong = std::find_if(frames.rbegin(), frames.rend(), strong).base();
  if (first_strong >= last_strong) return out;

  // Centred frames see an onset up to half a window early.
  const int latency = config.analysis.n_fft / (2 * config.analysis.hop_length);
  const double hop_s = static_cast<double>(config.analysis.hop_length) / audio.sample_rate;
  for (auto it = first_strong; it != last_strong; ++it) {
    double t = (*it + latency) * hop_s;
    if (t >= duration) break;
    if (out.times.empty() || t - out.times.back() >= kMinBeatGapSeconds) out.times.push_back(t);
  }
  out.tempo_bpm = refine_tempo(out.times, 60.0 / out.tempo_bpm).value_or(out.tempo_bpm);
  return out;
}

std::set<std::size_t> beats_to_steps(const BeatTimes& beats, std::size_t n_steps, double duration_s) {
  if (n_steps == 0) fail(ErrorCode::InvalidArgument, "n_steps must be at least 1");
  if (!(duration_s > 0.0)) fail(ErrorCode::InvalidArgument, "duration must be positive");
  const double n = static_cast<double>(n_steps);
  auto lower = [&](std::size_t s) { return static_cast<double>(s) * duration_s / n; };

  std::set<std::size_t> steps;
  for (double t : beats.times) {
    if (!(t >= 0.0) || t >= duration_s) continue;
    auto s = static_cast<std::size_t>(std::min(n - 1.0, std::floor(t * n / duration_s)));
    // Settle floating-point disagreement with the exact window bounds.
    while (s > 0 && lower(s) > t) --s;
    while (s + 1 < n_steps && lower(s + 1) <= t) ++s;
    if (lower(s) <= t && t < lower(s + 1)) steps.insert(s);
  }
  return steps;
}

std::string beats_json(const BeatTimes& beats) {
  nlohmann::ordered_json j;
  j["tempo_bpm"] = beats.tempo_bpm;
  j["times_s"] = beats.times;
  return j.dump(2) + "\n";
}

}  // namespace choreo
