#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace choreo {

inline constexpr int kDefaultSampleRate = 22050;

/// Mono PCM signal with samples in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = kDefaultSampleRate;
  std::string source_path;

  std::size_t size() const noexcept { return samples.size(); }
  double duration_seconds() const noexcept {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

enum class WavEncoding { Int8, Int16, Int24, Int32, Float32 };

/// Decodes a RIFF/WAVE file, averages channels to mono and resamples to
/// `target_rate`. Integer PCM is scaled by 2^(bits-1).
///
/// Throws Error with ErrorCode::Io when the file cannot be read,
/// UnsupportedFormat for encodings other than 8/16/24/32-bit integer or
/// 32-bit float PCM with 1-2 channels, Malformed for broken RIFF structure
/// and EmptyAudio when the data chunk holds no samples.
AudioBuffer load_audio(const std::filesystem::path& path, int target_rate = kDefaultSampleRate);

/// Decodes from an in-memory RIFF image. `source_name` is recorded verbatim.
AudioBuffer decode_wav(std::span<const unsigned char> bytes, int target_rate,
                       const std::string& source_name = {});

/// Writes interleaved samples (clipped to [-1, 1] for integer encodings).
void write_wav(const std::filesystem::path& path, std::span<const double> interleaved,
               int channels, int sample_rate, WavEncoding encoding = WavEncoding::Int16);

std::vector<unsigned char> encode_wav(std::span<const double> interleaved, int channels,
                                      int sample_rate, WavEncoding encoding);

/// Band-limited (Kaiser-windowed sinc) sample-rate conversion. Identity when
/// the rates match. Output length is round(n * to / from).
std::vector<double> resample(std::span<const double> input, int from_rate, int to_rate);

}  // namespace choreo
