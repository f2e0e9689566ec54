#include "choreo/audio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "choreo/error.hpp"

namespace choreo {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

struct Format {
  std::uint16_t tag = 0;
  int channels = 0;
  int sample_rate = 0;
  int block_align = 0;
  int bits = 0;
};

double decode_sample(const unsigned char* p, const Format& fmt) {
  if (fmt.tag == kFormatFloat) {
    float f;
    std::uint32_t bits = read_u32(p);
    std::memcpy(&f, &bits, sizeof f);
    if (!std::isfinite(f)) fail(ErrorCode::Malformed, "non-finite float sample");
    return std::clamp(static_cast<double>(f), -1.0, 1.0);
  }
  switch (fmt.bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16:
      return static_cast<std::int16_t>(read_u16(p)) / 32768.0;
    case 24: {
      std::int32_t v = static_cast<std::int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    case 32:
      return static_cast<std::int32_t>(read_u32(p)) / 2147483648.0;
    default:
      fail(ErrorCode::UnsupportedFormat, "unsupported bit depth");
  }
}

}  // namespace

AudioBuffer decode_wav(std::span<const unsigned char> bytes, int target_rate,
                       const std::string& source_name) {
  if (target_rate <= 0) fail(ErrorCode::InvalidArgument, "target sample rate must be positive");
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    fail(ErrorCode::Malformed, "not a RIFF/WAVE file: " + source_name);
  }

  Format fmt;
  bool have_fmt = false;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    std::size_t size = read_u32(chunk + 4);
    std::size_t body = pos + 8;
    std::size_t available = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || size > available) fail(ErrorCode::Malformed, "truncated fmt chunk");
      const unsigned char* f = chunk + 8;
      fmt.tag = read_u16(f);
      fmt.channels = read_u16(f + 2);
      fmt.sample_rate = static_cast<int>(read_u32(f + 4));
      fmt.block_align = read_u16(f + 12);
      fmt.bits = read_u16(f + 14);
      if (fmt.tag == kFormatExtensible) {
        if (size < 40) fail(ErrorCode::Malformed, "truncated extensible fmt chunk");
        fmt.tag = read_u16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      // Streaming writers leave the size as 0xFFFFFFFF; take what is there.
      data = chunk + 8;
      data_size = std::min(size, available);
      have_data = true;
      break;
    }
    pos = body + size + (size & 1);
  }

  if (!have_fmt) fail(ErrorCode::Malformed, "missing fmt chunk");
  if (!have_data) fail(ErrorCode::Malformed, "missing data chunk");

  bool int_ok = fmt.tag == kFormatPcm &&
                (fmt.bits == 8 || fmt.bits == 16 || fmt.bits == 24 || fmt.bits == 32);
  bool float_ok = fmt.tag == kFormatFloat && fmt.bits == 32;
  if (!int_ok && !float_ok) {
    fail(ErrorCode::UnsupportedFormat, "unsupported WAV encoding (format tag " +
                                           std::to_string(fmt.tag) + ", " +
                                           std::to_string(fmt.bits) + " bits)");
  }
  if (fmt.channels < 1 || fmt.channels > 2) {
    fail(ErrorCode::UnsupportedFormat,
         "unsupported channel count " + std::to_string(fmt.channels));
  }
  if (fmt.sample_rate <= 0) fail(ErrorCode::Malformed, "invalid sample rate");
  int bytes_per_sample = fmt.bits / 8;
  if (fmt.block_align != bytes_per_sample * fmt.channels) {
    fail(ErrorCode::Malformed, "block alignment does not match channels and bit depth");
  }

  std::size_t frames = data_size / static_cast<std::size_t>(fmt.block_align);
  if (frames == 0) fail(ErrorCode::EmptyAudio, "audio has zero samples: " + source_name);

  std::vector<double> mono(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const unsigned char* frame = data + i * fmt.block_align;
    if (fmt.channels == 1) {
      mono[i] = decode_sample(frame, fmt);
    } else {
      mono[i] = 0.5 * (decode_sample(frame, fmt) + decode_sample(frame + bytes_per_sample, fmt));
    }
  }

  AudioBuffer out;
  out.sample_rate = target_rate;
  out.source_path = source_name;
  out.samples = resample(mono, fmt.sample_rate, target_rate);
  if (out.samples.empty()) fail(ErrorCode::EmptyAudio, "audio too short to resample: " + source_name);
  return out;
}

AudioBuffer load_audio(const std::filesystem::path& path, int target_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::Io, "read failed: " + path.string());
  return decode_wav(bytes, target_rate, path.string());
}

std::vector<unsigned char> encode_wav(std::span<const double> interleaved, int channels,
                                      int sample_rate, WavEncoding encoding) {
  if (channels < 1 || channels > 2) fail(ErrorCode::InvalidArgument, "channels must be 1 or 2");
  if (sample_rate <= 0) fail(ErrorCode::InvalidArgument, "sample rate must be positive");
  if (interleaved.size() % static_cast<std::size_t>(channels) != 0) {
    fail(ErrorCode::InvalidArgument, "sample count is not a multiple of the channel count");
  }

  int bits = 16;
  std::uint16_t tag = kFormatPcm;
  switch (encoding) {
    case WavEncoding::Int8: bits = 8; break;
    case WavEncoding::Int16: bits = 16; break;
    case WavEncoding::Int24: bits = 24; break;
    case WavEncoding::Int32: bits = 32; break;
    case WavEncoding::Float32: bits = 32; tag = kFormatFloat; break;
  }
  int bytes_per_sample = bits / 8;
  auto data_size = static_cast<std::uint32_t>(interleaved.size() * bytes_per_sample);

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_size);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, tag);
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, static_cast<std::uint32_t>(sample_rate));
  put_u32(out, static_cast<std::uint32_t>(sample_rate * channels * bytes_per_sample));
  put_u16(out, static_cast<std::uint16_t>(channels * bytes_per_sample));
  put_u16(out, static_cast<std::uint16_t>(bits));
  put_tag(out, "data");
  put_u32(out, data_size);

  for (double x : interleaved) {
    if (encoding == WavEncoding::Float32) {
      float f = static_cast<float>(x);
      std::uint32_t u;
      std::memcpy(&u, &f, sizeof u);
      put_u32(out, u);
      continue;
    }
    double c = std::clamp(x, -1.0, 1.0);
    double scale = std::ldexp(1.0, bits - 1);
    auto v = static_cast<std::int64_t>(std::lround(c * scale));
    v = std::clamp<std::int64_t>(v, -static_cast<std::int64_t>(scale),
                                 static_cast<std::int64_t>(scale) - 1);
    if (bits == 8) {
      out.push_back(static_cast<unsigned char>(v + 128));
    } else {
      auto u = static_cast<std::uint32_t>(v);
      for (int b = 0; b < bytes_per_sample; ++b) {
        out.push_back(static_cast<unsigned char>((u >> (8 * b)) & 0xFF));
      }
    }
  }
  return out;
}

void write_wav(const std::filesystem::path& path, std::span<const double> interleaved,
               int channels, int sample_rate, WavEncoding encoding) {
  auto bytes = encode_wav(interleaved, channels, sample_rate, encoding);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::Io, "write failed: " + path.string());
}

}  // namespace choreo
