#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "choreo/error.hpp"
#include "choreo/features.hpp"
#include "choreo/image.hpp"

namespace choreo {

MusicMatrix music_matrix(const MfccFrames& frames) {
  const std::size_t m = frames.size();
  if (m < 2) fail(ErrorCode::InvalidArgument, "music matrix needs at least 2 frames");

  MusicMatrix out;
  out.values = SquareMatrix(m, 1.0);
  out.frame_hop_seconds = frames.hop_seconds();
  constexpr double kTiny = std::numeric_limits<double>::min();

  for (std::size_t i = 0; i < m; ++i) {
    auto a = frames.frame(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      auto b = frames.frame(j);
      double ss = 0.0;
      for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        ss += d * d;
      }
      double v = std::max(std::exp(-std::sqrt(ss)), kTiny);
      out.values(i, j) = v;
      out.values(j, i) = v;
    }
  }
  return out;
}

std::string music_csv(const MusicMatrix& music) {
  std::string out;
  const std::size_t m = music.m();
  out.reserve(m * m * 12);
  char buf[32];
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (j) out.push_back(',');
      auto res = std::to_chars(buf, buf + sizeof buf, music.values(i, j));
      out.append(buf, res.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

void write_music_csv(const MusicMatrix& music, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  out << music_csv(music);
  if (!out) fail(ErrorCode::Io, "write failed: " + path.string());
}

void write_music_png(const MusicMatrix& music, const std::filesystem::path& path) {
  const std::size_t m = music.m();
  std::vector<std::uint8_t> gray(m * m);
  for (std::size_t i = 0; i < m * m; ++i) {
    double v = std::clamp(music.values.data()[i], 0.0, 1.0);
    gray[i] = static_cast<std::uint8_t>(std::lround(v * 255.0));
  }
  write_gray_png(gray, static_cast<int>(m), static_cast<int>(m), path);
}

}  // namespace choreo
