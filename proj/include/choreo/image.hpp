#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace choreo {

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

/// 8-bit RGB raster, row-major, top row first.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  Image() = default;
  Image(int w, int h, Rgb fill = {255, 255, 255});

  Rgb at(int x, int y) const {
    const std::uint8_t* p = rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    return {p[0], p[1], p[2]};
  }
  void set(int x, int y, Rgb c) {
    if (x < 0 || y < 0 || x >= width || y >= height) return;
    std::uint8_t* p = rgb.data() + 3 * (static_cast<std::size_t>(y) * width + x);
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  bool operator==(const Image&) const = default;
};

/// PNG writers emit no timestamp or text chunks, so output is a pure
/// function of the pixels.
void write_png(const Image& image, const std::filesystem::path& path);
void write_gray_png(std::span<const std::uint8_t> gray, int width, int height,
                    const std::filesystem::path& path);

/// frame_000000.png, frame_000001.png, ... inside `dir` (created if missing).
void write_png_frames(std::span<const Image> frames, const std::filesystem::path& dir);

/// Animated GIF, one global 256-entry palette, looping, per-frame delay of
/// round(100 / fps) centiseconds. Frames must share dimensions.
std::vector<std::uint8_t> encode_gif(std::span<const Image> frames, double fps);
void write_gif(std::span<const Image> frames, double fps, const std::filesystem::path& path);

}  // namespace choreo
