#include <cmath>
#include <fstream>
#include <unordered_map>

#include "choreo/error.hpp"
#include "choreo/image.hpp"

namespace choreo {
namespace {

constexpr int kPaletteSize = 256;
constexpr int kMinCodeSize = 8;
constexpr int kClearCode = 1 << kMinCodeSize;
constexpr int kEndCode = kClearCode + 1;
constexpr int kMaxCode = 4095;

void put_u16(std::vector<std::uint8_t>& out, unsigned v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
}

std::uint32_t pack(Rgb c) { return (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | c.b; }

// Exact palette in first-seen order when the frames use at most 256 colours,
// otherwise a fixed 3-3-2 palette.
class Palette {
public:
  explicit Palette(std::span<const Image> frames) {
    for (const Image& f : frames) {
      for (std::size_t i = 0; i < f.rgb.size(); i += 3) {
        Rgb c{f.rgb[i], f.rgb[i + 1], f.rgb[i + 2]};
        if (index_.contains(pack(c))) continue;
        if (colors_.size() == kPaletteSize) {
          exact_ = false;
          break;
        }
        index_.emplace(pack(c), static_cast<std::uint8_t>(colors_.size()));
        colors_.push_back(c);
      }
      if (!exact_) break;
    }
    if (!exact_) {
      colors_.clear();
      for (int i = 0; i < kPaletteSize; ++i) {
        colors_.push_back({static_cast<std::uint8_t>(((i >> 5) & 7) * 255 / 7),
                           static_cast<std::uint8_t>(((i >> 2) & 7) * 255 / 7),
                           static_cast<std::uint8_t>((i & 3) * 255 / 3)});
      }
    }
  }

  std::uint8_t lookup(Rgb c) const {
    if (exact_) return index_.at(pack(c));
    return static_cast<std::uint8_t>((c.r >> 5) << 5 | (c.g >> 5) << 2 | (c.b >> 6));
  }

  void write_table(std::vector<std::uint8_t>& out) const {
    for (int i = 0; i < kPaletteSize; ++i) {
      Rgb c = i < static_cast<int>(colors_.size()) ? colors_[i] : Rgb{0, 0, 0};
      out.push_back(c.r);
      out.push_back(c.g);
      out.push_back(c.b);
    }
  }

private:
  bool exact_ = true;
  std::vector<Rgb> colors_;
  std::unordered_map<std::uint32_t, std::uint8_t> index_;
};

class BitWriter {
public:
  void put(int code, int size) {
    acc_ |= static_cast<std::uint32_t>(code) << bits_;
    bits_ += size;
    while (bits_ >= 8) {
      bytes_.push_back(static_cast<std::uint8_t>(acc_ & 0xFF));
      acc_ >>= 8;
      bits_ -= 8;
    }
  }

  // Flushes and splits into GIF data sub-blocks of at most 255 bytes.
  void finish(std::vector<std::uint8_t>& out) {
    if (bits_ > 0) bytes_.push_back(static_cast<std::uint8_t>(acc_ & 0xFF));
    for (std::size_t pos = 0; pos < bytes_.size(); pos += 255) {
      std::size_t n = std::min<std::size_t>(255, bytes_.size() - pos);
      out.push_back(static_cast<std::uint8_t>(n));
      out.insert(out.end(), bytes_.begin() + static_cast<std::ptrdiff_t>(pos),
                 bytes_.begin() + static_cast<std::ptrdiff_t>(pos + n));
    }
    out.push_back(0);
  }

private:
  std::uint32_t acc_ = 0;
  int bits_ = 0;
  std::vector<std::uint8_t> bytes_;
};

void lzw_encode(const std::vector<std::uint8_t>& indices, std::vector<std::uint8_t>& out) {
  out.push_back(kMinCodeSize);
  BitWriter bits;
  // children[code * 256 + byte] = dictionary code of that extension, 0 if absent.
  std::vector<std::uint16_t> children(static_cast<std::size_t>(kMaxCode + 1) * kPaletteSize, 0);
  std::vector<std::size_t> touched;
  int code_size = kMinCodeSize + 1;
  int last_code = kEndCode;

  bits.put(kClearCode, code_size);
  int current = indices[0];
  for (std::size_t i = 1; i < indices.size(); ++i) {
    std::size_t slot = static_cast<std::size_t>(current) * kPaletteSize + indices[i];
    if (children[slot] != 0) {
      current = children[slot];
      continue;
    }
    bits.put(current, code_size);
    children[slot] = static_cast<std::uint16_t>(++last_code);
    touched.push_back(slot);
    if (last_code >= (1 << code_size)) ++code_size;
    if (last_code == kMaxCode) {
      bits.put(kClearCode, code_size);
      for (std::size_t s : touched) children[s] = 0;
      touched.clear();
      code_size = kMinCodeSize + 1;
      last_code = kEndCode;
    }
    current = indices[i];
  }
  bits.put(current, code_size);
  bits.put(kEndCode, code_size);
  bits.finish(out);
}

}  // namespace

std::vector<std::uint8_t> encode_gif(std::span<const Image> frames, double fps) {
  if (frames.empty()) fail(ErrorCode::InvalidArgument, "GIF needs at least one frame");
  if (!(fps > 0.0)) fail(ErrorCode::InvalidArgument, "fps must be positive");
  const int w = frames[0].width, h = frames[0].height;
  if (w <= 0 || h <= 0 || w > 65535 || h > 65535) fail(ErrorCode::InvalidArgument, "invalid frame size");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i].width != w || frames[i].height != h ||
        frames[i].rgb.size() != static_cast<std::size_t>(w) * h * 3) {
      fail(ErrorCode::InvalidArgument, "frame " + std::to_string(i) + " dimensions differ from frame 0");
    }
  }
  const auto delay = static_cast<unsigned>(std::lround(100.0 / fps));

  Palette palette(frames);
  std::vector<std::uint8_t> out;
  const char* header = "GIF89a";
  out.insert(out.end(), header, header + 6);
  put_u16(out, static_cast<unsigned>(w));
  put_u16(out, static_cast<unsigned>(h));
  out.push_back(0xF7);  // global table, 8-bit colour resolution, 256 entries
  out.push_back(0);     // background index
  out.push_back(0);     // pixel aspect
  palette.write_table(out);

  const std::uint8_t loop[] = {0x21, 0xFF, 0x0B, 'N', 'E', 'T', 'S', 'C', 'A', 'P', 'E',
                               '2',  '.',  '0',  0x03, 0x01, 0x00, 0x00, 0x00};
  out.insert(out.end(), std::begin(loop), std::end(loop));

  std::vector<std::uint8_t> indices(static_cast<std::size_t>(w) * h);
  for (const Image& f : frames) {
    out.insert(out.end(), {0x21, 0xF9, 0x04, 0x04});  // graphic control, disposal: keep
    put_u16(out, delay);
    out.push_back(0);
    out.push_back(0);

    out.push_back(0x2C);
    put_u16(out, 0);
    put_u16(out, 0);
    put_u16(out, static_cast<unsigned>(w));
    put_u16(out, static_cast<unsigned>(h));
    out.push_back(0);

    for (std::size_t p = 0; p < indices.size(); ++p) {
      indices[p] = palette.lookup({f.rgb[3 * p], f.rgb[3 * p + 1], f.rgb[3 * p + 2]});
    }
    lzw_encode(indices, out);
  }
  out.push_back(0x3B);
  return out;
}

void write_gif(std::span<const Image> frames, double fps, const std::filesystem::path& path) {
  auto bytes = encode_gif(frames, fps);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::Io, "write failed: " + path.string());
}

}  // namespace choreo
