#include <png.h>

#include <cstdio>
#include <memory>

#include "choreo/error.hpp"
#include "choreo/image.hpp"

namespace choreo {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};

void write_rows(const std::filesystem::path& path, int width, int height, int color_type,
                const std::uint8_t* pixels, std::size_t row_bytes) {
  std::unique_ptr<std::FILE, FileCloser> file(std::fopen(path.c_str(), "wb"));
  if (!file) fail(ErrorCode::Io, "cannot write " + path.string());

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) fail(ErrorCode::Io, "libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(ErrorCode::Io, "libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorCode::Io, "PNG encoding failed for " + path.string());
  }

  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < height; ++y) {
    png_write_row(png, const_cast<png_bytep>(pixels + static_cast<std::size_t>(y) * row_bytes));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace

void write_png(const Image& image, const std::filesystem::path& path) {
  if (image.width <= 0 || image.height <= 0) fail(ErrorCode::InvalidArgument, "empty image");
  write_rows(path, image.width, image.height, PNG_COLOR_TYPE_RGB, image.rgb.data(),
             static_cast<std::size_t>(image.width) * 3);
}

void write_gray_png(std::span<const std::uint8_t> gray, int width, int height,
                    const std::filesystem::path& path) {
  if (width <= 0 || height <= 0 || gray.size() != static_cast<std::size_t>(width) * height) {
    fail(ErrorCode::InvalidArgument, "gray buffer does not match dimensions");
  }
  write_rows(path, width, height, PNG_COLOR_TYPE_GRAY, gray.data(), static_cast<std::size_t>(width));
}

void write_png_frames(std::span<const Image> frames, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  char name[32];
  for (std::size_t i = 0; i < frames.size(); ++i) {
    std::snprintf(name, sizeof name, "frame_%06zu.png", i);
    write_png(frames[i], dir / name);
  }
}

}  // namespace choreo
