#pragma once

// Binary PGM (P5) images and the cat map acting on the pixel lattice.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace hyperdyn::tools {

inline constexpr int kMaxImageSide = 4096;

struct GrayImage {
  int width = 0;
  int height = 0;
  int maxval = 255;  // 1..65535; above 255 the samples are 16-bit big-endian
  std::vector<std::uint16_t> pixels;  // row-major

  GrayImage() = default;
  GrayImage(int w, int h, int max_value = 255);

  std::uint16_t& at(int col, int row) { return pixels[static_cast<std::size_t>(row) * width + col]; }
  std::uint16_t at(int col, int row) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

GrayImage read_pgm(std::istream& in);
GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(std::ostream& out, const GrayImage& img);

/// out(i, j) = in(A^-n (i, j) mod s) with (i, j) = (column, row); the image
/// must be square. n may be negative.
GrayImage cat_image(const GrayImage& in, long long n);

/// Every pixel distinct (value = row * side + column), 16-bit when needed.
GrayImage index_image(int side);

}  // namespace hyperdyn::tools
