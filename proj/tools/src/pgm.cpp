#include "hyperdyn/tools/pgm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "hyperdyn/errors.hpp"
#include "hyperdyn/toral.hpp"
#include "hyperdyn/tools/errors.hpp"

namespace hyperdyn::tools {

namespace {

void skip_space_and_comments(std::istream& in) {
  while (true) {
    const int c = in.peek();
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

int read_header_int(std::istream& in, const char* what) {
  skip_space_and_comments(in);
  long long v = -1;
  if (!(in >> v) || v <= 0 || v > 65535) {
    throw ParseError(std::string("bad PGM header field: ") + what);
  }
  return static_cast<int>(v);
}

}  // namespace

GrayImage::GrayImage(int w, int h, int max_value)
    : width(w), height(h), maxval(max_value), pixels(static_cast<std::size_t>(w) * h, 0) {
  if (w <= 0 || h <= 0 || w > kMaxImageSide || h > kMaxImageSide) {
    throw DomainError("image sides must lie in 1.." + std::to_string(kMaxImageSide));
  }
  if (max_value < 1 || max_value > 65535) throw DomainError("maxval must lie in 1..65535");
}

GrayImage read_pgm(std::istream& in) {
  char magic[2] = {};
  if (!in.read(magic, 2) || magic[0] != 'P' || magic[1] != '5') {
    throw ParseError("not a binary PGM (P5) file");
  }
  const int w = read_header_int(in, "width");
  const int h = read_header_int(in, "height");
  const int maxval = read_header_int(in, "maxval");
  if (!std::isspace(in.get())) throw ParseError("PGM header must end in one whitespace byte");
  GrayImage img(w, h, maxval);
  const bool wide = maxval > 255;
  for (auto& p : img.pixels) {
    const int hi = in.get();
    const int lo = wide ? in.get() : 0;
    if (!in) throw ParseError("truncated PGM raster");
    p = static_cast<std::uint16_t>(wide ? (hi << 8) | lo : hi);
    if (p > maxval) throw ParseError("PGM sample exceeds maxval");
  }
  return img;
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
  const bool wide = img.maxval > 255;
  std::string raster;
  raster.reserve(img.pixels.size() * (wide ? 2 : 1));
  for (std::uint16_t p : img.pixels) {
    if (wide) raster.push_back(static_cast<char>(p >> 8));
    raster.push_back(static_cast<char>(p & 0xff));
  }
  out.write(raster.data(), static_cast<std::streamsize>(raster.size()));
}

GrayImage cat_image(const GrayImage& in, long long n) {
  if (in.width != in.height) throw UsageError("cat_image needs a square image");
  const long long s = in.width;
  const IntMat2 pull = mat_pow_mod(cat_matrix(), -n, BigInt(s));
  const auto a = static_cast<long long>(pull.m11), b = static_cast<long long>(pull.m12);
  const auto c = static_cast<long long>(pull.m21), d = static_cast<long long>(pull.m22);
  GrayImage out = in;
  for (long long j = 0; j < s; ++j) {
    for (long long i = 0; i < s; ++i) {
      const auto si = static_cast<int>((a * i + b * j) % s);
      const auto sj = static_cast<int>((c * i + d * j) % s);
      out.at(static_cast<int>(i), static_cast<int>(j)) = in.at(si, sj);
    }
  }
  return out;
}

GrayImage index_image(int side) {
  const long long count = static_cast<long long>(side) * side;
  if (count > 65536) throw DomainError("index_image needs side <= 256");
  GrayImage img(side, side, count > 256 ? static_cast<int>(count - 1) : 255);
  for (int j = 0; j < side; ++j) {
    for (int i = 0; i < side; ++i) img.at(i, j) = static_cast<std::uint16_t>(j * side + i);
  }
  return img;
}

}  // namespace hyperdyn::tools
