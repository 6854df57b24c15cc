#include "guiact/image.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <fstream>
#include <sstream>

#include "guiact/errors.h"

namespace guiact {
namespace {

constexpr int kHashCols = 9;
constexpr int kHashRows = 8;

// Reads the next whitespace-delimited header integer, skipping # comments.
int ReadHeaderInt(std::string_view bytes, size_t& pos) {
  while (pos < bytes.size()) {
    if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      ++pos;
    } else {
      break;
    }
  }
  long value = 0;
  size_t start = pos;
  while (pos < bytes.size() &&
         std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
    value = value * 10 + (bytes[pos] - '0');
    if (value > 1'000'000) throw InputError("PGM header value too large");
    ++pos;
  }
  if (pos == start) throw InputError("malformed PGM header");
  return static_cast<int>(value);
}

// Overlap of [a0, a1) and [b0, b1).
int64_t Overlap(int64_t a0, int64_t a1, int64_t b0, int64_t b1) {
  return std::max<int64_t>(0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

GrayImage MakeImage(int width, int height, uint8_t fill) {
  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<size_t>(width) * height, fill);
  return img;
}

GrayImage DecodePgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw InputError("not a binary PGM (P5) image");
  }
  size_t pos = 2;
  const int width = ReadHeaderInt(bytes, pos);
  const int height = ReadHeaderInt(bytes, pos);
  const int maxval = ReadHeaderInt(bytes, pos);
  if (width < 1 || height < 1) throw InputError("PGM has zero size");
  if (maxval < 1 || maxval > 65535) throw InputError("PGM maxval out of range");
  if (pos >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw InputError("malformed PGM header");
  }
  ++pos;
  const size_t sample_bytes = maxval > 255 ? 2 : 1;
  const size_t count = static_cast<size_t>(width) * height;
  if (bytes.size() - pos < count * sample_bytes) {
    throw InputError("truncated PGM pixel data");
  }
  GrayImage img = MakeImage(width, height);
  for (size_t i = 0; i < count; ++i) {
    unsigned v = static_cast<unsigned char>(bytes[pos + i * sample_bytes]);
    if (sample_bytes == 2) {
      v = (v << 8) | static_cast<unsigned char>(bytes[pos + i * 2 + 1]);
    }
    if (static_cast<int>(v) > maxval) throw InputError("PGM sample exceeds maxval");
    img.pixels[i] = static_cast<uint8_t>((v * 255u + maxval / 2) / maxval);
  }
  return img;
}

GrayImage LoadPgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open image " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return DecodePgm(buf.str());
}

std::string EncodePgm(const GrayImage& image) {
  std::string out = "P5\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.pixels.data()),
             image.pixels.size());
  return out;
}

void SavePgm(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write image " + path.string());
  const std::string bytes = EncodePgm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

uint64_t PerceptualHash(const GrayImage& image) {
  if (image.width < 2 || image.height < 2) {
    throw InputError("perceptual hash needs at least a 2x2 image");
  }
  const int64_t w = image.width;
  const int64_t h = image.height;
  // Scale x by kHashCols and y by kHashRows: pixel i spans [i*9, i*9+9) and
  // cell c spans [c*w, c*w+w), so every overlap is an integer and every cell
  // has the same area w*h.
  int64_t cells[kHashRows][kHashCols] = {};
  std::vector<int64_t> col_weight(static_cast<size_t>(w) * kHashCols);
  for (int64_t x = 0; x < w; ++x) {
    for (int c = 0; c < kHashCols; ++c) {
      col_weight[x * kHashCols + c] =
          Overlap(x * kHashCols, x * kHashCols + kHashCols, c * w, c * w + w);
    }
  }
  for (int64_t y = 0; y < h; ++y) {
    for (int r = 0; r < kHashRows; ++r) {
      const int64_t wy =
          Overlap(y * kHashRows, y * kHashRows + kHashRows, r * h, r * h + h);
      if (wy == 0) continue;
      for (int64_t x = 0; x < w; ++x) {
        const int64_t v = image.pixels[y * w + x] * wy;
        for (int c = 0; c < kHashCols; ++c) {
          cells[r][c] += v * col_weight[x * kHashCols + c];
        }
      }
    }
  }
  uint64_t hash = 0;
  for (int r = 0; r < kHashRows; ++r) {
    for (int c = 0; c + 1 < kHashCols; ++c) {
      if (cells[r][c] < cells[r][c + 1]) hash |= uint64_t{1} << (r * 8 + c);
    }
  }
  return hash;
}

int HammingDistance(uint64_t a, uint64_t b) { return std::popcount(a ^ b); }

}  // namespace guiact
