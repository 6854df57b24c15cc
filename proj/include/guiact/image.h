#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace guiact {

// 8-bit grayscale raster, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;

  uint8_t at(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
  uint8_t& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }

  bool operator==(const GrayImage&) const = default;
};

GrayImage MakeImage(int width, int height, uint8_t fill = 0);

// Binary PGM (P5). 16-bit samples are scaled down to 8 bits. Throws
// InputError on malformed data.
GrayImage DecodePgm(std::string_view bytes);
GrayImage LoadPgm(const std::filesystem::path& path);
std::string EncodePgm(const GrayImage& image);
void SavePgm(const GrayImage& image, const std::filesystem::path& path);

// Difference hash. The image is box-averaged onto a 9x8 grid (9 columns, 8
// rows); bit r*8+c is set iff cell(r, c) < cell(r, c + 1). Cell sums are
// computed exactly in integer arithmetic, so a constant image hashes to 0.
uint64_t PerceptualHash(const GrayImage& image);

int HammingDistance(uint64_t a, uint64_t b);

}  // namespace guiact
