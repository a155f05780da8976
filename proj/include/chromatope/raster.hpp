#pragma once

#include <cstdint>
#include <vector>

namespace chromatope {

/// Row-major grid of cells, row 0 at the top.
template <class T>
struct Raster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<T> data;

  Raster() = default;
  Raster(std::size_t w, std::size_t h, T fill = T{}) : width(w), height(h), data(w * h, fill) {}

  T& at(std::size_t x, std::size_t y) { return data[y * width + x]; }
  const T& at(std::size_t x, std::size_t y) const { return data[y * width + x]; }
  bool operator==(const Raster&) const = default;
};

using Mask = Raster<std::uint8_t>;
using Counts = Raster<std::int32_t>;

/// 8-bit RGB image.
struct Image {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row 0 at the top

  Image() = default;
  Image(std::size_t w, std::size_t h);

  std::uint8_t* pixel(std::size_t x, std::size_t y) { return &rgb[3 * (y * width + x)]; }
  const std::uint8_t* pixel(std::size_t x, std::size_t y) const { return &rgb[3 * (y * width + x)]; }
  bool operator==(const Image&) const = default;
};

/// Fraction of cells where the two masks agree; sizes must match.
double agreement(const Mask& a, const Mask& b);

}  // namespace chromatope
