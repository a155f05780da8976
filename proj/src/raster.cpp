#include "chromatope/raster.hpp"

#include "chromatope/error.hpp"

namespace chromatope {

Image::Image(std::size_t w, std::size_t h) : width(w), height(h), rgb(3 * w * h, 0) {}

double agreement(const Mask& a, const Mask& b) {
  if (a.width != b.width || a.height != b.height) throw GridMismatch("mask sizes differ");
  if (a.data.empty()) return 1.0;
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.data.size(); ++i) same += (a.data[i] != 0) == (b.data[i] != 0);
  return static_cast<double>(same) / static_cast<double>(a.data.size());
}

}  // namespace chromatope
