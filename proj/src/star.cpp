#include "chromatope/star.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "chromatope/error.hpp"

namespace chromatope {

namespace {

double circumradius(int p) { return 0.5 / std::sin(std::numbers::pi / p); }

// Frame sample (i, j) counts j upward; raster rows count downward.
template <class T, class F>
Raster<T> rasterize(const Grid& frame, F&& f) {
  const std::size_t w = frame.samples[0], h = frame.samples[1];
  Raster<T> out(w, h);
  for (std::size_t j = 0; j < h; ++j) {
    const double y = frame.coordinate(1, j);
    for (std::size_t i = 0; i < w; ++i) out.at(i, h - 1 - j) = f(frame.coordinate(0, i), y);
  }
  return out;
}

}  // namespace

StarSpec star_spec(int p, int q) {
  const int supported[4][3] = {{5, 2, 3}, {6, 2, 4}, {7, 3, 3}, {8, 3, 4}};
  for (const auto& s : supported) {
    if (s[0] == p && s[1] == q) return StarSpec{p, q, s[2], apex_distance(p)};
  }
  throw InvalidArgument("unsupported star {" + std::to_string(p) + "/" + std::to_string(q) +
                        "}; supported: 5/2, 6/2, 7/3, 8/3");
}

std::vector<std::array<double, 2>> polygon_vertices(int p) {
  if (p < 3) throw InvalidArgument("polygon needs at least 3 sides");
  const double r = circumradius(p);
  std::vector<std::array<double, 2>> out;
  for (int k = 0; k < p; ++k) {
    const double theta = -std::numbers::pi / 2 - std::numbers::pi / p + 2 * std::numbers::pi * k / p;
    out.push_back({r * std::cos(theta), r * std::sin(theta)});
  }
  return out;
}

double apex_distance(int p) {
  const auto v = polygon_vertices(p);
  // Edge 0 is horizontal at the bottom, so the farthest point is the top.
  double top = v[0][1];
  for (const auto& x : v) top = std::max(top, x[1]);
  return top - v[0][1];
}

Grid star_frame(int p, std::size_t resolution) {
  if (resolution < 2) throw InvalidArgument("star resolution must be at least 2");
  const double half = 1.05 * circumradius(p);
  const double pixel = 2 * half / static_cast<double>(resolution);
  const double lo = -half + pixel / 2;
  return uniform_grid({lo, lo}, {-lo, -lo}, resolution);
}

std::vector<PlacedLayer> star_layers(const StarSpec& spec, std::size_t samples) {
  const auto checked = star_spec(spec.p, spec.q);
  if (checked.n != spec.n) throw InvalidArgument("weight denominator does not match the star");
  const auto v = polygon_vertices(spec.p);
  const double vmax = checked.vmax;
  const ColorField profile =
      (spec.p % 2 == 1 ? segment_gradient(samples, vmax, vmax)
                       : solid_coloring(uniform_grid({0.0}, {1.0}, samples), vmax, vmax))
          .with_weight_den(spec.n);
  std::vector<PlacedLayer> layers;
  for (int k = 0; k < spec.p; ++k) {
    const auto& a = v[static_cast<std::size_t>(k)];
    const auto& b = v[static_cast<std::size_t>((k + 1) % spec.p)];
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double len = std::hypot(dx, dy);
    PlacedLayer layer{profile, a, {dx / len, dy / len}, {-dy / len, dx / len}};
    layers.push_back(std::move(layer));
  }
  return layers;
}

Counts coverage_raster(const std::vector<PlacedLayer>& layers, const Grid& frame) {
  return rasterize<std::int32_t>(frame, [&](double x, double y) {
    std::int32_t count = 0;
    for (const auto& layer : layers) count += layer_covers(layer, x, y) ? 1 : 0;
    return count;
  });
}

Mask star_threshold(const Counts& coverage, int n) {
  Mask out(coverage.width, coverage.height);
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = coverage.data[i] >= n ? 1 : 0;
  return out;
}

Mask polygon_raster(int p, const Grid& frame) {
  const auto v = polygon_vertices(p);
  return rasterize<std::uint8_t>(frame, [&](double x, double y) -> std::uint8_t {
    for (std::size_t k = 0; k < v.size(); ++k) {
      const auto& a = v[k];
      const auto& b = v[(k + 1) % v.size()];
      if ((b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]) < 0) return 0;
    }
    return 1;
  });
}

Mask reference_star(int p, int q, const Grid& frame) {
  if (p < 3 || q < 1 || 2 * q >= p) throw InvalidArgument("star needs 1 <= q < p/2");
  const auto v = polygon_vertices(p);
  const int loops = std::gcd(p, q);
  const int per_loop = p / loops;
  std::vector<std::vector<std::array<double, 2>>> paths;
  for (int start = 0; start < loops; ++start) {
    std::vector<std::array<double, 2>> path;
    for (int k = 0; k < per_loop; ++k) path.push_back(v[static_cast<std::size_t>((start + k * q) % p)]);
    paths.push_back(std::move(path));
  }
  return rasterize<std::uint8_t>(frame, [&](double x, double y) -> std::uint8_t {
    for (const auto& path : paths) {
      int winding = 0;
      for (std::size_t k = 0; k < path.size(); ++k) {
        const auto& a = path[k];
        const auto& b = path[(k + 1) % path.size()];
        const double cross = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
        if (a[1] <= y && b[1] > y && cross > 0) ++winding;
        if (a[1] > y && b[1] <= y && cross < 0) --winding;
      }
      if (winding != 0) return 1;
    }
    return 0;
  });
}

double rotation_agreement(const Counts& coverage, const std::vector<PlacedLayer>& layers,
                          const Grid& frame, int p) {
  const double c = std::cos(2 * std::numbers::pi / p), s = std::sin(2 * std::numbers::pi / p);
  const std::size_t h = coverage.height;
  std::size_t same = 0;
  for (std::size_t row = 0; row < h; ++row) {
    const double y = frame.coordinate(1, h - 1 - row);
    for (std::size_t col = 0; col < coverage.width; ++col) {
      const double x = frame.coordinate(0, col);
      const double rx = c * x - s * y, ry = s * x + c * y;
      std::int32_t count = 0;
      for (const auto& layer : layers) count += layer_covers(layer, rx, ry) ? 1 : 0;
      same += coverage.at(col, row) == count;
    }
  }
  return coverage.data.empty() ? 1.0 : static_cast<double>(same) / static_cast<double>(coverage.data.size());
}

StarResult run_star(int p, int q, std::size_t resolution) {
  StarResult r;
  r.spec = star_spec(p, q);
  r.frame = star_frame(p, resolution);
  const auto layers = star_layers(r.spec);
  r.coverage = coverage_raster(layers, r.frame);
  r.star = star_threshold(r.coverage, r.spec.n);
  r.reference = reference_star(p, q, r.frame);
  r.polygon = polygon_raster(p, r.frame);
  r.union_agreement = agreement(star_threshold(r.coverage, 1), r.polygon);
  r.threshold_agreement = agreement(r.star, r.reference);
  r.symmetry_agreement = rotation_agreement(r.coverage, layers, r.frame, p);
  r.apex = apex_distance(p);
  return r;
}

}  // namespace chromatope
