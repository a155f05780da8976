#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "chromatope/error.hpp"
#include "chromatope/star.hpp"

using namespace chromatope;

namespace {

// Winding number by summing signed angles; independent of the crossing rule
// used by reference_star.
int angle_winding(const std::vector<std::array<double, 2>>& path, double x, double y) {
  double total = 0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto& a = path[k];
    const auto& b = path[(k + 1) % path.size()];
    const double ax = a[0] - x, ay = a[1] - y, bx = b[0] - x, by = b[1] - y;
    total += std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

Mask angle_star(int p, int q, const Grid& frame) {
  const auto v = polygon_vertices(p);
  const int loops = std::gcd(p, q);
  const std::size_t w = frame.samples[0], h = frame.samples[1];
  Mask out(w, h);
  for (int start = 0; start < loops; ++start) {
    std::vector<std::array<double, 2>> path;
    for (int k = 0; k < p / loops; ++k) path.push_back(v[static_cast<std::size_t>((start + k * q) % p)]);
    for (std::size_t j = 0; j < h; ++j) {
      for (std::size_t i = 0; i < w; ++i) {
        if (angle_winding(path, frame.coordinate(0, i), frame.coordinate(1, j)) != 0) {
          out.at(i, h - 1 - j) = 1;
        }
      }
    }
  }
  return out;
}

std::pair<std::size_t, std::size_t> pixel_of(const Grid& frame, double x, double y) {
  const auto i = static_cast<std::size_t>(std::lround((x - frame.lo[0]) / frame.step(0)));
  const auto j = static_cast<std::size_t>(std::lround((y - frame.lo[1]) / frame.step(1)));
  return {i, frame.samples[1] - 1 - j};
}

}  // namespace

TEST_CASE("supported specs and their color-bar maxima") {
  const double expected[4] = {std::sqrt(5 + 2 * std::sqrt(5.0)) / 2, std::sqrt(3.0),
                              1 / std::tan(std::numbers::pi / 14) / 2, 1 + std::sqrt(2.0)};
  const int pq[4][2] = {{5, 2}, {6, 2}, {7, 3}, {8, 3}};
  const int n[4] = {3, 4, 3, 4};
  for (int i = 0; i < 4; ++i) {
    const auto spec = star_spec(pq[i][0], pq[i][1]);
    CHECK(spec.n == n[i]);
    CHECK(std::abs(spec.vmax - expected[i]) / expected[i] < 1e-12);
    CHECK(star_layers(spec).size() == static_cast<std::size_t>(pq[i][0]));
  }
  CHECK_THROWS_AS(star_spec(5, 1), InvalidArgument);
  CHECK_THROWS_AS(star_spec(9, 2), InvalidArgument);
  CHECK_THROWS_AS(star_layers(StarSpec{5, 2, 4, 1.0}), InvalidArgument);
}

TEST_CASE("polygon has unit edges") {
  for (int p = 3; p <= 9; ++p) {
    const auto v = polygon_vertices(p);
    for (int k = 0; k < p; ++k) {
      const auto& a = v[static_cast<std::size_t>(k)];
      const auto& b = v[static_cast<std::size_t>((k + 1) % p)];
      CHECK(std::hypot(b[0] - a[0], b[1] - a[1]) == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(v[0][1] == doctest::Approx(v[1][1]));
  }
}

TEST_CASE("layers peak at vmax over the edge midpoint") {
  for (auto [p, q] : {std::pair{5, 2}, {6, 2}, {7, 3}, {8, 3}}) {
    const auto spec = star_spec(p, q);
    for (const auto& layer : star_layers(spec)) {
      CHECK(layer.field.interpolate(0.5) == doctest::Approx(spec.vmax).epsilon(1e-14));
      CHECK(layer.field.weight_den() == spec.n);
    }
  }
}

TEST_CASE("pentagram coverage counts") {
  const auto spec = star_spec(5, 2);
  const auto frame = star_frame(5, 512);
  const auto coverage = coverage_raster(star_layers(spec), frame);
  const auto [cx, cy] = pixel_of(frame, 0.0, 0.0);
  CHECK(coverage.at(cx, cy) == 5);
  const auto v = polygon_vertices(5);
  for (const auto& corner : v) {
    const auto [tx, ty] = pixel_of(frame, 0.9 * corner[0], 0.9 * corner[1]);
    CHECK(coverage.at(tx, ty) == 3);
  }
  CHECK(coverage.at(0, 0) == 0);
  CHECK(coverage.at(511, 511) == 0);
}

TEST_CASE("thresholds are monotone") {
  const auto spec = star_spec(7, 3);
  const auto frame = star_frame(7, 256);
  const auto coverage = coverage_raster(star_layers(spec), frame);
  for (int t = 1; t < 7; ++t) {
    const auto lower = star_threshold(coverage, t);
    const auto upper = star_threshold(coverage, t + 1);
    for (std::size_t i = 0; i < lower.data.size(); ++i) CHECK(upper.data[i] <= lower.data[i]);
  }
}

TEST_CASE("reference stars agree with an angle-sum winding oracle") {
  for (auto [p, q] : {std::pair{5, 2}, {6, 2}, {7, 3}, {8, 3}}) {
    const auto frame = star_frame(p, 200);
    CHECK(agreement(reference_star(p, q, frame), angle_star(p, q, frame)) >= 0.999);
  }
}

TEST_CASE("hexagram is the union of two triangles") {
  const auto frame = star_frame(6, 300);
  const auto star = reference_star(6, 2, frame);
  const auto v = polygon_vertices(6);
  auto inside = [&](int start, double x, double y) {
    for (int k = 0; k < 3; ++k) {
      const auto& a = v[static_cast<std::size_t>((start + 2 * k) % 6)];
      const auto& b = v[static_cast<std::size_t>((start + 2 * k + 2) % 6)];
      if ((b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]) < 0) return false;
    }
    return true;
  };
  std::size_t same = 0;
  for (std::size_t j = 0; j < 300; ++j) {
    for (std::size_t i = 0; i < 300; ++i) {
      const double x = frame.coordinate(0, i), y = frame.coordinate(1, j);
      const bool expect = inside(0, x, y) || inside(1, x, y);
      same += (star.at(i, 299 - j) != 0) == expect;
    }
  }
  CHECK(static_cast<double>(same) / (300.0 * 300.0) >= 0.999);
}

TEST_CASE("star equivalence at full resolution") {
  for (auto [p, q] : {std::pair{5, 2}, {6, 2}, {7, 3}, {8, 3}}) {
    const auto r = run_star(p, q, 1024);
    INFO("{" << p << "/" << q << "}");
    CHECK(r.union_agreement >= 0.995);
    CHECK(r.threshold_agreement >= 0.99);
    CHECK(r.symmetry_agreement >= 0.999);
    CHECK(r.coverage.width == 1024);
    // Every pixel of the star is inside the polygon.
    for (std::size_t i = 0; i < r.star.data.size(); ++i) CHECK(r.star.data[i] <= r.polygon.data[i]);
  }
}

TEST_CASE("symmetry check notices a missing layer") {
  const auto spec = star_spec(5, 2);
  const auto frame = star_frame(5, 256);
  auto layers = star_layers(spec);
  CHECK(rotation_agreement(coverage_raster(layers, frame), layers, frame, 5) >= 0.999);
  layers.pop_back();
  CHECK(rotation_agreement(coverage_raster(layers, frame), layers, frame, 5) < 0.95);
}
