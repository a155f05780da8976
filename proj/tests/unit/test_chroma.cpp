#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "chromatope/chroma.hpp"
#include "chromatope/error.hpp"
#include "oracles/fiber_oracle.hpp"

using namespace chromatope;

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Highest point of the unit equilateral triangle above x, by crossing the
// vertical line with each edge.
double triangle_height(double x) {
  const double v[3][2] = {{0, 0}, {1, 0}, {0.5, kSqrt3 / 2}};
  double best = 0;
  for (int e = 0; e < 3; ++e) {
    const auto& a = v[e];
    const auto& b = v[(e + 1) % 3];
    if (a[0] == b[0]) continue;
    const double u = (x - a[0]) / (b[0] - a[0]);
    if (u < 0 || u > 1) continue;
    best = std::max(best, a[1] + u * (b[1] - a[1]));
  }
  return best;
}

oracle::Points physical_vertices(const FaceLattice& p) {
  oracle::Points out;
  for (std::size_t v = 0; v < p.vertex_count(); ++v) out.push_back(p.physical_coordinates(v));
  return out;
}

// Compares fiber_rep against the vertex-simplex oracle at every sample.
void check_against_oracle(const FaceLattice& p, std::size_t axis, std::size_t samples,
                          double tolerance) {
  const auto rep = fiber_rep(p, axis, samples);
  const auto vertices = physical_vertices(p);
  for (std::size_t flat = 0; flat < rep.grid().size(); ++flat) {
    const auto x = rep.grid().point(flat);
    const auto expected = oracle::fiber(vertices, axis, x);
    if (!expected) {
      CHECK(rep.length(flat) <= tolerance);
      continue;
    }
    CHECK(std::abs(rep.hi()[flat] - expected->second) <= tolerance);
    CHECK(std::abs(rep.lo()[flat] - expected->first) <= tolerance);
  }
}

}  // namespace

TEST_CASE("grid indexing") {
  const Grid g{{0, -1}, {1, 1}, {3, 5}};
  CHECK(g.size() == 15);
  CHECK(g.coordinate(0, 2) == 1.0);
  CHECK(g.coordinate(1, 2) == 0.0);
  for (std::size_t flat = 0; flat < g.size(); ++flat) CHECK(g.flatten(g.unflatten(flat)) == flat);
  CHECK(g.point(1) == std::vector<double>{0.5, -1});
  CHECK(g.point(3) == std::vector<double>{0, -0.5});
  CHECK(default_resolution(2) == 1024);
  CHECK(default_resolution(3) == 128);
}

TEST_CASE("field invariants are enforced") {
  const auto g = uniform_grid({0}, {1}, 4);
  CHECK_THROWS_AS(ColorField(g, {0, 0.5, 1, 1.5}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(ColorField(g, {0, 0, 0, -0.1}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(ColorField(g, {0, 0, 0, 0}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(ColorField(g, {0, 0, 0, 0}, 1.0, 0), InvalidArgument);
  CHECK_THROWS_AS(ColorField(g, {0, 0, 0}, 1.0), GridMismatch);
}

TEST_CASE("solid coloring") {
  const Grid point{};
  const auto pink = solid_coloring(point, 1.0, 1.0);
  CHECK(pink.values() == std::vector<double>{1.0});
  CHECK(pink.weight_den() == 1);
  CHECK(pink.layer() == Layer::standard);
  CHECK(ColorRep(pink).length(0) == 1.0);

  const auto square = solid_coloring(uniform_grid({0, 0}, {1, 1}, 9), 1.0, 1.0);
  for (double v : square.values()) CHECK(v == 1.0);

  const auto empty = solid_coloring(point, 0.0, 1.0);
  CHECK(ColorRep(empty).length(0) == 0.0);
  CHECK_THROWS_AS(solid_coloring(point, 1.5, 1.0), InvalidArgument);
}

TEST_CASE("segment tent matches the equilateral triangle height") {
  const auto tent = segment_gradient(1025, kSqrt3 / 2, kSqrt3 / 2);
  CHECK(tent[512] == doctest::Approx(kSqrt3 / 2).epsilon(1e-15));
  CHECK(tent[0] == 0.0);
  CHECK(tent[1024] == 0.0);
  CHECK(tent[256] == doctest::Approx(kSqrt3 / 4).epsilon(1e-14));
  for (std::size_t i = 0; i < 1025; ++i) {
    CHECK(std::abs(tent[i] - triangle_height(tent.grid().coordinate(0, i))) < 1e-12);
  }
  CHECK_THROWS_AS(segment_gradient(5, 1.0, 0.5), InvalidArgument);
}

TEST_CASE("triangle tent matches the regular tetrahedron fibers") {
  const auto tet = build_simplex(3);
  const auto rep = fiber_rep(tet, 2, 65);
  std::vector<std::vector<double>> base;
  for (std::size_t v = 0; v < 3; ++v) {
    auto y = tet.physical_coordinates(v);
    y.pop_back();
    base.push_back(y);
  }
  const double height = std::sqrt(2.0 / 3.0);
  const auto tent = simplex_gradient(rep.grid(), base, height, rep.hi().vmax());
  for (std::size_t flat = 0; flat < tent.values().size(); ++flat) {
    CHECK(std::abs(tent[flat] - rep.hi()[flat]) < 1e-9);
    CHECK(rep.lo()[flat] == 0.0);
  }
}

TEST_CASE("uncoloring") {
  const Grid point{};
  const auto pink = solid_coloring(point, 1.0, 1.0);
  const auto brown = solid_coloring(point, 0.5, 1.0);
  CHECK(uncolor_apply(ColorRep(pink), pink).length(0) == 0.0);
  CHECK(uncolor_apply(ColorRep(pink), brown).length(0) == 0.5);

  const auto g = uniform_grid({0}, {1}, 11);
  const auto a = solid_coloring(g, 0.3, 1.0);
  const auto cut = uncolor_apply(ColorRep(a), a);
  for (std::size_t i = 0; i < 11; ++i) CHECK(cut.length(i) == 0.0);

  CHECK_THROWS_AS(uncolor_apply(ColorRep(a), solid_coloring(uniform_grid({0}, {1}, 12), 0.3, 1.0)),
                  GridMismatch);
  CHECK_THROWS_AS(uncolor_apply(ColorRep(a), solid_coloring(g, 0.3, 2.0)), GridMismatch);
}

TEST_CASE("uncoloring is idempotent and monotone") {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto g = uniform_grid({0, 0}, {1, 1}, 7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> hi(g.size()), lo(g.size()), e1(g.size()), e2(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      hi[i] = unit(rng);
      lo[i] = hi[i] * unit(rng);
      e1[i] = unit(rng);
      e2[i] = std::min(1.0, e1[i] + unit(rng) * 0.3);
    }
    const ColorField hf(g, hi, 1.0);
    const ColorRep rep(hf, hf.with_values(lo));
    const auto erase1 = hf.with_values(e1);
    const auto erase2 = hf.with_values(e2);
    const auto once = uncolor_apply(rep, erase1);
    const auto twice = uncolor_apply(once, erase1);
    const auto more = uncolor_apply(rep, erase2);
    for (std::size_t i = 0; i < g.size(); ++i) {
      CHECK(once.lo()[i] == twice.lo()[i]);
      CHECK(once.hi()[i] == rep.hi()[i]);
      CHECK(more.length(i) <= once.length(i));
      CHECK(once.length(i) <= rep.length(i));
    }
  }
}

namespace {

std::vector<PlacedLayer> triangle_fold(int weight_den, std::size_t count) {
  const double v[3][2] = {{0, 0}, {1, 0}, {0.5, kSqrt3 / 2}};
  const auto pink = solid_coloring(uniform_grid({0}, {1}, 2), 1.0, 1.0).with_weight_den(weight_den);
  std::vector<PlacedLayer> layers;
  for (std::size_t e = 0; e < count; ++e) {
    const auto& a = v[e % 3];
    const auto& b = v[(e + 1) % 3];
    PlacedLayer layer{pink, {a[0], a[1]}, {b[0] - a[0], b[1] - a[1]}, {}};
    layer.normal = {-layer.direction[1], layer.direction[0]};  // inward for counter-clockwise
    layers.push_back(layer);
  }
  return layers;
}

bool in_triangle(double x, double y) {
  return y >= 0 && kSqrt3 * x - y >= 0 && kSqrt3 * (1 - x) - y >= 0;
}

}  // namespace

TEST_CASE("three 1/3 segments fold into the triangle") {
  const auto frame = uniform_grid({-0.25, -0.25}, {1.25, 1.25}, 301);
  const auto acc = overlay(triangle_fold(3, 3), frame);
  std::size_t agree = 0;
  for (std::size_t flat = 0; flat < frame.size(); ++flat) {
    const auto p = frame.point(flat);
    agree += acc.represented(flat) == in_triangle(p[0], p[1]);
  }
  CHECK(static_cast<double>(agree) / frame.size() >= 0.995);

  const auto fifths = overlay(triangle_fold(5, 3), frame);
  for (std::size_t flat = 0; flat < frame.size(); ++flat) CHECK_FALSE(fifths.represented(flat));
  CHECK_THROWS_AS(overlay({}, frame), InvalidArgument);
}

TEST_CASE("n equal 1/n layers represent the layer, n-1 represent nothing") {
  const auto frame = uniform_grid({-0.5, -0.5}, {1.5, 1.5}, 41);
  const auto tent = segment_gradient(33, 0.75, 1.0);
  for (int n = 1; n <= 6; ++n) {
    const PlacedLayer layer{tent.with_weight_den(n)};
    const std::vector<PlacedLayer> full(static_cast<std::size_t>(n), layer);
    const auto acc = overlay(full, frame);
    for (std::size_t flat = 0; flat < frame.size(); ++flat) {
      const auto p = frame.point(flat);
      CHECK(acc.represented(flat) == layer_covers(layer, p[0], p[1]));
      CHECK(acc.count[flat] == (layer_covers(layer, p[0], p[1]) ? n : 0));
    }
    if (n == 1) continue;
    const std::vector<PlacedLayer> short_one(static_cast<std::size_t>(n - 1), layer);
    const auto less = overlay(short_one, frame);
    for (std::size_t flat = 0; flat < frame.size(); ++flat) CHECK_FALSE(less.represented(flat));
  }
}

TEST_CASE("fiber extraction") {
  SUBCASE("unit square gives solid coloring") {
    const auto rep = fiber_rep(build_cube(2), 1, 33);
    const auto solid = solid_coloring(rep.grid(), 1.0, rep.hi().vmax());
    CHECK(rep.hi().values() == solid.values());
    for (double v : rep.lo().values()) CHECK(v == 0.0);
  }
  SUBCASE("unit cube gives solid coloring") {
    const auto rep = fiber_rep(build_cube(3), 2, 17);
    for (double v : rep.hi().values()) CHECK(v == 1.0);
    for (double v : rep.lo().values()) CHECK(v == 0.0);
  }
  SUBCASE("corners follow 1 - sum x") {
    for (int n = 2; n <= 4; ++n) {
      const auto rep = fiber_rep(cube_corner(n), static_cast<std::size_t>(n - 1), 17);
      const double cell = rep.grid().step(0);
      for (std::size_t flat = 0; flat < rep.grid().size(); ++flat) {
        const auto x = rep.grid().point(flat);
        double h = 1;
        for (double xi : x) h -= xi;
        CHECK(std::abs(rep.hi()[flat] - std::max(h, 0.0)) <= cell);
        CHECK(std::abs(rep.hi()[flat] - std::max(h, 0.0)) < 1e-12);
      }
    }
  }
  SUBCASE("truncated square: gradated top, uncolored sides") {
    const auto cut = truncate_vertices(build_cube(2), Rational(1, 4));
    check_against_oracle(cut, 1, 65, 1e-12);
    const auto rep = fiber_rep(cut, 1, 65);
    CHECK(rep.lo()[4] > 0);   // near the left side cuts
    CHECK(rep.lo()[32] == 0); // middle column reaches the base
    CHECK(rep.hi()[4] < 1);
  }
  SUBCASE("oracle agreement in three and four dimensions") {
    check_against_oracle(build_simplex(3), 2, 21, 1e-9);
    check_against_oracle(cube_corner(3), 2, 21, 1e-9);
    check_against_oracle(truncate_vertices(build_cube(3), Rational(1, 3)), 2, 13, 1e-9);
    check_against_oracle(truncate_vertices(build_simplex(3), Rational(1, 4)), 1, 13, 1e-9);
    check_against_oracle(build_simplex(4), 3, 7, 1e-9);
  }
  SUBCASE("unbounded and misplaced bodies") {
    const std::vector<HalfSpace> slab{{{1, 0}, 1}, {{-1, 0}, 0}, {{0, -1}, 0}};
    CHECK_THROWS_AS(fiber_rep(slab, 1, uniform_grid({0}, {1}, 5), 1.0), UnboundedFiber);
    const std::vector<HalfSpace> low{{{1, 0}, 1}, {{-1, 0}, 0}, {{0, 1}, 1}, {{0, -1}, 1}};
    CHECK_THROWS_AS(fiber_rep(low, 1, uniform_grid({0}, {1}, 5), 1.0), InvalidArgument);
  }
}

TEST_CASE("slicing the 3-cube rep gives the 2-cube rep") {
  const auto cube3 = fiber_rep(build_cube(3), 2, 17);
  const auto cube2 = fiber_rep(build_cube(2), 1, 17);
  for (std::size_t axis = 0; axis < 2; ++axis) {
    for (std::size_t i = 0; i < 17; ++i) {
      const auto line = slice(cube3, axis, i);
      CHECK(line.hi().values() == cube2.hi().values());
      CHECK(line.lo().values() == cube2.lo().values());
    }
  }
  const auto prism = fiber_rep(cartesian_product(build_simplex(2), build_cube(1)), 1, 17);
  const auto tri = fiber_rep(build_simplex(2), 1, 17);
  for (std::size_t i = 0; i < 17; ++i) {
    CHECK(slice(prism, 1, i).hi().values() == tri.hi().values());
  }
  CHECK_THROWS_AS(slice(cube3, 2, 0), InvalidArgument);
  CHECK_THROWS_AS(slice(cube3, 0, 17), InvalidArgument);
}

TEST_CASE("palette") {
  CHECK(palette_map(1.0, 1.0, Layer::standard) == Rgb{255, 105, 180});
  CHECK(palette_map(0.0, 1.0, Layer::standard) == Rgb{0, 0, 0});
  CHECK(palette_map(0.5, 1.0, Layer::standard) == Rgb{139, 69, 19});
  CHECK(palette_map(kSqrt3 / 2, kSqrt3 / 2, Layer::standard) == Rgb{255, 105, 180});
  CHECK(palette_map(0.0, 1.0, Layer::reverse) == Rgb{0, 0, 0});
  CHECK(palette_map(1.0, 1.0, Layer::reverse) == palette_anchors(Layer::reverse).back().color);
  CHECK_THROWS_AS(palette_map(1.5, 1.0, Layer::standard), InvalidArgument);
  CHECK_THROWS_AS(palette_map(-0.1, 1.0, Layer::standard), InvalidArgument);

  for (auto layer : {Layer::standard, Layer::reverse}) {
    const auto& anchors = palette_anchors(layer);
    for (std::size_t a = 0; a + 1 < anchors.size(); ++a) {
      CHECK(anchors[a].at < anchors[a + 1].at);
      for (int c = 0; c < 3; ++c) {
        const bool rising = anchors[a + 1].color[c] >= anchors[a].color[c];
        Rgb prev = palette_map(anchors[a].at, 1.0, layer);
        for (int step = 1; step <= 256; ++step) {
          const double v = anchors[a].at + (anchors[a + 1].at - anchors[a].at) * step / 256.0;
          const Rgb cur = palette_map(v, 1.0, layer);
          CHECK((rising ? cur[c] >= prev[c] : cur[c] <= prev[c]));
          prev = cur;
        }
      }
      CHECK(palette_map(anchors[a].at, 1.0, layer) == anchors[a].color);
    }
  }
}

TEST_CASE("field export") {
  const ColorField f(Grid{{0, 0}, {1, 2}, {2, 2}}, {0, 0.25, 0.5, 1}, 1.0, 3, Layer::reverse,
                     Sign::uncolor);
  std::ostringstream out;
  write_field(out, f);
  const std::string text = out.str();
  const std::string header =
      "chromatope-field\nbase_dim 2\nsamples 2 2\nlo 0 0\nhi 1 2\nvmax 1\nweight_den 3\n"
      "layer reverse\nsign uncolor\ndata float64le 4\n";
  CHECK(text.substr(0, header.size()) == header);
  REQUIRE(text.size() == header.size() + 32);
  // 0.25 = 0x3FD0000000000000, little-endian.
  CHECK(text.substr(header.size() + 8, 8) == std::string("\0\0\0\0\0\0\xd0\x3f", 8));

  std::istringstream in(text);
  const auto back = read_field(in);
  CHECK(back.values() == f.values());
  CHECK(back.grid() == f.grid());
  CHECK(back.weight_den() == 3);
  CHECK(back.layer() == Layer::reverse);
  CHECK(back.sign() == Sign::uncolor);

  std::istringstream truncated(text.substr(0, text.size() - 3));
  CHECK_THROWS_AS(read_field(truncated), IoError);
  std::istringstream junk("not a field\n");
  CHECK_THROWS_AS(read_field(junk), IoError);
}
