#include <doctest.h>

#include <algorithm>
#include <map>

#include "chromatope/error.hpp"
#include "chromatope/net.hpp"

using namespace chromatope;

namespace {

std::vector<FaceLattice> supported() {
  std::vector<FaceLattice> out;
  for (int n = 2; n <= 5; ++n) {
    out.push_back(build_cube(n));
    out.push_back(build_simplex(n));
  }
  return out;
}

// Facet adjacency of the source: facets sharing a ridge.
std::vector<std::vector<std::size_t>> facet_adjacency(const FaceLattice& p) {
  const auto facets = p.faces(p.dim() - 1);
  std::vector<std::vector<std::size_t>> adj(facets.size());
  for (std::size_t a = 0; a < facets.size(); ++a) {
    for (std::size_t b = 0; b < facets.size(); ++b) {
      if (a == b) continue;
      VertexSet meet;
      std::set_intersection(facets[a].begin(), facets[a].end(), facets[b].begin(),
                            facets[b].end(), std::back_inserter(meet));
      if (p.find_face(p.dim() - 2, meet) >= 0) adj[a].push_back(b);
    }
  }
  return adj;
}

}  // namespace

TEST_CASE("unfold cell counts") {
  CHECK(unfold(build_cube(3)).cells().size() == 6);
  CHECK(unfold(build_cube(5)).cells().size() == 10);
  CHECK(unfold(build_simplex(3)).cells().size() == 4);
  for (const auto& p : supported()) {
    CHECK(static_cast<std::int64_t>(unfold(p).cells().size()) == p.f_vector()[p.dim() - 1]);
  }
}

TEST_CASE("unfold preconditions") {
  CHECK_THROWS_AS(unfold(build_cube(1)), DimensionUnsupported);
  CHECK_THROWS_AS(unfold(cube_corner(3)), InvalidArgument);
  CHECK_THROWS_AS(unfold(cartesian_product(build_cube(1), build_cube(1))), InvalidArgument);
}

TEST_CASE("cube 2 unfolds to four unit segments on a line") {
  const auto net = unfold(build_cube(2));
  std::vector<std::pair<Rational, Rational>> spans;
  for (const auto& cell : net.cells()) {
    auto lo = std::min(cell.positions[0][0], cell.positions[1][0]);
    auto hi = std::max(cell.positions[0][0], cell.positions[1][0]);
    spans.emplace_back(lo, hi);
  }
  std::sort(spans.begin(), spans.end());
  CHECK(spans == std::vector<std::pair<Rational, Rational>>{{Rational(-1), Rational(0)},
                                                            {Rational(0), Rational(1)},
                                                            {Rational(1), Rational(2)},
                                                            {Rational(2), Rational(3)}});
}

TEST_CASE("net cells have pairwise disjoint interiors") {
  for (const auto& p : supported()) {
    const auto net = unfold(p);
    for (std::size_t a = 0; a < net.cells().size(); ++a) {
      for (std::size_t b = a + 1; b < net.cells().size(); ++b) {
        CHECK_MESSAGE(cells_interiors_disjoint(net, a, b),
                      to_string(p.family()) << p.dim() << " cells " << a << "," << b);
      }
    }
  }
}

TEST_CASE("overlap detection sees a coincident copy") {
  const auto net = unfold(build_cube(3));
  auto cells = net.cells();
  // Re-place cell 1 onto cell 0's footprint by hand and ask again.
  Net moved(net.source(), net.metric(), cells);
  CHECK(cells_interiors_disjoint(moved, 0, 1));
  cells[1].positions = cells[0].positions;
  cells[1].source_vertices = cells[0].source_vertices;
  CHECK_THROWS_AS(Net(net.source(), net.metric(), cells), LatticeInconsistent);
}

TEST_CASE("gluing classes biject with source faces") {
  for (const auto& p : supported()) {
    const auto net = unfold(p);
    const auto classes = net.gluing_class_counts();
    const auto f = p.f_vector();
    REQUIRE(classes.size() == static_cast<std::size_t>(p.dim() - 1));
    for (int k = 0; k <= p.dim() - 2; ++k) CHECK(classes[k] == f[k]);
  }
}

TEST_CASE("re-folding recovers the facet adjacency graph") {
  for (const auto& p : supported()) {
    const auto net = unfold(p);
    const auto expected = facet_adjacency(p);
    const auto glued = net.cell_adjacency();
    for (std::size_t a = 0; a < glued.size(); ++a) {
      std::vector<std::size_t> image;
      for (auto b : glued[a]) image.push_back(net.cells()[b].source_facet);
      std::sort(image.begin(), image.end());
      CHECK(image == expected[net.cells()[a].source_facet]);
    }
  }
}

TEST_CASE("glued sub-faces are congruent in the net") {
  for (const auto& p : supported()) {
    const auto net = unfold(p);
    for (const auto& g : net.gluings()) {
      const auto& a = net.cells()[g.cell_a];
      const auto& b = net.cells()[g.cell_b];
      for (std::size_t i = 0; i < g.local_a.size(); ++i) {
        for (std::size_t j = i + 1; j < g.local_a.size(); ++j) {
          Rational da(0), db(0);
          for (std::size_t x = 0; x < net.metric().size(); ++x) {
            const auto u = a.positions[g.local_a[i]][x] - a.positions[g.local_a[j]][x];
            const auto w = b.positions[g.local_b[i]][x] - b.positions[g.local_b[j]][x];
            da += u * u * net.metric()[x];
            db += w * w * net.metric()[x];
          }
          CHECK(da == db);
        }
      }
    }
  }
}

TEST_CASE("facet incidence divisor") {
  CHECK(facet_incidence_divisor(build_cube(3), 1) == 2);
  CHECK(facet_incidence_divisor(build_cube(4), 1) == 3);
  CHECK(facet_incidence_divisor(build_cube(5), 1) == 4);
  for (const auto& p : supported()) {
    for (int k = 0; k <= p.dim() - 2; ++k) CHECK(facet_incidence_divisor(p, k) == p.dim() - k);
  }
  CHECK_THROWS_AS(facet_incidence_divisor(build_cube(3), 2), InvalidArgument);
  CHECK_THROWS_AS(facet_incidence_divisor(build_cube(3), -1), InvalidArgument);
}

TEST_CASE("counting via the net") {
  const auto c5 = count_via_net_detail(build_cube(5), 2);
  CHECK(c5.cells == 10);
  CHECK(c5.per_cell == 24);
  CHECK(c5.divisor == 3);
  CHECK(c5.count == 80);
  const auto s5 = count_via_net_detail(build_simplex(5), 1);
  CHECK(s5.cells == 6);
  CHECK(s5.per_cell == 10);
  CHECK(s5.divisor == 4);
  CHECK(s5.count == 15);
  const auto e5 = count_via_net_detail(build_cube(5), 1);
  CHECK(e5.per_cell == 32);
  CHECK(e5.divisor == 4);
  CHECK(e5.count == 80);
  for (const auto& p : supported()) {
    for (int k = 0; k <= p.dim() - 2; ++k) CHECK(count_via_net(p, k) == p.f_vector()[k]);
  }
}

TEST_CASE("non-uniform incidence is reported") {
  // Triangular prism: vertices lie in 3 facets but edges do not all match
  // the same facet shapes, and facet rank-1 counts differ (3 vs 4).
  const auto prism = cartesian_product(build_simplex(2), build_cube(1));
  CHECK(facet_incidence_divisor(prism, 0) == 3);
  CHECK_THROWS_AS(count_via_net(prism, 1), LatticeInconsistent);
}

TEST_CASE("colored cube nets") {
  const auto colored = color_net(unfold(build_cube(4)));
  CHECK(colored.cell_colors.size() == 8);
  for (const auto& c : colored.cell_colors) {
    CHECK(c.layer == Layer::standard);
    CHECK(c.style == ColorStyle::uniform);
  }
  for (const auto& pos : colored.positions) CHECK(pos.multiplicity == 1);

  const auto line = color_net(unfold(build_cube(2)));
  CHECK(line.positions.size() == 4);
  for (const auto& pos : line.positions) CHECK(pos.vertices.size() == 1);
}

TEST_CASE("colored simplex nets double the center") {
  for (int n = 2; n <= 5; ++n) {
    const auto colored = color_net(unfold(build_simplex(n)));
    int standard = 0, reverse = 0;
    for (const auto& c : colored.cell_colors) {
      CHECK(c.style == ColorStyle::gradated);
      (c.layer == Layer::standard ? standard : reverse) += 1;
    }
    CHECK(standard == 1);
    CHECK(reverse == n);
    std::int64_t total = 0;
    for (const auto& pos : colored.positions) total += pos.multiplicity;
    CHECK(total == n + 1);
    const auto center = colored.cell_colors.front().position;
    CHECK(colored.positions[center].multiplicity == 2);
    CHECK(colored.positions.size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("net export lists cells and gluings") {
  const auto text = net_to_string(unfold(build_cube(2)));
  CHECK(text.rfind("net cube 2\nmetric 1/1\ncells 4\n", 0) == 0);
  CHECK(text.find("gluings 4\n") != std::string::npos);
  CHECK(text == net_to_string(unfold(build_cube(2))));
}
