#include "chromatope/net.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "chromatope/error.hpp"

namespace chromatope {

std::string to_string(Layer layer) { return layer == Layer::standard ? "standard" : "reverse"; }

std::string to_string(ColorStyle style) {
  return style == ColorStyle::uniform ? "uniform" : "gradated";
}

namespace {

Rational squared_distance(const RationalPoint& a, const RationalPoint& b,
                          const std::vector<Rational>& metric) {
  Rational sum(0);
  for (std::size_t j = 0; j < metric.size(); ++j) {
    const Rational d = a[j] - b[j];
    sum += d * d * metric[j];
  }
  return sum;
}

VertexSet local_indices(const VertexSet& face, const VertexSet& cell_vertices) {
  VertexSet local;
  for (auto v : face) {
    const auto it = std::lower_bound(cell_vertices.begin(), cell_vertices.end(), v);
    local.push_back(static_cast<std::size_t>(it - cell_vertices.begin()));
  }
  return local;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Net::Net(FaceLattice source, std::vector<Rational> metric, std::vector<PlacedCell> cells)
    : source_(std::move(source)), metric_(std::move(metric)), cells_(std::move(cells)) {
  const int n = source_.dim();
  const auto facets = source_.faces(n - 1);
  if (metric_.size() != static_cast<std::size_t>(n - 1)) {
    throw LatticeInconsistent("net metric must have dimension n-1");
  }
  if (cells_.size() != facets.size()) {
    throw LatticeInconsistent("net must hold one cell per facet");
  }
  std::vector<bool> seen(facets.size(), false);
  for (const auto& cell : cells_) {
    if (cell.source_facet >= facets.size() || seen[cell.source_facet]) {
      throw LatticeInconsistent("net cells must map to distinct facets");
    }
    seen[cell.source_facet] = true;
    if (cell.source_vertices != facets[cell.source_facet] ||
        cell.positions.size() != cell.source_vertices.size()) {
      throw LatticeInconsistent("net cell vertices do not match its facet");
    }
    for (std::size_t i = 0; i < cell.positions.size(); ++i) {
      if (cell.positions[i].size() != metric_.size()) {
        throw LatticeInconsistent("net position has wrong dimension");
      }
      for (std::size_t j = i + 1; j < cell.positions.size(); ++j) {
        if (squared_distance(cell.positions[i], cell.positions[j], metric_) !=
            source_.squared_distance(cell.source_vertices[i], cell.source_vertices[j])) {
          throw LatticeInconsistent("net cell placement is not an isometry");
        }
      }
    }
  }

  for (std::size_t a = 0; a < cells_.size(); ++a) {
    for (std::size_t b = a + 1; b < cells_.size(); ++b) {
      const auto& va = cells_[a].source_vertices;
      const auto& vb = cells_[b].source_vertices;
      for (int r = 0; r <= n - 2; ++r) {
        const auto faces = source_.faces(r);
        for (std::size_t f = 0; f < faces.size(); ++f) {
          if (!is_subset(faces[f], va) || !is_subset(faces[f], vb)) continue;
          gluings_.push_back(
              {a, b, r, f, local_indices(faces[f], va), local_indices(faces[f], vb)});
        }
      }
    }
  }
}

std::vector<std::int64_t> Net::gluing_class_counts() const {
  const int n = source_.dim();
  // Nodes are (cell, local sub-face) pairs.
  std::map<std::pair<std::size_t, VertexSet>, std::size_t> node;
  std::vector<int> node_rank;
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    for (int r = 0; r <= n - 2; ++r) {
      for (const auto& face : source_.faces(r)) {
        if (!is_subset(face, cells_[c].source_vertices)) continue;
        node.emplace(std::make_pair(c, local_indices(face, cells_[c].source_vertices)),
                     node_rank.size());
        node_rank.push_back(r);
      }
    }
  }
  DisjointSets sets(node_rank.size());
  for (const auto& g : gluings_) {
    sets.unite(node.at({g.cell_a, g.local_a}), node.at({g.cell_b, g.local_b}));
  }
  std::vector<std::int64_t> counts(std::max(n - 1, 0), 0);
  for (std::size_t i = 0; i < node_rank.size(); ++i) {
    if (sets.find(i) == i) ++counts[node_rank[i]];
  }
  return counts;
}

std::vector<std::vector<std::size_t>> Net::cell_adjacency() const {
  std::vector<std::vector<std::size_t>> adjacency(cells_.size());
  for (const auto& g : gluings_) {
    if (g.rank != source_.dim() - 2) continue;
    adjacency[g.cell_a].push_back(g.cell_b);
    adjacency[g.cell_b].push_back(g.cell_a);
  }
  for (auto& list : adjacency) std::sort(list.begin(), list.end());
  return adjacency;
}

namespace {

Net unfold_cube(const FaceLattice& p) {
  const int n = p.dim();
  const int m = n - 1;  // net dimension
  const auto facets = p.faces(n - 1);

  // Facet index for "axis i fixed at side s".
  auto facet_for = [&](int axis, int side) -> std::size_t {
    for (std::size_t f = 0; f < facets.size(); ++f) {
      bool match = true;
      for (auto v : facets[f]) {
        if (p.vertices()[v][axis] != Rational(side)) {
          match = false;
          break;
        }
      }
      if (match) return f;
    }
    throw LatticeInconsistent("cube facet not found");
  };

  auto place = [&](std::size_t f, auto&& map) {
    PlacedCell cell{f, facets[f], {}};
    for (auto v : facets[f]) cell.positions.push_back(map(p.vertices()[v]));
    return cell;
  };

  std::vector<PlacedCell> cells;
  // Central facet x_{n-1} = 0 lies flat.
  cells.push_back(place(facet_for(n - 1, 0), [&](const RationalPoint& x) {
    return RationalPoint(x.begin(), x.begin() + m);
  }));
  // Side facets x_i = s hinge on the central facet and unfold along net axis i.
  for (int i = 0; i < m; ++i) {
    for (int s = 0; s <= 1; ++s) {
      cells.push_back(place(facet_for(i, s), [&](const RationalPoint& x) {
        RationalPoint y(x.begin(), x.begin() + m);
        y[i] = s == 1 ? Rational(1) + x[n - 1] : -x[n - 1];
        return y;
      }));
    }
  }
  // The far facet x_{n-1} = 1 chains onto the x_0 = 1 side facet.
  cells.push_back(place(facet_for(n - 1, 1), [&](const RationalPoint& x) {
    RationalPoint y(x.begin(), x.begin() + m);
    y[0] = Rational(3) - x[0];
    return y;
  }));
  return Net(p, std::vector<Rational>(m, Rational(1)), std::move(cells));
}

Net unfold_simplex(const FaceLattice& p) {
  const int n = p.dim();
  const int m = n - 1;
  const auto lift = simplex_coefficients(m);
  const auto facets = p.faces(n - 1);

  auto facet_without = [&](std::size_t vertex) -> std::size_t {
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (!std::binary_search(facets[f].begin(), facets[f].end(), vertex)) return f;
    }
    throw LatticeInconsistent("simplex facet not found");
  };

  std::vector<PlacedCell> cells;
  // Central facet: source vertices 0..n-1 at the lifted (n-1)-simplex.
  {
    const auto f = facet_without(static_cast<std::size_t>(n));
    PlacedCell cell{f, facets[f], {}};
    for (int k = 0; k < n; ++k) cell.positions.push_back(lift[k]);
    cells.push_back(std::move(cell));
  }
  // Facet opposite j: reflect the central vertex j across the shared ridge.
  for (int j = 0; j < n; ++j) {
    const auto f = facet_without(static_cast<std::size_t>(j));
    PlacedCell cell{f, facets[f], {}};
    RationalPoint centroid(m, Rational(0));
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      for (int a = 0; a < m; ++a) centroid[a] += lift[k][a];
    }
    for (auto& c : centroid) c /= (n - 1);
    for (auto v : facets[f]) {
      if (v < static_cast<std::size_t>(n)) {
        cell.positions.push_back(lift[v]);
      } else {
        RationalPoint r(m);
        for (int a = 0; a < m; ++a) r[a] = 2 * centroid[a] - lift[j][a];
        cell.positions.push_back(std::move(r));
      }
    }
    cells.push_back(std::move(cell));
  }
  return Net(p, simplex_metric(m), std::move(cells));
}

}  // namespace

Net unfold(const FaceLattice& p) {
  if (p.dim() < 2 || p.dim() > 5) {
    throw DimensionUnsupported("unfold supports dimensions 2..5");
  }
  switch (p.family()) {
    case Family::cube: return unfold_cube(p);
    case Family::simplex: return unfold_simplex(p);
    default: throw InvalidArgument("unfold supports cube and simplex lattices only");
  }
}

std::int64_t facet_incidence_divisor(const FaceLattice& p, int k) {
  const int n = p.dim();
  if (k < 0 || k > n - 2) throw InvalidArgument("rank must lie in 0..dim-2");
  const auto facets = p.faces(n - 1);
  std::int64_t divisor = -1;
  for (const auto& face : p.faces(k)) {
    std::int64_t count = 0;
    for (const auto& facet : facets) count += is_subset(face, facet) ? 1 : 0;
    if (divisor < 0) {
      divisor = count;
    } else if (count != divisor) {
      throw LatticeInconsistent("facet incidence is not uniform at rank " + std::to_string(k));
    }
  }
  return divisor;
}

NetCount count_via_net_detail(const FaceLattice& p, int k) {
  const int n = p.dim();
  NetCount c;
  c.divisor = facet_incidence_divisor(p, k);
  const auto facets = p.faces(n - 1);
  c.cells = static_cast<std::int64_t>(facets.size());
  c.per_cell = -1;
  for (const auto& facet : facets) {
    std::int64_t inside = 0;
    for (const auto& face : p.faces(k)) inside += is_subset(face, facet) ? 1 : 0;
    if (c.per_cell < 0) {
      c.per_cell = inside;
    } else if (inside != c.per_cell) {
      throw LatticeInconsistent("facets differ in their rank-" + std::to_string(k) + " counts");
    }
  }
  const std::int64_t product = c.cells * c.per_cell;
  if (c.divisor == 0 || product % c.divisor != 0) {
    throw LatticeInconsistent(std::to_string(c.cells) + "*" + std::to_string(c.per_cell) +
                              " is not divisible by " + std::to_string(c.divisor));
  }
  c.count = product / c.divisor;
  return c;
}

std::int64_t count_via_net(const FaceLattice& p, int k) { return count_via_net_detail(p, k).count; }

ColoredNet color_net(const Net& net) {
  const int m = net.dim();
  const auto& cells = net.cells();
  const Family family = net.source().family();
  if (family != Family::cube && family != Family::simplex) {
    throw InvalidArgument("color_net expects a cube or simplex net");
  }

  std::vector<CellColor> colors(cells.size());
  std::vector<std::vector<RationalPoint>> anchors(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cell = cells[c];
    if (family == Family::cube) {
      colors[c] = {Layer::standard, ColorStyle::uniform, 0};
      Rational lowest = cell.positions.front()[m - 1];
      for (const auto& x : cell.positions) lowest = std::min(lowest, x[m - 1]);
      for (const auto& x : cell.positions) {
        if (x[m - 1] == lowest) anchors[c].push_back(x);
      }
    } else if (c == 0) {
      colors[c] = {Layer::standard, ColorStyle::gradated, 0};
      for (const auto& x : cell.positions) {
        if (x[m - 1].numerator() == 0) anchors[c].push_back(x);
      }
    } else {
      colors[c] = {Layer::reverse, ColorStyle::gradated, 0};
      const auto& central = cells.front().source_vertices;
      for (std::size_t i = 0; i < cell.source_vertices.size(); ++i) {
        if (std::binary_search(central.begin(), central.end(), cell.source_vertices[i])) {
          anchors[c].push_back(cell.positions[i]);
        }
      }
    }
    std::sort(anchors[c].begin(), anchors[c].end());
  }

  ColoredNet result{net, std::move(colors), {}};
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto it = std::find_if(result.positions.begin(), result.positions.end(),
                           [&](const AnchorPosition& a) { return a.vertices == anchors[c]; });
    if (it == result.positions.end()) {
      result.positions.push_back({anchors[c], 0});
      it = std::prev(result.positions.end());
    }
    ++it->multiplicity;
    result.cell_colors[c].position = static_cast<std::size_t>(it - result.positions.begin());
  }
  return result;
}

namespace {

// Facet hyperplanes of a placed cell in net coefficient coordinates.
std::vector<RationalHalfSpace> cell_hyperplanes(const Net& net, const PlacedCell& cell) {
  const int m = net.dim();
  std::vector<RationalHalfSpace> planes;
  for (const auto& face : net.source().faces(m - 1)) {
    if (!is_subset(face, cell.source_vertices)) continue;
    const auto local = local_indices(face, cell.source_vertices);
    const auto& origin = cell.positions[local.front()];
    std::vector<RationalPoint> rows;
    for (std::size_t i = 1; i < local.size(); ++i) {
      RationalPoint d(m);
      for (int a = 0; a < m; ++a) d[a] = cell.positions[local[i]][a] - origin[a];
      rows.push_back(std::move(d));
    }
    auto basis = nullspace(std::move(rows), m);
    if (basis.size() != 1) throw LatticeInconsistent("degenerate cell facet");
    Rational offset(0);
    for (int a = 0; a < m; ++a) offset += basis.front()[a] * origin[a];
    planes.push_back({std::move(basis.front()), offset});
  }
  return planes;
}

}  // namespace

bool cells_interiors_disjoint(const Net& net, std::size_t a, std::size_t b) {
  const auto& ca = net.cells().at(a);
  const auto& cb = net.cells().at(b);
  auto planes = cell_hyperplanes(net, ca);
  const auto more = cell_hyperplanes(net, cb);
  planes.insert(planes.end(), more.begin(), more.end());

  auto range = [](const RationalHalfSpace& h, const PlacedCell& c) {
    Rational lo(0), hi(0);
    bool first = true;
    for (const auto& x : c.positions) {
      Rational v(0);
      for (std::size_t j = 0; j < x.size(); ++j) v += h.normal[j] * x[j];
      if (first || v < lo) lo = v;
      if (first || v > hi) hi = v;
      first = false;
    }
    return std::make_pair(lo, hi);
  };
  for (const auto& h : planes) {
    const auto [alo, ahi] = range(h, ca);
    const auto [blo, bhi] = range(h, cb);
    if (ahi <= blo || bhi <= alo) return true;
  }
  return false;
}

void write_net(std::ostream& out, const Net& net) {
  out << "net " << to_string(net.source().family()) << ' ' << net.source().dim() << '\n';
  out << "metric";
  for (const auto& s : net.metric()) out << ' ' << to_string(s);
  out << '\n';
  out << "cells " << net.cells().size() << '\n';
  for (std::size_t c = 0; c < net.cells().size(); ++c) {
    const auto& cell = net.cells()[c];
    out << "cell " << c << " facet " << cell.source_facet << '\n';
    for (std::size_t i = 0; i < cell.positions.size(); ++i) {
      out << "vertex " << cell.source_vertices[i];
      for (const auto& x : cell.positions[i]) out << ' ' << to_string(x);
      out << '\n';
    }
  }
  out << "gluings " << net.gluings().size() << '\n';
  for (const auto& g : net.gluings()) {
    out << "glue " << g.cell_a << ' ' << g.cell_b << " rank " << g.rank << " face "
        << g.source_face << " :";
    for (auto i : g.local_a) out << ' ' << i;
    out << " |";
    for (auto i : g.local_b) out << ' ' << i;
    out << '\n';
  }
}

std::string net_to_string(const Net& net) {
  std::ostringstream out;
  write_net(out, net);
  return out.str();
}

}  // namespace chromatope
