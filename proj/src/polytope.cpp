#include "chromatope/polytope.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "chromatope/error.hpp"

namespace chromatope {

std::string to_string(Family family) {
  switch (family) {
    case Family::cube: return "cube";
    case Family::simplex: return "simplex";
    case Family::corner: return "corner";
    case Family::product: return "product";
    case Family::truncated: return "truncated";
    case Family::custom: return "custom";
  }
  return "custom";
}

namespace {

Family family_from_string(const std::string& name) {
  for (Family f : {Family::cube, Family::simplex, Family::corner, Family::product,
                   Family::truncated, Family::custom}) {
    if (to_string(f) == name) return f;
  }
  throw InvalidArgument("unknown family '" + name + "'");
}

}  // namespace

std::string to_string(const FVector& f) {
  std::string out = "(";
  for (std::size_t k = 0; k < f.counts.size(); ++k) {
    if (k) out += ", ";
    out += std::to_string(f.counts[k]);
  }
  return out + ")";
}

bool is_subset(const VertexSet& inner, const VertexSet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

FaceLattice::FaceLattice(int dim, std::vector<RationalPoint> vertices,
                         std::vector<Rational> metric,
                         std::vector<std::vector<VertexSet>> faces, Family family)
    : dim_(dim),
      family_(family),
      vertices_(std::move(vertices)),
      metric_(std::move(metric)),
      faces_(std::move(faces)) {
  if (dim_ < 1) throw DimensionUnsupported("lattice dimension must be at least 1");
  if (faces_.size() != static_cast<std::size_t>(dim_) + 1) {
    throw LatticeInconsistent("expected faces for ranks 0.." + std::to_string(dim_));
  }
  if (metric_.size() != static_cast<std::size_t>(dim_)) {
    throw LatticeInconsistent("metric length differs from dimension");
  }
  for (const auto& s : metric_) {
    if (s <= 0) throw LatticeInconsistent("metric entries must be positive");
  }
  for (const auto& v : vertices_) {
    if (v.size() != static_cast<std::size_t>(dim_)) {
      throw LatticeInconsistent("vertex coordinate length differs from dimension");
    }
  }

  for (auto& rank_faces : faces_) {
    for (auto& face : rank_faces) {
      std::sort(face.begin(), face.end());
      if (std::adjacent_find(face.begin(), face.end()) != face.end()) {
        throw LatticeInconsistent("face lists a vertex twice");
      }
      if (!face.empty() && face.back() >= vertices_.size()) {
        throw LatticeInconsistent("face references a missing vertex");
      }
    }
    std::sort(rank_faces.begin(), rank_faces.end());
    if (std::adjacent_find(rank_faces.begin(), rank_faces.end()) != rank_faces.end()) {
      throw LatticeInconsistent("duplicate face");
    }
  }

  if (faces_[dim_].size() != 1 || faces_[dim_][0].size() != vertices_.size()) {
    throw LatticeInconsistent("top rank must hold exactly the whole polytope");
  }
  if (faces_[0].size() != vertices_.size()) {
    throw LatticeInconsistent("rank 0 must list every vertex once");
  }
  for (std::size_t i = 0; i < faces_[0].size(); ++i) {
    if (faces_[0][i] != VertexSet{i}) throw LatticeInconsistent("rank 0 faces must be singletons");
  }

  for (int k = 1; k <= dim_; ++k) {
    for (const auto& face : faces_[k]) {
      std::vector<RationalPoint> rows;
      const auto& origin = vertices_[face.front()];
      for (std::size_t i = 1; i < face.size(); ++i) {
        RationalPoint d(dim_);
        for (int j = 0; j < dim_; ++j) d[j] = vertices_[face[i]][j] - origin[j];
        rows.push_back(std::move(d));
      }
      if (rank(std::move(rows)) != static_cast<std::size_t>(k)) {
        throw LatticeInconsistent("rank-" + std::to_string(k) +
                                  " face does not span a flat of that dimension");
      }
    }
  }

  covers_.resize(dim_);
  for (int k = 0; k < dim_; ++k) {
    covers_[k].resize(faces_[k].size());
    for (std::size_t i = 0; i < faces_[k].size(); ++i) {
      for (std::size_t j = 0; j < faces_[k + 1].size(); ++j) {
        if (is_subset(faces_[k][i], faces_[k + 1][j])) covers_[k][i].push_back(j);
      }
      if (covers_[k][i].empty()) {
        throw LatticeInconsistent("rank-" + std::to_string(k) + " face has no cover");
      }
    }
  }
}

std::span<const VertexSet> FaceLattice::faces(int rank) const {
  if (rank < 0 || rank > dim_) throw InvalidArgument("rank out of range");
  return faces_[rank];
}

std::span<const std::size_t> FaceLattice::covers(int rank, std::size_t index) const {
  if (rank < 0 || rank >= dim_) throw InvalidArgument("rank out of range");
  return covers_[rank].at(index);
}

FVector FaceLattice::f_vector() const {
  FVector f;
  for (int k = 0; k < dim_; ++k) f.counts.push_back(static_cast<std::int64_t>(faces_[k].size()));
  return f;
}

Rational FaceLattice::squared_distance(std::size_t a, std::size_t b) const {
  Rational sum(0);
  for (int j = 0; j < dim_; ++j) {
    const Rational d = vertices_.at(a)[j] - vertices_.at(b)[j];
    sum += d * d * metric_[j];
  }
  return sum;
}

std::vector<double> FaceLattice::physical_coordinates(std::size_t vertex) const {
  std::vector<double> out(dim_);
  for (int j = 0; j < dim_; ++j) {
    out[j] = to_double(vertices_.at(vertex)[j]) * std::sqrt(to_double(metric_[j]));
  }
  return out;
}

std::ptrdiff_t FaceLattice::find_face(int rank, const VertexSet& vertices) const {
  const auto list = faces(rank);
  const auto it = std::lower_bound(list.begin(), list.end(), vertices);
  if (it == list.end() || *it != vertices) return -1;
  return it - list.begin();
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

FVector cube_f_vector(int n) {
  FVector f;
  for (int k = 0; k < n; ++k) f.counts.push_back(binomial(n, k) * checked_pow(2, n - k));
  return f;
}

FVector simplex_f_vector(int n) {
  FVector f;
  for (int k = 0; k < n; ++k) f.counts.push_back(binomial(n + 1, k + 1));
  return f;
}

namespace {

void require_dimension(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi) {
    throw DimensionUnsupported(std::string(what) + " dimension " + std::to_string(n) +
                               " outside supported range " + std::to_string(lo) + ".." +
                               std::to_string(hi));
  }
}

// All subsets of {0..count-1}, graded by size - 1.
std::vector<std::vector<VertexSet>> simplex_faces(std::size_t count) {
  std::vector<std::vector<VertexSet>> faces(count);
  for (std::uint32_t mask = 1; mask < (1u << count); ++mask) {
    VertexSet set;
    for (std::size_t i = 0; i < count; ++i) {
      if (mask & (1u << i)) set.push_back(i);
    }
    faces[set.size() - 1].push_back(std::move(set));
  }
  return faces;
}

}  // namespace

FaceLattice build_cube(int n) {
  require_dimension(n, 1, 5, "cube");
  const std::size_t count = std::size_t{1} << n;
  std::vector<RationalPoint> vertices(count, RationalPoint(n));
  for (std::size_t v = 0; v < count; ++v) {
    for (int i = 0; i < n; ++i) vertices[v][i] = Rational((v >> i) & 1u);
  }

  // A face is fixed by its free axes and the values on the remaining ones.
  std::vector<std::vector<VertexSet>> faces(n + 1);
  const std::size_t full = count - 1;
  for (std::size_t free = 0; free < count; ++free) {
    std::map<std::size_t, VertexSet> by_pattern;
    for (std::size_t v = 0; v < count; ++v) by_pattern[v & (full & ~free)].push_back(v);
    const int k = std::popcount(free);
    for (auto& [pattern, set] : by_pattern) faces[k].push_back(std::move(set));
  }
  return FaceLattice(n, std::move(vertices), std::vector<Rational>(n, Rational(1)),
                     std::move(faces), Family::cube);
}

std::vector<Rational> simplex_metric(int n) {
  std::vector<Rational> metric;
  for (int j = 1; j <= n; ++j) metric.emplace_back(j + 1, 2 * j);
  return metric;
}

std::vector<RationalPoint> simplex_coefficients(int n) {
  // Vertex j sits one lift height above the centroid of vertices 0..j-1.
  std::vector<RationalPoint> vertices(n + 1, RationalPoint(n, Rational(0)));
  for (int j = 1; j <= n; ++j) {
    RationalPoint centroid(n, Rational(0));
    for (int i = 0; i < j; ++i) {
      for (int a = 0; a < n; ++a) centroid[a] += vertices[i][a];
    }
    for (auto& c : centroid) c /= j;
    centroid[j - 1] = 1;
    vertices[j] = std::move(centroid);
  }
  return vertices;
}

FaceLattice build_simplex(int n) {
  require_dimension(n, 1, 5, "simplex");
  return FaceLattice(n, simplex_coefficients(n), simplex_metric(n),
                     simplex_faces(static_cast<std::size_t>(n) + 1), Family::simplex);
}

FaceLattice cube_corner(int n) {
  require_dimension(n, 2, 4, "cube corner");
  std::vector<RationalPoint> vertices(n + 1, RationalPoint(n, Rational(0)));
  for (int i = 0; i < n; ++i) vertices[i + 1][i] = 1;
  return FaceLattice(n, std::move(vertices), std::vector<Rational>(n, Rational(1)),
                     simplex_faces(static_cast<std::size_t>(n) + 1), Family::corner);
}

FaceLattice cartesian_product(const FaceLattice& p, const FaceLattice& q) {
  const int n = p.dim() + q.dim();
  if (n > 5) {
    throw DimensionUnsupported("product dimension " + std::to_string(n) + " exceeds 5");
  }
  const std::size_t q_count = q.vertex_count();
  std::vector<RationalPoint> vertices;
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) {
      RationalPoint v = a;
      v.insert(v.end(), b.begin(), b.end());
      vertices.push_back(std::move(v));
    }
  }
  std::vector<Rational> metric = p.metric();
  metric.insert(metric.end(), q.metric().begin(), q.metric().end());

  std::vector<std::vector<VertexSet>> faces(n + 1);
  for (int a = 0; a <= p.dim(); ++a) {
    for (int b = 0; b <= q.dim(); ++b) {
      for (const auto& f : p.faces(a)) {
        for (const auto& g : q.faces(b)) {
          VertexSet set;
          for (auto i : f) {
            for (auto j : g) set.push_back(i * q_count + j);
          }
          faces[a + b].push_back(std::move(set));
        }
      }
    }
  }
  return FaceLattice(n, std::move(vertices), std::move(metric), std::move(faces),
                     Family::product);
}

FaceLattice truncate_vertices(const FaceLattice& p, const Rational& t) {
  if (p.family() != Family::cube && p.family() != Family::simplex &&
      p.family() != Family::corner) {
    throw InvalidArgument("truncation supports cube, simplex and corner lattices only");
  }
  require_dimension(p.dim(), 2, 4, "truncation");
  if (t <= 0 || t > Rational(1, 2)) {
    throw InvalidArgument("truncation parameter must lie in (0, 1/2]");
  }
  const int n = p.dim();
  const std::size_t count = p.vertex_count();

  std::vector<std::vector<std::size_t>> neighbors(count);
  for (const auto& edge : p.faces(1)) {
    neighbors[edge[0]].push_back(edge[1]);
    neighbors[edge[1]].push_back(edge[0]);
  }
  // New vertex (v, w) lies on edge vw at distance t from v.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<RationalPoint> vertices;
  for (std::size_t v = 0; v < count; ++v) {
    std::sort(neighbors[v].begin(), neighbors[v].end());
    for (auto w : neighbors[v]) {
      RationalPoint x(n);
      for (int j = 0; j < n; ++j) {
        x[j] = p.vertices()[v][j] + t * (p.vertices()[w][j] - p.vertices()[v][j]);
      }
      index[{v, w}] = vertices.size();
      vertices.push_back(std::move(x));
    }
  }
  {
    auto sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidArgument("truncation at t = " + to_string(t) + " merges vertices");
    }
  }

  // Cut points of vertex v that lie inside face `face`.
  auto corner_of = [&](std::size_t v, const VertexSet& face) {
    VertexSet set;
    for (auto w : neighbors[v]) {
      if (std::binary_search(face.begin(), face.end(), w)) set.push_back(index.at({v, w}));
    }
    return set;
  };

  std::vector<std::vector<VertexSet>> faces(n + 1);
  for (std::size_t i = 0; i < vertices.size(); ++i) faces[0].push_back({i});
  for (int r = 1; r <= n; ++r) {
    for (const auto& face : p.faces(r)) {
      VertexSet shrunk;
      for (auto v : face) {
        const auto part = corner_of(v, face);
        shrunk.insert(shrunk.end(), part.begin(), part.end());
      }
      faces[r].push_back(std::move(shrunk));
    }
    if (r < n) {
      for (const auto& face : p.faces(r + 1)) {
        for (auto v : face) faces[r].push_back(corner_of(v, face));
      }
    }
  }
  return FaceLattice(n, std::move(vertices), p.metric(), std::move(faces), Family::truncated);
}

std::int64_t euler_boundary(const FaceLattice& p) {
  std::int64_t chi = 0;
  const auto f = p.f_vector();
  for (std::size_t k = 0; k < f.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * f[k];
  return chi;
}

std::vector<RationalHalfSpace> facet_halfspaces(const FaceLattice& p) {
  const int n = p.dim();
  std::vector<RationalHalfSpace> result;
  for (const auto& facet : p.faces(n - 1)) {
    const auto& origin = p.vertices()[facet.front()];
    std::vector<RationalPoint> rows;
    for (std::size_t i = 1; i < facet.size(); ++i) {
      RationalPoint d(n);
      for (int j = 0; j < n; ++j) d[j] = p.vertices()[facet[i]][j] - origin[j];
      rows.push_back(std::move(d));
    }
    auto basis = nullspace(std::move(rows), n);
    if (basis.size() != 1) throw LatticeInconsistent("facet normal is not unique");
    RationalHalfSpace h{std::move(basis.front()), Rational(0)};
    for (int j = 0; j < n; ++j) h.offset += h.normal[j] * origin[j];
    for (std::size_t v = 0; v < p.vertex_count(); ++v) {
      if (std::binary_search(facet.begin(), facet.end(), v)) continue;
      Rational value(0);
      for (int j = 0; j < n; ++j) value += h.normal[j] * p.vertices()[v][j];
      if (value > h.offset) {
        for (auto& a : h.normal) a = -a;
        h.offset = -h.offset;
      }
      break;
    }
    result.push_back(std::move(h));
  }
  return result;
}

void write_lattice(std::ostream& out, const FaceLattice& p) {
  out << "dim " << p.dim() << '\n';
  out << "family " << to_string(p.family()) << '\n';
  out << "metric";
  for (const auto& s : p.metric()) out << ' ' << to_string(s);
  out << '\n';
  out << "vertices " << p.vertex_count() << '\n';
  for (const auto& v : p.vertices()) {
    for (std::size_t j = 0; j < v.size(); ++j) out << (j ? " " : "") << to_string(v[j]);
    out << '\n';
  }
  for (int k = 0; k <= p.dim(); ++k) {
    for (const auto& face : p.faces(k)) {
      out << "face " << k << ':';
      for (auto i : face) out << ' ' << i;
      out << '\n';
    }
  }
}

std::string lattice_to_string(const FaceLattice& p) {
  std::ostringstream out;
  write_lattice(out, p);
  return out.str();
}

namespace {

std::string expect_keyword(std::istream& in, const std::string& keyword) {
  std::string word;
  if (!(in >> word) || word != keyword) {
    throw InvalidArgument("lattice format: expected '" + keyword + "'");
  }
  return word;
}

}  // namespace

FaceLattice read_lattice(std::istream& in) {
  int dim = 0;
  expect_keyword(in, "dim");
  if (!(in >> dim) || dim < 1) throw InvalidArgument("lattice format: bad dimension");
  expect_keyword(in, "family");
  std::string family;
  in >> family;
  expect_keyword(in, "metric");
  std::vector<Rational> metric;
  for (int j = 0; j < dim; ++j) {
    std::string token;
    in >> token;
    metric.push_back(parse_rational(token));
  }
  expect_keyword(in, "vertices");
  std::size_t count = 0;
  if (!(in >> count)) throw InvalidArgument("lattice format: bad vertex count");
  std::vector<RationalPoint> vertices(count);
  for (auto& v : vertices) {
    for (int j = 0; j < dim; ++j) {
      std::string token;
      in >> token;
      v.push_back(parse_rational(token));
    }
  }
  std::vector<std::vector<VertexSet>> faces(dim + 1);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string word, rank_token;
    row >> word >> rank_token;
    if (word != "face" || rank_token.empty() || rank_token.back() != ':') {
      throw InvalidArgument("lattice format: bad face line '" + line + "'");
    }
    const int k = std::stoi(rank_token.substr(0, rank_token.size() - 1));
    if (k < 0 || k > dim) throw InvalidArgument("lattice format: face rank out of range");
    VertexSet face;
    for (std::size_t i; row >> i;) face.push_back(i);
    faces[k].push_back(std::move(face));
  }
  return FaceLattice(dim, std::move(vertices), std::move(metric), std::move(faces),
                     family_from_string(family));
}

}  // namespace chromatope
