#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "chromatope/rational.hpp"

namespace chromatope {

/// Sorted indices into a lattice's vertex list.
using VertexSet = std::vector<std::size_t>;

enum class Family { cube, simplex, corner, product, truncated, custom };

std::string to_string(Family family);

/// Element counts (f_0, ..., f_{n-1}) of a polytope's boundary.
struct FVector {
  std::vector<std::int64_t> counts;

  std::size_t size() const { return counts.size(); }
  std::int64_t operator[](std::size_t k) const { return counts[k]; }
  bool operator==(const FVector&) const = default;
};

std::string to_string(const FVector& f);

/// Exact combinatorial polytope.
///
/// Vertex coordinates are rational coefficients in a diagonal metric: the
/// physical coordinate along axis j is coefficient_j * sqrt(metric_j). Cubes
/// and corners use the unit metric; regular simplices carry the squared
/// heights of the recursive lift so that every squared edge length stays an
/// exact rational.
///
/// Faces are graded by rank 0..dim; rank dim holds the polytope itself.
/// Construction validates the lattice and throws LatticeInconsistent when a
/// face fails to span an affine flat of its rank.
class FaceLattice {
 public:
  FaceLattice(int dim, std::vector<RationalPoint> vertices, std::vector<Rational> metric,
              std::vector<std::vector<VertexSet>> faces, Family family);

  int dim() const { return dim_; }
  Family family() const { return family_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<RationalPoint>& vertices() const { return vertices_; }
  const std::vector<Rational>& metric() const { return metric_; }

  std::span<const VertexSet> faces(int rank) const;
  /// Indices of the rank+1 faces containing face `index` of `rank`.
  std::span<const std::size_t> covers(int rank, std::size_t index) const;

  FVector f_vector() const;
  Rational squared_distance(std::size_t a, std::size_t b) const;
  std::vector<double> physical_coordinates(std::size_t vertex) const;

  /// Index of the face of the given rank with exactly this vertex set, or -1.
  std::ptrdiff_t find_face(int rank, const VertexSet& vertices) const;

 private:
  int dim_;
  Family family_;
  std::vector<RationalPoint> vertices_;
  std::vector<Rational> metric_;
  std::vector<std::vector<VertexSet>> faces_;
  std::vector<std::vector<std::vector<std::size_t>>> covers_;
};

bool is_subset(const VertexSet& inner, const VertexSet& outer);

FaceLattice build_cube(int n);
FaceLattice build_simplex(int n);
FaceLattice cartesian_product(const FaceLattice& p, const FaceLattice& q);
/// Cuts every vertex at parameter t along its incident edges.
FaceLattice truncate_vertices(const FaceLattice& p, const Rational& t);
FaceLattice cube_corner(int n);

/// Alternating sum of the boundary f-vector.
std::int64_t euler_boundary(const FaceLattice& p);

/// Closed forms used as an independent check on constructed lattices.
FVector cube_f_vector(int n);
FVector simplex_f_vector(int n);
std::int64_t binomial(int n, int k);

/// Outward facet inequality a . x <= b in the lattice's coefficient
/// coordinates.
struct RationalHalfSpace {
  RationalPoint normal;
  Rational offset;
};
std::vector<RationalHalfSpace> facet_halfspaces(const FaceLattice& p);

/// Squared heights of the recursive simplex lift for axes 1..n.
std::vector<Rational> simplex_metric(int n);
/// Vertex coefficients of the unit-edge regular n-simplex in simplex_metric(n).
std::vector<RationalPoint> simplex_coefficients(int n);

/// Line-oriented text export; bit-exact.
void write_lattice(std::ostream& out, const FaceLattice& p);
std::string lattice_to_string(const FaceLattice& p);
FaceLattice read_lattice(std::istream& in);

}  // namespace chromatope
