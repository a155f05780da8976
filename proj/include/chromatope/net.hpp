#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chromatope/polytope.hpp"

namespace chromatope {

/// One facet copy laid out in net space.
///
/// Local vertex i is source vertex `source_vertices[i]` and sits at
/// `positions[i]` (rational coefficients in the net's metric). The placement
/// is the affine isometry fixed by these images.
struct PlacedCell {
  std::size_t source_facet = 0;
  VertexSet source_vertices;
  std::vector<RationalPoint> positions;
};

/// Identification of a sub-face shared by two placed cells.
struct Gluing {
  std::size_t cell_a = 0;
  std::size_t cell_b = 0;
  int rank = 0;
  std::size_t source_face = 0;  // index into source.faces(rank)
  VertexSet local_a;            // local vertex indices in cell_a
  VertexSet local_b;
};

class Net {
 public:
  Net(FaceLattice source, std::vector<Rational> metric, std::vector<PlacedCell> cells);

  const FaceLattice& source() const { return source_; }
  int dim() const { return source_.dim() - 1; }
  const std::vector<Rational>& metric() const { return metric_; }
  const std::vector<PlacedCell>& cells() const { return cells_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }

  /// Number of gluing classes (transitively closed) among cell sub-faces
  /// of each rank 0..dim-1.
  std::vector<std::int64_t> gluing_class_counts() const;

  /// Cell adjacency induced by gluings along rank dim-1 sub-faces.
  std::vector<std::vector<std::size_t>> cell_adjacency() const;

 private:
  FaceLattice source_;
  std::vector<Rational> metric_;
  std::vector<PlacedCell> cells_;
  std::vector<Gluing> gluings_;
};

/// Cross unfolding for cubes, central-facet star unfolding for simplices.
Net unfold(const FaceLattice& p);

/// Number of facets containing each rank-k face; throws LatticeInconsistent
/// when that number is not uniform.
std::int64_t facet_incidence_divisor(const FaceLattice& p, int k);

/// f_{n-1}(P) * f_k(facet) / divisor, with exact division enforced.
struct NetCount {
  std::int64_t cells = 0;
  std::int64_t per_cell = 0;
  std::int64_t divisor = 0;
  std::int64_t count = 0;
};
NetCount count_via_net_detail(const FaceLattice& p, int k);
std::int64_t count_via_net(const FaceLattice& p, int k);

enum class Layer { standard, reverse };
enum class ColorStyle { uniform, gradated };

std::string to_string(Layer layer);
std::string to_string(ColorStyle style);

struct CellColor {
  Layer layer = Layer::standard;
  ColorStyle style = ColorStyle::uniform;
  std::size_t position = 0;  // index into ColoredNet::positions
};

/// Anchor facet of a cell's color representation, in net coordinates.
struct AnchorPosition {
  std::vector<RationalPoint> vertices;  // sorted
  std::int64_t multiplicity = 0;
};

struct ColoredNet {
  Net net;
  std::vector<CellColor> cell_colors;
  std::vector<AnchorPosition> positions;
};

/// Colors a net produced by unfold.
///
/// Cube cells are uniform standard and anchor on their lower facet along the
/// last net axis. Simplex cells are gradated; the central cell is standard and
/// anchors on its base, every other cell is reverse and anchors on the hinge
/// it shares with the central cell. Coincident anchors are counted, never
/// merged, so the cell reflected across the base doubles the center.
ColoredNet color_net(const Net& net);

/// True when the two cells' interiors are disjoint, decided exactly by a
/// separating facet hyperplane.
bool cells_interiors_disjoint(const Net& net, std::size_t a, std::size_t b);

void write_net(std::ostream& out, const Net& net);
std::string net_to_string(const Net& net);

}  // namespace chromatope
