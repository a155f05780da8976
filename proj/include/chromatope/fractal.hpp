#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "chromatope/chroma.hpp"
#include "chromatope/rational.hpp"

namespace chromatope {

/// Subdivision rule: split each box into 3^d subboxes and keep those with at
/// most m middle coordinates. (1,0) is the Cantor set, (2,0) Cantor dust,
/// (2,1) the carpet, (3,1) the Menger sponge, (3,2) the Sierpinski cube and
/// (4,2) the four-dimensional sponge.
struct MengerRule {
  int d = 1;
  int m = 0;
};

/// Boxes kept per subdivision: sum_{k <= m} C(d,k) 2^(d-k).
std::int64_t kept_per_step(const MengerRule& rule);

/// Highest supported level for a dimension: 6 up to d = 2, 4 for 3, 3 for 4.
int level_ceiling(int d);

using Cell = std::array<std::int32_t, 4>;  // unused trailing coordinates are 0

/// Boxes of side 3^-level indexed by integer position, kept sorted.
class TriadicBoxSet {
 public:
  TriadicBoxSet(int dim, int level, std::vector<Cell> cells);

  int dim() const { return dim_; }
  int level() const { return level_; }
  std::size_t size() const { return cells_.size(); }
  const std::vector<Cell>& cells() const { return cells_; }
  std::int32_t side() const;  // 3^level
  bool contains(const Cell& cell) const;
  bool operator==(const TriadicBoxSet&) const = default;

 private:
  int dim_;
  int level_;
  std::vector<Cell> cells_;
};

TriadicBoxSet iterate(const MengerRule& rule, int level);
TriadicBoxSet product(const TriadicBoxSet& a, const TriadicBoxSet& b);
double fractal_dimension(const MengerRule& rule);

/// Total k-volume of the level-n boxes: N^n / 3^(k n).
Rational measure_proxy(const MengerRule& rule, int k, int level);

/// One copy folded onto a facet of the unit d-cube.
struct FacetCopy {
  int axis = 0;  // facet normal
  int side = 0;  // 0 or 1
  ColorRep rep;  // over the remaining d-1 axes, one sample per box center
};

/// The d-dimensional set as cube folding of colored facets: each facet
/// carries pink coloring with pink uncoloring over the boxes missing from
/// the (d-1)-dimensional set of the rule (d-1, m). Requires m = d - 2, the
/// rules whose complement is a union of straight tunnels.
struct FractalColorRep {
  MengerRule rule;
  int level = 0;
  TriadicBoxSet base;
  std::vector<FacetCopy> facets;
};

FractalColorRep fractal_color_rep(const MengerRule& rule, int level);

/// Boxes whose fiber is nonempty in every facet copy.
TriadicBoxSet lift(const FractalColorRep& rep);

/// Header "level dim", then one cell per line.
void write_box_set(std::ostream& out, const TriadicBoxSet& set);

}  // namespace chromatope
