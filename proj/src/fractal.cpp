#include "chromatope/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "chromatope/error.hpp"
#include "chromatope/polytope.hpp"

namespace chromatope {

namespace {

void check_rule(const MengerRule& rule) {
  if (rule.d < 1 || rule.d > 4) throw DimensionUnsupported("rule dimension must be 1..4");
  if (rule.m < 0 || rule.m >= rule.d) throw InvalidArgument("rule needs 0 <= m < d");
}

std::int32_t power_of_three(int k) {
  std::int32_t p = 1;
  for (int i = 0; i < k; ++i) p *= 3;
  return p;
}

}  // namespace

std::int64_t kept_per_step(const MengerRule& rule) {
  check_rule(rule);
  std::int64_t total = 0;
  for (int k = 0; k <= rule.m; ++k) total += binomial(rule.d, k) << (rule.d - k);
  return total;
}

int level_ceiling(int d) {
  if (d < 1 || d > 4) throw DimensionUnsupported("box sets support dimensions 1..4");
  return d <= 2 ? 6 : (d == 3 ? 4 : 3);
}

TriadicBoxSet::TriadicBoxSet(int dim, int level, std::vector<Cell> cells)
    : dim_(dim), level_(level), cells_(std::move(cells)) {
  if (level_ < 0 || level_ > level_ceiling(dim_)) {
    throw InvalidArgument("level " + std::to_string(level_) + " exceeds the ceiling " +
                          std::to_string(level_ceiling(dim_)) + " for dimension " +
                          std::to_string(dim_));
  }
  const auto limit = side();
  for (const auto& c : cells_) {
    for (int j = 0; j < 4; ++j) {
      const bool used = j < dim_;
      if ((used && (c[j] < 0 || c[j] >= limit)) || (!used && c[j] != 0)) {
        throw InvalidArgument("cell outside the level grid");
      }
    }
  }
  std::sort(cells_.begin(), cells_.end());
  if (std::adjacent_find(cells_.begin(), cells_.end()) != cells_.end()) {
    throw InvalidArgument("duplicate cell in box set");
  }
}

std::int32_t TriadicBoxSet::side() const { return power_of_three(level_); }

bool TriadicBoxSet::contains(const Cell& cell) const {
  return std::binary_search(cells_.begin(), cells_.end(), cell);
}

TriadicBoxSet iterate(const MengerRule& rule, int level) {
  check_rule(rule);
  if (level < 0 || level > level_ceiling(rule.d)) {
    throw InvalidArgument("level " + std::to_string(level) + " exceeds the ceiling " +
                          std::to_string(level_ceiling(rule.d)) + " for dimension " +
                          std::to_string(rule.d));
  }
  // Digit patterns of the kept subcells.
  std::vector<Cell> patterns;
  const std::int32_t count = power_of_three(rule.d);
  for (std::int32_t code = 0; code < count; ++code) {
    Cell digits{};
    int middle = 0;
    for (int j = 0, rest = code; j < rule.d; ++j, rest /= 3) {
      digits[j] = rest % 3;
      middle += digits[j] == 1;
    }
    if (middle <= rule.m) patterns.push_back(digits);
  }
  std::vector<Cell> cells{Cell{}};
  for (int step = 0; step < level; ++step) {
    std::vector<Cell> next;
    next.reserve(cells.size() * patterns.size());
    for (const auto& parent : cells) {
      for (const auto& digits : patterns) {
        Cell child{};
        for (int j = 0; j < rule.d; ++j) child[j] = 3 * parent[j] + digits[j];
        next.push_back(child);
      }
    }
    cells = std::move(next);
  }
  return TriadicBoxSet(rule.d, level, std::move(cells));
}

TriadicBoxSet product(const TriadicBoxSet& a, const TriadicBoxSet& b) {
  if (a.level() != b.level()) throw InvalidArgument("product needs equal levels");
  const int dim = a.dim() + b.dim();
  if (dim > 4) throw DimensionUnsupported("product exceeds dimension 4");
  std::vector<Cell> cells;
  cells.reserve(a.size() * b.size());
  for (const auto& x : a.cells()) {
    for (const auto& y : b.cells()) {
      Cell c = x;
      for (int j = 0; j < b.dim(); ++j) c[a.dim() + j] = y[j];
      cells.push_back(c);
    }
  }
  return TriadicBoxSet(dim, a.level(), std::move(cells));
}

double fractal_dimension(const MengerRule& rule) {
  return std::log(static_cast<double>(kept_per_step(rule))) / std::log(3.0);
}

Rational measure_proxy(const MengerRule& rule, int k, int level) {
  check_rule(rule);
  if (k <= 0 || k > rule.d) throw InvalidArgument("measure order must satisfy 0 < k <= d");
  if (level < 0) throw InvalidArgument("level must be nonnegative");
  return Rational(checked_pow(kept_per_step(rule), level), checked_pow(3, k * level));
}

FractalColorRep fractal_color_rep(const MengerRule& rule, int level) {
  check_rule(rule);
  if (rule.d < 2) throw DimensionUnsupported("color representation needs d >= 2");
  if (rule.m != rule.d - 2) {
    throw InvalidArgument("only rules with m = d - 2 fold from a lower-dimensional set");
  }
  FractalColorRep out{rule, level, iterate({rule.d - 1, rule.m}, level), {}};
  const int base_dim = rule.d - 1;
  const std::int32_t side = out.base.side();
  const double half = 0.5 / side;
  const Grid grid = uniform_grid(std::vector<double>(static_cast<std::size_t>(base_dim), half),
                                 std::vector<double>(static_cast<std::size_t>(base_dim), 1 - half),
                                 static_cast<std::size_t>(side));
  const ColorField pink = solid_coloring(grid, 1.0, 1.0);
  std::vector<double> erase(grid.size(), 1.0);
  for (const auto& c : out.base.cells()) {
    std::vector<std::size_t> index(static_cast<std::size_t>(base_dim));
    for (int j = 0; j < base_dim; ++j) index[static_cast<std::size_t>(j)] = static_cast<std::size_t>(c[j]);
    erase[grid.flatten(index)] = 0.0;
  }
  const ColorRep rep = uncolor_apply(ColorRep(pink), pink.with_values(std::move(erase)));
  for (int axis = 0; axis < rule.d; ++axis) {
    for (int s = 0; s <= 1; ++s) out.facets.push_back(FacetCopy{axis, s, rep});
  }
  return out;
}

TriadicBoxSet lift(const FractalColorRep& rep) {
  const int d = rep.rule.d;
  const std::int32_t side = rep.base.side();
  std::int64_t total = 1;
  for (int j = 0; j < d; ++j) total *= side;
  std::vector<Cell> kept;
  for (std::int64_t code = 0; code < total; ++code) {
    Cell c{};
    auto rest = code;
    for (int j = 0; j < d; ++j, rest /= side) c[j] = static_cast<std::int32_t>(rest % side);
    bool inside = true;
    for (const auto& facet : rep.facets) {
      std::vector<std::size_t> index;
      for (int j = 0; j < d; ++j) {
        if (j != facet.axis) index.push_back(static_cast<std::size_t>(c[j]));
      }
      if (facet.rep.length(facet.rep.grid().flatten(index)) <= 0) {
        inside = false;
        break;
      }
    }
    if (inside) kept.push_back(c);
  }
  return TriadicBoxSet(d, rep.level, std::move(kept));
}

void write_box_set(std::ostream& out, const TriadicBoxSet& set) {
  out << set.level() << ' ' << set.dim() << '\n';
  for (const auto& c : set.cells()) {
    for (int j = 0; j < set.dim(); ++j) out << (j ? " " : "") << c[j];
    out << '\n';
  }
  if (!out) throw IoError("box set write failed");
}

}  // namespace chromatope
