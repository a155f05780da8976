#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "chromatope/net.hpp"
#include "chromatope/polytope.hpp"

namespace chromatope {

enum class Sign { color, uncolor };
std::string to_string(Sign sign);

/// Axis-aligned sample lattice. Samples sit on nodes: axis j has samples[j]
/// points spread evenly over [lo[j], hi[j]] including both ends (a single
/// sample sits at lo). Flat indices run with axis 0 fastest.
struct Grid {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<std::size_t> samples;

  std::size_t dim() const { return samples.size(); }
  std::size_t size() const;
  double coordinate(std::size_t axis, std::size_t i) const;
  double step(std::size_t axis) const;
  std::vector<double> point(std::size_t flat) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::vector<std::size_t>& index) const;
  bool operator==(const Grid&) const = default;
};

/// Grid with the same number of samples on every axis of a box.
Grid uniform_grid(std::vector<double> lo, std::vector<double> hi, std::size_t samples);

/// 1024 per axis for bases up to dimension 2, 128 for 3.
std::size_t default_resolution(std::size_t base_dim);

/// Scalar color values over a base grid.
class ColorField {
 public:
  ColorField(Grid grid, std::vector<double> values, double vmax, int weight_den = 1,
             Layer layer = Layer::standard, Sign sign = Sign::color);

  std::size_t base_dim() const { return grid_.dim(); }
  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t flat) const { return values_[flat]; }
  double vmax() const { return vmax_; }
  int weight_den() const { return weight_den_; }
  Layer layer() const { return layer_; }
  Sign sign() const { return sign_; }

  /// Piecewise-linear interpolation along a 1D grid; 0 outside the domain.
  double interpolate(double s) const;

  ColorField with_values(std::vector<double> values) const;
  ColorField with_sign(Sign sign) const;
  ColorField with_layer(Layer layer) const;
  ColorField with_weight_den(int n) const;

 private:
  Grid grid_;
  std::vector<double> values_;
  double vmax_;
  int weight_den_;
  Layer layer_;
  Sign sign_;
};

/// A colored field together with the uncoloring that raises each fiber's
/// lower end. The fiber over a sample is [lo, hi] on the nonnegative
/// half-line, empty when hi <= lo.
class ColorRep {
 public:
  explicit ColorRep(ColorField hi);
  ColorRep(ColorField hi, ColorField lo);

  const ColorField& hi() const { return hi_; }
  const ColorField& lo() const { return lo_; }
  const Grid& grid() const { return hi_.grid(); }
  double length(std::size_t flat) const;

 private:
  ColorField hi_;
  ColorField lo_;
};

ColorField solid_coloring(const Grid& grid, double value, double vmax);

/// Tent over a simplex in the base: zero on its boundary and outside, rising
/// linearly to `peak` at the centroid. The simplex is given by base_dim+1
/// vertices.
ColorField simplex_gradient(const Grid& grid, const std::vector<std::vector<double>>& simplex,
                            double peak, double vmax);

/// Tent on the unit segment sampled at `samples` nodes.
ColorField segment_gradient(std::size_t samples, double peak, double vmax);

ColorRep uncolor_apply(const ColorRep& rep, const ColorField& erase);

/// A 1D field placed in the plane: base coordinate s maps to
/// origin + s * direction and the fiber grows along `normal`.
struct PlacedLayer {
  ColorField field;
  std::array<double, 2> origin{};
  std::array<double, 2> direction{1, 0};
  std::array<double, 2> normal{0, 1};
};

inline constexpr double kOverlayEpsilon = 1e-9;

/// Weights of overlapping 1/n layers over a raster frame.
struct AccumulatedField {
  Grid frame;
  std::vector<double> weight;
  std::vector<std::int32_t> count;

  bool represented(std::size_t flat) const { return weight[flat] >= 1.0 - kOverlayEpsilon; }
};

/// Whether point (x, y) lies in the region lifted from a placed layer.
bool layer_covers(const PlacedLayer& layer, double x, double y);

AccumulatedField overlay(const std::vector<PlacedLayer>& layers, const Grid& frame);

/// Outward facet inequality a . y <= b in physical coordinates.
struct HalfSpace {
  std::vector<double> normal;
  double offset = 0;
};

std::vector<HalfSpace> physical_halfspaces(const FaceLattice& p);

/// Fiber of the body along `axis` over every base sample. The base grid
/// covers the remaining axes in order. Empty fibers give hi = lo = 0.
ColorRep fiber_rep(const std::vector<HalfSpace>& body, std::size_t axis, const Grid& base,
                   double vmax);

/// fiber_rep over the bounding box of the lattice's projection, with vmax
/// the largest fiber end.
ColorRep fiber_rep(const FaceLattice& p, std::size_t axis, std::size_t samples);

/// Restriction to the hyperplane where `axis` sits at sample `index`.
ColorField slice(const ColorField& field, std::size_t axis, std::size_t index);
ColorRep slice(const ColorRep& rep, std::size_t axis, std::size_t index);

using Rgb = std::array<std::uint8_t, 3>;

struct PaletteAnchor {
  double at;
  Rgb color;
};

/// Anchor table of a layer's ramp, at normalized values 0, 1/2 and 1.
const std::vector<PaletteAnchor>& palette_anchors(Layer layer);

Rgb palette_map(double value, double vmax, Layer layer);

/// Text header followed by float64 little-endian samples, axis 0 fastest.
void write_field(std::ostream& out, const ColorField& field);
ColorField read_field(std::istream& in);

}  // namespace chromatope
