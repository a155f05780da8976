#pragma once

#include <array>
#include <vector>

#include "chromatope/chroma.hpp"
#include "chromatope/raster.hpp"

namespace chromatope {

struct StarSpec {
  int p = 0;
  int q = 0;
  int n = 0;
  double vmax = 0;
};

/// The four supported stars: {5/2} and {7/3} from 1/3 layers, {6/2} and
/// {8/3} from 1/4 layers. Throws InvalidArgument otherwise.
StarSpec star_spec(int p, int q);

/// Corners of the unit-edge regular p-gon centered at the origin,
/// counter-clockwise with edge 0 along the bottom.
std::vector<std::array<double, 2>> polygon_vertices(int p);

/// Distance from an edge of the unit p-gon to the farthest point of the
/// polygon, measured from the vertex coordinates.
double apex_distance(int p);

/// Pixel-center frame covering [-1.05 R, 1.05 R]^2 for circumradius R.
Grid star_frame(int p, std::size_t resolution);

/// One 1/n layer per polygon edge, lifted inward. Odd p uses a tent peaking
/// over the edge midpoint (the triangle to the opposite vertex); even p uses
/// uniform coloring (the band to the opposite edge). Both peak at vmax.
std::vector<PlacedLayer> star_layers(const StarSpec& spec, std::size_t samples = 2049);

/// Number of layers covering each pixel center of the frame.
Counts coverage_raster(const std::vector<PlacedLayer>& layers, const Grid& frame);

Mask star_threshold(const Counts& coverage, int n);

/// Pixels inside the filled regular p-gon.
Mask polygon_raster(int p, const Grid& frame);

/// Filled {p/q} star by nonzero winding of its vertex loops. When
/// gcd(p, q) > 1 the star is the compound of gcd(p, q) loops.
Mask reference_star(int p, int q, const Grid& frame);

/// Fraction of pixels whose count matches the layer count at the pixel
/// center rotated by 2 pi / p.
double rotation_agreement(const Counts& coverage, const std::vector<PlacedLayer>& layers,
                          const Grid& frame, int p);

struct StarResult {
  StarSpec spec;
  Grid frame;
  Counts coverage;
  Mask star;
  Mask reference;
  Mask polygon;
  double union_agreement = 0;
  double threshold_agreement = 0;
  double symmetry_agreement = 0;
  double apex = 0;
};

StarResult run_star(int p, int q, std::size_t resolution);

}  // namespace chromatope
