#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chromatope/chroma.hpp"
#include "chromatope/fractal.hpp"
#include "chromatope/net.hpp"
#include "chromatope/raster.hpp"

namespace chromatope {

/// Binary pixmap: "P6\n<w> <h>\n255\n" then RGB bytes.
std::string encode_ppm(const Image& image);
/// Plain bitmap, 1 for set cells; text lines stay within 70 characters.
std::string encode_pbm(const Mask& mask);
/// Plain graymap of counts in [0, maxval].
std::string encode_pgm(const Counts& counts, int maxval);

void write_file(const std::filesystem::path& path, const std::string& bytes);

/// Uncolored samples are striped: pixels with (x + y) % 8 < 4 show the lower
/// end's color lightened halfway to white.
bool hatched(std::size_t x, std::size_t y);
Rgb lighten(Rgb color);

/// Palette image of the hi field. A 2D base maps axis 0 to columns and axis 1
/// to rows, larger values upward; a 1D base becomes a strip `strip_height`
/// tall; a point becomes a square of that size.
Image render_field(const ColorRep& rep, std::size_t strip_height = 32);

struct ColorBar {
  Image image;
  std::vector<std::string> labels;  // "row value", one per anchor tick
};

/// Vertical legend with vmax at the top. Ticks occupy the last three
/// columns of each anchor row.
ColorBar render_colorbar(double vmax, Layer layer = Layer::standard, std::size_t width = 32,
                         std::size_t height = 256);

/// Dense voxel export of a 3D-base color rep: text header and float32
/// little-endian payload (hi channel, then lo when any sample is uncolored).
struct VoxelExport {
  std::string header;
  std::string payload;
};
VoxelExport export_voxels(const ColorRep& rep);
/// Writes <stem>.vox.txt and <stem>.vox.bin.
void write_voxels(const std::filesystem::path& stem, const ColorRep& rep);

/// render_field of every slice across `axis`.
std::vector<Image> render_slices(const ColorRep& rep, std::size_t axis);

/// Colored net layout for sources of dimension 2 or 3. Cells are outlined in
/// gray; each anchor is drawn in its cell's color rep; coincident anchors are
/// shifted 8 pixels apart and marked with a white square.
Image render_net(const ColoredNet& net, double pixels_per_unit = 96);

/// Pink boxes on black. Sets above dimension 2 are cut at `slice` (box
/// indices for axes 2 and up).
Image render_box_set(const TriadicBoxSet& set, std::size_t pixels_per_cell,
                     const std::vector<std::int32_t>& slice = {});

Image render_mask(const Mask& mask, Rgb on, Rgb off);

}  // namespace chromatope
