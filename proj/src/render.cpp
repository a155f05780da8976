#include "chromatope/render.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "chromatope/error.hpp"

namespace chromatope {

namespace {

constexpr std::size_t kLineLimit = 70;

// Space-separated tokens wrapped so no line exceeds the limit.
void append_wrapped(std::string& out, const std::vector<std::string>& tokens) {
  std::size_t line = 0;
  for (const auto& t : tokens) {
    if (line > 0 && line + 1 + t.size() > kLineLimit) {
      out += '\n';
      line = 0;
    }
    if (line > 0) {
      out += ' ';
      ++line;
    }
    out += t;
    line += t.size();
  }
  out += '\n';
}

std::string format_value(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
  return std::string(buf, ptr);
}

void put(Image& image, long x, long y, Rgb c) {
  if (x < 0 || y < 0 || x >= static_cast<long>(image.width) || y >= static_cast<long>(image.height)) {
    return;
  }
  auto* p = image.pixel(static_cast<std::size_t>(x), static_cast<std::size_t>(y));
  p[0] = c[0];
  p[1] = c[1];
  p[2] = c[2];
}

void disk(Image& image, double cx, double cy, double r, Rgb c) {
  const long x0 = std::lround(std::floor(cx - r)), x1 = std::lround(std::ceil(cx + r));
  const long y0 = std::lround(std::floor(cy - r)), y1 = std::lround(std::ceil(cy + r));
  for (long y = y0; y <= y1; ++y) {
    for (long x = x0; x <= x1; ++x) {
      const double dx = static_cast<double>(x) - cx, dy = static_cast<double>(y) - cy;
      if (dx * dx + dy * dy <= r * r) put(image, x, y, c);
    }
  }
}

// Segment drawn with a color that may vary along it (u in [0, 1]).
template <class ColorAt>
void stroke(Image& image, double ax, double ay, double bx, double by, double r, ColorAt&& color) {
  const double len = std::hypot(bx - ax, by - ay);
  const auto steps = std::max<long>(1, std::lround(len * 4));
  for (long s = 0; s <= steps; ++s) {
    const double u = static_cast<double>(s) / static_cast<double>(steps);
    const double x = ax + (bx - ax) * u, y = ay + (by - ay) * u;
    if (r <= 0.5) {
      put(image, std::lround(x), std::lround(y), color(u));
    } else {
      disk(image, x, y, r, color(u));
    }
  }
}

void square_mark(Image& image, double cx, double cy) {
  for (long dy = -2; dy <= 2; ++dy) {
    for (long dx = -2; dx <= 2; ++dx) put(image, std::lround(cx) + dx, std::lround(cy) + dy, {255, 255, 255});
  }
}

Rgb sample_color(const ColorRep& rep, std::size_t flat, std::size_t x, std::size_t y) {
  const auto& hi = rep.hi();
  const double lo = rep.lo()[flat];
  if (lo > 0 && hatched(x, y)) return lighten(palette_map(lo, hi.vmax(), hi.layer()));
  return palette_map(hi[flat], hi.vmax(), hi.layer());
}

// Height of the unit-edge regular m-simplex over one of its facets.
double simplex_height(int m) { return std::sqrt((m + 1.0) / (2.0 * m)); }

}  // namespace

std::string encode_ppm(const Image& image) {
  if (image.width == 0 || image.height == 0) throw InvalidArgument("empty image");
  if (image.rgb.size() != 3 * image.width * image.height) throw InvalidArgument("pixel buffer size");
  std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(image.rgb.data()), image.rgb.size());
  return out;
}

std::string encode_pbm(const Mask& mask) {
  if (mask.width == 0 || mask.height == 0) throw InvalidArgument("empty mask");
  std::string out = "P1\n" + std::to_string(mask.width) + " " + std::to_string(mask.height) + "\n";
  for (std::size_t y = 0; y < mask.height; ++y) {
    std::vector<std::string> row;
    for (std::size_t x = 0; x < mask.width; ++x) row.push_back(mask.at(x, y) ? "1" : "0");
    append_wrapped(out, row);
  }
  return out;
}

std::string encode_pgm(const Counts& counts, int maxval) {
  if (counts.width == 0 || counts.height == 0) throw InvalidArgument("empty raster");
  if (maxval < 1 || maxval > 65535) throw InvalidArgument("graymap maxval must be 1..65535");
  std::string out = "P2\n" + std::to_string(counts.width) + " " + std::to_string(counts.height) +
                    "\n" + std::to_string(maxval) + "\n";
  for (std::size_t y = 0; y < counts.height; ++y) {
    std::vector<std::string> row;
    for (std::size_t x = 0; x < counts.width; ++x) {
      const auto v = counts.at(x, y);
      if (v < 0 || v > maxval) throw InvalidArgument("count outside [0, maxval]");
      row.push_back(std::to_string(v));
    }
    append_wrapped(out, row);
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

bool hatched(std::size_t x, std::size_t y) { return (x + y) % 8 < 4; }

Rgb lighten(Rgb color) {
  Rgb out{};
  for (int c = 0; c < 3; ++c) out[c] = static_cast<std::uint8_t>((color[c] + 255 + 1) / 2);
  return out;
}

Image render_field(const ColorRep& rep, std::size_t strip_height) {
  const Grid& g = rep.grid();
  if (g.dim() > 2) throw DimensionUnsupported("render_field handles bases up to dimension 2; export voxels instead");
  if (strip_height == 0) throw InvalidArgument("strip height must be positive");
  if (g.dim() == 0) {
    Image image(strip_height, strip_height);
    for (std::size_t y = 0; y < strip_height; ++y) {
      for (std::size_t x = 0; x < strip_height; ++x) put(image, long(x), long(y), sample_color(rep, 0, x, y));
    }
    return image;
  }
  if (g.dim() == 1) {
    Image image(g.samples[0], strip_height);
    for (std::size_t y = 0; y < strip_height; ++y) {
      for (std::size_t x = 0; x < g.samples[0]; ++x) put(image, long(x), long(y), sample_color(rep, x, x, y));
    }
    return image;
  }
  const std::size_t w = g.samples[0], h = g.samples[1];
  Image image(w, h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      put(image, long(x), long(y), sample_color(rep, (h - 1 - y) * w + x, x, y));
    }
  }
  return image;
}

ColorBar render_colorbar(double vmax, Layer layer, std::size_t width, std::size_t height) {
  if (!(vmax > 0)) throw InvalidArgument("vmax must be positive");
  if (height < 2 || width < 4) throw InvalidArgument("color bar needs height >= 2 and width >= 4");
  ColorBar bar{Image(width, height), {}};
  for (std::size_t y = 0; y < height; ++y) {
    const double v = vmax * static_cast<double>(height - 1 - y) / static_cast<double>(height - 1);
    const Rgb c = palette_map(v, vmax, layer);
    for (std::size_t x = 0; x < width; ++x) put(bar.image, long(x), long(y), c);
  }
  for (const auto& anchor : palette_anchors(layer)) {
    const auto row = static_cast<std::size_t>(std::lround((1 - anchor.at) * static_cast<double>(height - 1)));
    for (std::size_t x = width - 3; x < width; ++x) put(bar.image, long(x), long(row), {255, 255, 255});
    bar.labels.push_back(std::to_string(row) + " " + format_value(anchor.at * vmax));
  }
  return bar;
}

VoxelExport export_voxels(const ColorRep& rep) {
  const Grid& g = rep.grid();
  if (g.dim() != 3) throw DimensionUnsupported("voxel export needs a 3D base");
  const bool uncolored = std::any_of(rep.lo().values().begin(), rep.lo().values().end(),
                                     [](double v) { return v > 0; });
  std::ostringstream header;
  header << "chromatope-voxels\n";
  header << "dims " << g.samples[0] << ' ' << g.samples[1] << ' ' << g.samples[2] << '\n';
  header << "lo " << format_value(g.lo[0]) << ' ' << format_value(g.lo[1]) << ' ' << format_value(g.lo[2]) << '\n';
  header << "hi " << format_value(g.hi[0]) << ' ' << format_value(g.hi[1]) << ' ' << format_value(g.hi[2]) << '\n';
  header << "vmax " << format_value(rep.hi().vmax()) << '\n';
  header << "layer " << to_string(rep.hi().layer()) << '\n';
  header << "channels " << (uncolored ? "hi lo" : "hi") << '\n';
  header << "order axis0-fastest\n";
  header << "data float32le " << g.size() * (uncolored ? 2 : 1) << '\n';

  std::string payload;
  payload.reserve(g.size() * 4 * (uncolored ? 2 : 1));
  auto emit = [&](const ColorField& f) {
    for (double v : f.values()) {
      const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
      for (int b = 0; b < 4; ++b) payload += static_cast<char>((bits >> (8 * b)) & 0xffu);
    }
  };
  emit(rep.hi());
  if (uncolored) emit(rep.lo());
  return {header.str(), std::move(payload)};
}

void write_voxels(const std::filesystem::path& stem, const ColorRep& rep) {
  const auto v = export_voxels(rep);
  write_file(stem.string() + ".vox.txt", v.header);
  write_file(stem.string() + ".vox.bin", v.payload);
}

std::vector<Image> render_slices(const ColorRep& rep, std::size_t axis) {
  if (rep.grid().dim() != 3) throw DimensionUnsupported("slices come from a 3D base");
  std::vector<Image> out;
  for (std::size_t k = 0; k < rep.grid().samples.at(axis); ++k) out.push_back(render_field(slice(rep, axis, k)));
  return out;
}

Image render_net(const ColoredNet& colored, double pixels_per_unit) {
  const Net& net = colored.net;
  const int m = net.dim();
  if (m < 1 || m > 2) throw DimensionUnsupported("net rendering supports sources of dimension 2 and 3");
  if (!(pixels_per_unit > 0)) throw InvalidArgument("scale must be positive");
  std::vector<double> root(net.metric().size());
  for (std::size_t j = 0; j < root.size(); ++j) root[j] = std::sqrt(to_double(net.metric()[j]));
  auto physical = [&](const RationalPoint& p) {
    std::array<double, 2> out{0, 0};
    for (int j = 0; j < m; ++j) out[j] = to_double(p[j]) * root[j];
    return out;
  };

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& cell : net.cells()) {
    for (const auto& p : cell.positions) {
      const auto q = physical(p);
      xmin = std::min(xmin, q[0]);
      xmax = std::max(xmax, q[0]);
      ymin = std::min(ymin, q[1]);
      ymax = std::max(ymax, q[1]);
    }
  }
  const double margin = 24;
  std::size_t max_multiplicity = 1;
  for (const auto& pos : colored.positions) max_multiplicity = std::max<std::size_t>(max_multiplicity, pos.multiplicity);
  const double extra = 8.0 * static_cast<double>(max_multiplicity - 1);
  const auto width = static_cast<std::size_t>(std::ceil((xmax - xmin) * pixels_per_unit + 2 * margin));
  const auto height = static_cast<std::size_t>(
      std::ceil((ymax - ymin) * pixels_per_unit + 2 * margin + (m == 1 ? 24 + extra : extra)));
  Image image(width, height);
  auto to_pixel = [&](const std::array<double, 2>& q) {
    return std::array<double, 2>{margin + (q[0] - xmin) * pixels_per_unit,
                                 static_cast<double>(height) - 1 - margin - (q[1] - ymin) * pixels_per_unit};
  };

  const Rgb outline{90, 90, 90};
  const auto& source = net.source();
  for (const auto& cell : net.cells()) {
    for (std::size_t a = 0; a < cell.positions.size(); ++a) {
      for (std::size_t b = a + 1; b < cell.positions.size(); ++b) {
        VertexSet edge{cell.source_vertices[a], cell.source_vertices[b]};
        std::sort(edge.begin(), edge.end());
        if (source.find_face(1, edge) < 0) continue;
        const auto pa = to_pixel(physical(cell.positions[a]));
        const auto pb = to_pixel(physical(cell.positions[b]));
        stroke(image, pa[0], pa[1], pb[0], pb[1], m == 1 ? 1.5 : 0.5, [&](double) { return outline; });
      }
    }
  }

  const double peak = source.family() == Family::cube ? 1.0 : simplex_height(m);
  std::vector<std::size_t> drawn(colored.positions.size(), 0);
  for (std::size_t c = 0; c < net.cells().size(); ++c) {
    const auto& color = colored.cell_colors[c];
    const auto& anchor = colored.positions[color.position];
    const double shift = 8.0 * static_cast<double>(drawn[color.position]++);
    auto value_at = [&](double u) {
      const double v = color.style == ColorStyle::uniform ? peak : peak * 2 * std::min(u, 1 - u);
      return palette_map(std::clamp(v, 0.0, peak), peak, color.layer);
    };
    if (m == 1) {
      const auto p = to_pixel(physical(anchor.vertices.front()));
      disk(image, p[0], p[1] - 12 - shift, 5, palette_map(peak, peak, color.layer));
      if (shift > 0) square_mark(image, p[0] + 8, p[1] - 12 - shift);
      continue;
    }
    auto a = to_pixel(physical(anchor.vertices[0]));
    auto b = to_pixel(physical(anchor.vertices[1]));
    // Shift duplicates along the anchor's image normal.
    const double dx = b[0] - a[0], dy = b[1] - a[1], len = std::hypot(dx, dy);
    const double nx = -dy / len, ny = dx / len;
    a = {a[0] + nx * shift, a[1] + ny * shift};
    b = {b[0] + nx * shift, b[1] + ny * shift};
    stroke(image, a[0], a[1], b[0], b[1], 2.5, value_at);
    if (shift > 0) square_mark(image, (a[0] + b[0]) / 2 + nx * 6, (a[1] + b[1]) / 2 + ny * 6);
  }
  return image;
}

Image render_box_set(const TriadicBoxSet& set, std::size_t pixels_per_cell,
                     const std::vector<std::int32_t>& slice) {
  if (pixels_per_cell == 0) throw InvalidArgument("pixels per cell must be positive");
  const int d = set.dim();
  if (d > 2 && slice.size() != static_cast<std::size_t>(d - 2)) {
    throw InvalidArgument("slice needs one index per axis beyond the second");
  }
  const auto side = static_cast<std::size_t>(set.side());
  const std::size_t w = side * pixels_per_cell;
  const std::size_t h = d == 1 ? std::max<std::size_t>(pixels_per_cell, 16) : side * pixels_per_cell;
  Image image(w, h);
  const Rgb pink = palette_map(1.0, 1.0, Layer::standard);
  for (const auto& c : set.cells()) {
    bool on_slice = true;
    for (int j = 2; j < d; ++j) on_slice = on_slice && c[j] == slice[static_cast<std::size_t>(j - 2)];
    if (!on_slice) continue;
    const std::size_t x0 = static_cast<std::size_t>(c[0]) * pixels_per_cell;
    const std::size_t rows = d == 1 ? h : pixels_per_cell;
    const std::size_t y0 = d == 1 ? 0 : (side - 1 - static_cast<std::size_t>(c[1])) * pixels_per_cell;
    for (std::size_t y = y0; y < y0 + rows; ++y) {
      for (std::size_t x = x0; x < x0 + pixels_per_cell; ++x) put(image, long(x), long(y), pink);
    }
  }
  return image;
}

Image render_mask(const Mask& mask, Rgb on, Rgb off) {
  Image image(mask.width, mask.height);
  for (std::size_t y = 0; y < mask.height; ++y) {
    for (std::size_t x = 0; x < mask.width; ++x) put(image, long(x), long(y), mask.at(x, y) ? on : off);
  }
  return image;
}

}  // namespace chromatope
