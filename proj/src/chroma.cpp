#include "chromatope/chroma.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "chromatope/error.hpp"

namespace chromatope {

namespace {

constexpr double kFiberTolerance = 1e-12;

bool within_range(double value, double vmax) {
  return value >= 0 && value <= vmax * (1 + 1e-12);
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
  double x = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw IoError("malformed number '" + text + "'");
  }
  return x;
}

void require_same_frame(const ColorField& a, const ColorField& b) {
  if (!(a.grid() == b.grid()) || a.vmax() != b.vmax()) {
    throw GridMismatch("fields differ in grid or vmax");
  }
}

}  // namespace

std::string to_string(Sign sign) { return sign == Sign::color ? "color" : "uncolor"; }

std::size_t Grid::size() const {
  std::size_t total = 1;
  for (auto s : samples) total *= s;
  return total;
}

double Grid::step(std::size_t axis) const {
  return samples[axis] > 1 ? (hi[axis] - lo[axis]) / static_cast<double>(samples[axis] - 1) : 0.0;
}

double Grid::coordinate(std::size_t axis, std::size_t i) const {
  if (samples[axis] <= 1) return lo[axis];
  if (i + 1 == samples[axis]) return hi[axis];
  return lo[axis] + step(axis) * static_cast<double>(i);
}

std::vector<std::size_t> Grid::unflatten(std::size_t flat) const {
  std::vector<std::size_t> index(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    index[j] = flat % samples[j];
    flat /= samples[j];
  }
  return index;
}

std::size_t Grid::flatten(const std::vector<std::size_t>& index) const {
  std::size_t flat = 0;
  for (std::size_t j = dim(); j-- > 0;) flat = flat * samples[j] + index[j];
  return flat;
}

std::vector<double> Grid::point(std::size_t flat) const {
  std::vector<double> x(dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    x[j] = coordinate(j, flat % samples[j]);
    flat /= samples[j];
  }
  return x;
}

Grid uniform_grid(std::vector<double> lo, std::vector<double> hi, std::size_t samples) {
  if (lo.size() != hi.size()) throw InvalidArgument("box corners differ in dimension");
  if (samples == 0) throw InvalidArgument("grid needs at least one sample per axis");
  std::vector<std::size_t> counts(lo.size(), samples);
  return Grid{std::move(lo), std::move(hi), std::move(counts)};
}

std::size_t default_resolution(std::size_t base_dim) {
  if (base_dim > 3) throw DimensionUnsupported("no default resolution above base dimension 3");
  return base_dim <= 2 ? 1024 : 128;
}

ColorField::ColorField(Grid grid, std::vector<double> values, double vmax, int weight_den,
                       Layer layer, Sign sign)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      vmax_(vmax),
      weight_den_(weight_den),
      layer_(layer),
      sign_(sign) {
  if (grid_.lo.size() != grid_.dim() || grid_.hi.size() != grid_.dim()) {
    throw InvalidArgument("grid box does not match its sample counts");
  }
  for (auto s : grid_.samples) {
    if (s == 0) throw InvalidArgument("grid axis without samples");
  }
  if (!(vmax_ > 0)) throw InvalidArgument("vmax must be positive");
  if (weight_den_ < 1) throw InvalidArgument("weight denominator must be at least 1");
  if (values_.size() != grid_.size()) throw GridMismatch("value count differs from grid size");
  for (auto& v : values_) {
    if (!within_range(v, vmax_)) {
      throw InvalidArgument("color value " + format_double(v) + " outside [0, " +
                            format_double(vmax_) + "]");
    }
    v = std::min(v, vmax_);
  }
}

double ColorField::interpolate(double s) const {
  if (base_dim() != 1) throw DimensionUnsupported("interpolate needs a 1D base");
  const double lo = grid_.lo[0], hi = grid_.hi[0];
  const double slack = 1e-12 * std::max(1.0, std::abs(hi - lo));
  if (s < lo - slack || s > hi + slack) return 0.0;
  const std::size_t count = grid_.samples[0];
  if (count == 1) return values_[0];
  const double u = std::clamp((s - lo) / grid_.step(0), 0.0, static_cast<double>(count - 1));
  const auto i = std::min(static_cast<std::size_t>(u), count - 2);
  const double frac = u - static_cast<double>(i);
  return values_[i] + (values_[i + 1] - values_[i]) * frac;
}

ColorField ColorField::with_values(std::vector<double> values) const {
  return ColorField(grid_, std::move(values), vmax_, weight_den_, layer_, sign_);
}
ColorField ColorField::with_sign(Sign sign) const {
  return ColorField(grid_, values_, vmax_, weight_den_, layer_, sign);
}
ColorField ColorField::with_layer(Layer layer) const {
  return ColorField(grid_, values_, vmax_, weight_den_, layer, sign_);
}
ColorField ColorField::with_weight_den(int n) const {
  return ColorField(grid_, values_, vmax_, n, layer_, sign_);
}

ColorRep::ColorRep(ColorField hi)
    : hi_(std::move(hi)),
      lo_(hi_.with_values(std::vector<double>(hi_.values().size(), 0.0)).with_sign(Sign::uncolor)) {}

ColorRep::ColorRep(ColorField hi, ColorField lo) : hi_(std::move(hi)), lo_(std::move(lo)) {
  require_same_frame(hi_, lo_);
  if (lo_.sign() != Sign::uncolor) lo_ = lo_.with_sign(Sign::uncolor);
}

double ColorRep::length(std::size_t flat) const { return std::max(hi_[flat] - lo_[flat], 0.0); }

ColorField solid_coloring(const Grid& grid, double value, double vmax) {
  if (!(vmax > 0)) throw InvalidArgument("vmax must be positive");
  if (!within_range(value, vmax)) throw InvalidArgument("solid color value exceeds vmax");
  return ColorField(grid, std::vector<double>(grid.size(), value), vmax);
}

ColorField simplex_gradient(const Grid& grid, const std::vector<std::vector<double>>& simplex,
                            double peak, double vmax) {
  const auto d = static_cast<Eigen::Index>(grid.dim());
  if (d == 0) throw DimensionUnsupported("a gradient needs a base of dimension at least 1");
  if (simplex.size() != grid.dim() + 1) throw InvalidArgument("simplex needs base_dim+1 vertices");
  for (const auto& v : simplex) {
    if (v.size() != grid.dim()) throw InvalidArgument("simplex vertex dimension mismatch");
  }
  if (!(vmax > 0) || !within_range(peak, vmax)) throw InvalidArgument("peak exceeds vmax");

  // Barycentric coordinates: lambda_1..d solve E lambda = x - v0.
  Eigen::MatrixXd edges(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) edges(j, i) = simplex[i + 1][j] - simplex[0][j];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(edges);
  if (!lu.isInvertible()) throw InvalidArgument("degenerate simplex");

  const double scale = peak * static_cast<double>(d + 1);
  std::vector<double> values(grid.size());
  Eigen::VectorXd rhs(d);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    const auto x = grid.point(flat);
    for (Eigen::Index j = 0; j < d; ++j) rhs[j] = x[j] - simplex[0][j];
    const Eigen::VectorXd lambda = lu.solve(rhs);
    double smallest = 1.0 - lambda.sum();
    for (Eigen::Index i = 0; i < d; ++i) smallest = std::min(smallest, lambda[i]);
    values[flat] = std::clamp(scale * smallest, 0.0, peak);
  }
  return ColorField(grid, std::move(values), vmax);
}

ColorField segment_gradient(std::size_t samples, double peak, double vmax) {
  return simplex_gradient(uniform_grid({0.0}, {1.0}, samples), {{0.0}, {1.0}}, peak, vmax);
}

ColorRep uncolor_apply(const ColorRep& rep, const ColorField& erase) {
  require_same_frame(rep.hi(), erase);
  std::vector<double> lo(rep.lo().values().size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] = std::min(std::max(rep.lo()[i], erase[i]), rep.hi()[i]);
  }
  return ColorRep(rep.hi(), rep.lo().with_values(std::move(lo)));
}

bool layer_covers(const PlacedLayer& layer, double x, double y) {
  const double dx = x - layer.origin[0], dy = y - layer.origin[1];
  const double s = dx * layer.direction[0] + dy * layer.direction[1];
  const double t = dx * layer.normal[0] + dy * layer.normal[1];
  if (t < 0) return false;
  const double h = layer.field.interpolate(s);
  return h > 0 && t <= h;
}

AccumulatedField overlay(const std::vector<PlacedLayer>& layers, const Grid& frame) {
  if (layers.empty()) throw InvalidArgument("overlay needs at least one layer");
  if (frame.dim() != 2) throw DimensionUnsupported("overlay frames are 2D");
  for (const auto& layer : layers) {
    if (layer.field.base_dim() != 1) throw DimensionUnsupported("overlay layers are 1D fields");
  }
  AccumulatedField out{frame, std::vector<double>(frame.size(), 0.0),
                       std::vector<std::int32_t>(frame.size(), 0)};
  for (std::size_t j = 0; j < frame.samples[1]; ++j) {
    const double y = frame.coordinate(1, j);
    for (std::size_t i = 0; i < frame.samples[0]; ++i) {
      const double x = frame.coordinate(0, i);
      const std::size_t flat = j * frame.samples[0] + i;
      for (const auto& layer : layers) {
        if (layer_covers(layer, x, y)) {
          out.weight[flat] += 1.0 / layer.field.weight_den();
          ++out.count[flat];
        }
      }
    }
  }
  return out;
}

std::vector<HalfSpace> physical_halfspaces(const FaceLattice& p) {
  std::vector<double> root(p.metric().size());
  for (std::size_t j = 0; j < root.size(); ++j) root[j] = std::sqrt(to_double(p.metric()[j]));
  std::vector<HalfSpace> out;
  for (const auto& h : facet_halfspaces(p)) {
    HalfSpace g{std::vector<double>(h.normal.size()), to_double(h.offset)};
    double norm = 0;
    for (std::size_t j = 0; j < g.normal.size(); ++j) {
      g.normal[j] = to_double(h.normal[j]) / root[j];
      norm += g.normal[j] * g.normal[j];
    }
    norm = std::sqrt(norm);
    for (auto& a : g.normal) a /= norm;
    g.offset /= norm;
    out.push_back(std::move(g));
  }
  return out;
}

ColorRep fiber_rep(const std::vector<HalfSpace>& body, std::size_t axis, const Grid& base,
                   double vmax) {
  if (body.empty()) throw InvalidArgument("body has no half-spaces");
  const std::size_t n = body.front().normal.size();
  if (n > 4) throw DimensionUnsupported("fiber extraction supports bodies up to dimension 4");
  if (axis >= n || base.dim() + 1 != n) throw InvalidArgument("base grid does not match the body");

  std::vector<double> hi(base.size()), lo(base.size());
  for (std::size_t flat = 0; flat < base.size(); ++flat) {
    const auto x = base.point(flat);
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    bool empty = false;
    for (const auto& h : body) {
      double rest = h.offset;
      for (std::size_t j = 0, k = 0; j < n; ++j) {
        if (j == axis) continue;
        rest -= h.normal[j] * x[k++];
      }
      const double a = h.normal[axis];
      if (std::abs(a) <= kFiberTolerance) {
        if (rest < -kFiberTolerance) empty = true;
      } else if (a > 0) {
        upper = std::min(upper, rest / a);
      } else {
        lower = std::max(lower, rest / a);
      }
    }
    if (!empty && (std::isinf(lower) || std::isinf(upper))) {
      throw UnboundedFiber("fiber along axis " + std::to_string(axis) + " is unbounded");
    }
    if (empty || upper < lower - kFiberTolerance) continue;
    if (lower < -kFiberTolerance) {
      throw InvalidArgument("body reaches below the base hyperplane");
    }
    lower = std::max(lower, 0.0);
    upper = std::max(upper, lower);
    if (!within_range(upper, vmax)) throw InvalidArgument("fiber longer than vmax");
    hi[flat] = std::min(upper, vmax);
    lo[flat] = std::min(lower, hi[flat]);
  }
  ColorField hi_field(base, std::move(hi), vmax);
  return ColorRep(hi_field, hi_field.with_values(std::move(lo)).with_sign(Sign::uncolor));
}

ColorRep fiber_rep(const FaceLattice& p, std::size_t axis, std::size_t samples) {
  const auto n = static_cast<std::size_t>(p.dim());
  if (axis >= n) throw InvalidArgument("fiber axis out of range");
  std::vector<double> lo(n - 1, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n - 1, -std::numeric_limits<double>::infinity());
  double top = 0;
  for (std::size_t v = 0; v < p.vertex_count(); ++v) {
    const auto y = p.physical_coordinates(v);
    for (std::size_t j = 0, k = 0; j < n; ++j) {
      if (j == axis) {
        top = std::max(top, y[j]);
        continue;
      }
      lo[k] = std::min(lo[k], y[j]);
      hi[k] = std::max(hi[k], y[j]);
      ++k;
    }
  }
  const double vmax = top > 0 ? top * (1 + 1e-12) : 1.0;
  return fiber_rep(physical_halfspaces(p), axis, uniform_grid(lo, hi, samples), vmax);
}

ColorField slice(const ColorField& field, std::size_t axis, std::size_t index) {
  const Grid& g = field.grid();
  if (axis >= g.dim()) throw InvalidArgument("slice axis out of range");
  if (index >= g.samples[axis]) throw InvalidArgument("slice index out of range");
  Grid sub;
  for (std::size_t j = 0; j < g.dim(); ++j) {
    if (j == axis) continue;
    sub.lo.push_back(g.lo[j]);
    sub.hi.push_back(g.hi[j]);
    sub.samples.push_back(g.samples[j]);
  }
  std::vector<double> values(sub.size());
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    auto idx = sub.unflatten(flat);
    idx.insert(idx.begin() + static_cast<std::ptrdiff_t>(axis), index);
    values[flat] = field[g.flatten(idx)];
  }
  return ColorField(std::move(sub), std::move(values), field.vmax(), field.weight_den(),
                    field.layer(), field.sign());
}

ColorRep slice(const ColorRep& rep, std::size_t axis, std::size_t index) {
  return ColorRep(slice(rep.hi(), axis, index), slice(rep.lo(), axis, index));
}

const std::vector<PaletteAnchor>& palette_anchors(Layer layer) {
  static const std::vector<PaletteAnchor> standard{
      {0.0, {0, 0, 0}}, {0.5, {139, 69, 19}}, {1.0, {255, 105, 180}}};
  static const std::vector<PaletteAnchor> reverse{
      {0.0, {0, 0, 0}}, {0.5, {20, 100, 40}}, {1.0, {60, 220, 90}}};
  return layer == Layer::standard ? standard : reverse;
}

Rgb palette_map(double value, double vmax, Layer layer) {
  if (!(vmax > 0)) throw InvalidArgument("vmax must be positive");
  if (!within_range(value, vmax)) throw InvalidArgument("palette value outside [0, vmax]");
  const double v = std::min(value / vmax, 1.0);
  const auto& anchors = palette_anchors(layer);
  std::size_t seg = 0;
  while (seg + 2 < anchors.size() && v > anchors[seg + 1].at) ++seg;
  const auto& a = anchors[seg];
  const auto& b = anchors[seg + 1];
  const double u = (v - a.at) / (b.at - a.at);
  Rgb out{};
  for (int c = 0; c < 3; ++c) {
    const double x = a.color[c] + (static_cast<double>(b.color[c]) - a.color[c]) * u;
    out[c] = static_cast<std::uint8_t>(std::lround(x));
  }
  return out;
}

void write_field(std::ostream& out, const ColorField& field) {
  const Grid& g = field.grid();
  out << "chromatope-field\n";
  out << "base_dim " << g.dim() << "\n";
  out << "samples";
  for (auto s : g.samples) out << ' ' << s;
  out << "\nlo";
  for (auto x : g.lo) out << ' ' << format_double(x);
  out << "\nhi";
  for (auto x : g.hi) out << ' ' << format_double(x);
  out << "\nvmax " << format_double(field.vmax()) << "\n";
  out << "weight_den " << field.weight_den() << "\n";
  out << "layer " << to_string(field.layer()) << "\n";
  out << "sign " << to_string(field.sign()) << "\n";
  out << "data float64le " << field.values().size() << "\n";
  for (double v : field.values()) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    char bytes[8];
    for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    out.write(bytes, 8);
  }
  if (!out) throw IoError("field write failed");
}

ColorField read_field(std::istream& in) {
  auto line = [&](const std::string& key) {
    std::string text;
    if (!std::getline(in, text)) throw IoError("field header truncated before '" + key + "'");
    std::istringstream fields(text);
    std::string word;
    fields >> word;
    if (word != key) throw IoError("expected '" + key + "' in field header, got '" + word + "'");
    std::vector<std::string> rest;
    while (fields >> word) rest.push_back(word);
    return rest;
  };
  std::string magic;
  if (!std::getline(in, magic) || magic != "chromatope-field") throw IoError("not a field file");
  const auto dim_words = line("base_dim");
  if (dim_words.size() != 1) throw IoError("bad base_dim");
  const auto dim = static_cast<std::size_t>(std::stoul(dim_words[0]));
  Grid g;
  for (const auto& w : line("samples")) g.samples.push_back(std::stoul(w));
  for (const auto& w : line("lo")) g.lo.push_back(parse_double(w));
  for (const auto& w : line("hi")) g.hi.push_back(parse_double(w));
  if (g.samples.size() != dim || g.lo.size() != dim || g.hi.size() != dim) {
    throw IoError("field header axis counts disagree");
  }
  const auto vmax_words = line("vmax");
  const auto den_words = line("weight_den");
  const auto layer_words = line("layer");
  const auto sign_words = line("sign");
  const auto data_words = line("data");
  if (vmax_words.size() != 1 || den_words.size() != 1 || layer_words.size() != 1 ||
      sign_words.size() != 1 || data_words.size() != 2 || data_words[0] != "float64le") {
    throw IoError("malformed field header");
  }
  const Layer layer = layer_words[0] == "standard" ? Layer::standard : Layer::reverse;
  if (layer_words[0] != "standard" && layer_words[0] != "reverse") throw IoError("bad layer");
  if (sign_words[0] != "color" && sign_words[0] != "uncolor") throw IoError("bad sign");
  const Sign sign = sign_words[0] == "color" ? Sign::color : Sign::uncolor;
  const auto count = std::stoul(data_words[1]);
  if (count != g.size()) throw IoError("sample count disagrees with grid");
  std::vector<double> values(count);
  for (auto& v : values) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw IoError("field data truncated");
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) bits = (bits << 8) | bytes[b];
    v = std::bit_cast<double>(bits);
  }
  return ColorField(std::move(g), std::move(values), parse_double(vmax_words[0]),
                    std::stoi(den_words[0]), layer, sign);
}

}  // namespace chromatope
