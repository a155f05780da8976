#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "chromatope/chroma.hpp"
#include "chromatope/cli.hpp"
#include "chromatope/error.hpp"
#include "chromatope/fractal.hpp"
#include "chromatope/net.hpp"
#include "chromatope/polytope.hpp"
#include "chromatope/star.hpp"

namespace py = pybind11;
using namespace chromatope;

namespace {

py::tuple as_pair(const Rational& r) { return py::make_tuple(r.numerator(), r.denominator()); }

// Samples are stored with axis 0 fastest, so the numpy shape is reversed.
py::array_t<double> field_array(const ColorField& field) {
  std::vector<py::ssize_t> shape;
  for (auto it = field.grid().samples.rbegin(); it != field.grid().samples.rend(); ++it) {
    shape.push_back(static_cast<py::ssize_t>(*it));
  }
  py::array_t<double> out(shape);
  std::copy(field.values().begin(), field.values().end(), out.mutable_data());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact polytope lattices, nets, color representations and triadic fractals.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionUnsupported>(m, "DimensionUnsupported", error.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<LatticeInconsistent>(m, "LatticeInconsistent", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());

  py::class_<FaceLattice>(m, "FaceLattice")
      .def_property_readonly("dim", &FaceLattice::dim)
      .def_property_readonly("family", [](const FaceLattice& p) { return to_string(p.family()); })
      .def_property_readonly("vertex_count", &FaceLattice::vertex_count)
      .def("f_vector", [](const FaceLattice& p) { return p.f_vector().counts; })
      .def("faces", [](const FaceLattice& p, int rank) {
        const auto span = p.faces(rank);
        return std::vector<VertexSet>(span.begin(), span.end());
      })
      .def("physical_coordinates", &FaceLattice::physical_coordinates)
      .def("export", &lattice_to_string);

  m.def("build_cube", &build_cube);
  m.def("build_simplex", &build_simplex);
  m.def("cube_corner", &cube_corner);
  m.def("cartesian_product", &cartesian_product);
  m.def("truncate_vertices",
        [](const FaceLattice& p, const std::string& t) { return truncate_vertices(p, parse_rational(t)); },
        py::arg("lattice"), py::arg("t") = "1/4");
  m.def("euler_boundary", &euler_boundary);
  m.def("cube_f_vector", [](int n) { return cube_f_vector(n).counts; });
  m.def("simplex_f_vector", [](int n) { return simplex_f_vector(n).counts; });

  py::class_<Net>(m, "Net")
      .def_property_readonly("dim", &Net::dim)
      .def_property_readonly("cell_count", [](const Net& n) { return n.cells().size(); })
      .def("gluing_class_counts", &Net::gluing_class_counts)
      .def("export", &net_to_string);
  m.def("unfold", &unfold);
  m.def("facet_incidence_divisor", &facet_incidence_divisor);
  m.def("count_via_net", [](const FaceLattice& p, int k) {
    const auto d = count_via_net_detail(p, k);
    return py::dict(py::arg("cells") = d.cells, py::arg("per_cell") = d.per_cell, py::arg("divisor") = d.divisor,
                    py::arg("count") = d.count);
  });
  m.def("anchor_multiplicities", [](const FaceLattice& p) {
    const auto colored = color_net(unfold(p));
    std::vector<std::int64_t> out;
    for (const auto& c : colored.cell_colors) out.push_back(colored.positions[c.position].multiplicity);
    return out;
  });

  m.def("fiber_rep",
        [](const FaceLattice& p, std::size_t axis, std::size_t samples) {
          const auto rep = fiber_rep(p, axis, samples);
          return py::make_tuple(field_array(rep.hi()), field_array(rep.lo()), rep.hi().vmax());
        },
        "Returns (hi, lo, vmax) sampled on the bounding box of the base.");

  m.def("run_star", [](int p, int q, std::size_t resolution) {
    const auto r = run_star(p, q, resolution);
    return py::dict(py::arg("n") = r.spec.n, py::arg("vmax") = r.apex,
                    py::arg("union_agreement") = r.union_agreement,
                    py::arg("threshold_agreement") = r.threshold_agreement,
                    py::arg("symmetry_agreement") = r.symmetry_agreement);
  }, py::arg("p"), py::arg("q"), py::arg("resolution") = 1024);

  m.def("kept_per_step", [](int d, int m) { return kept_per_step({d, m}); });
  m.def("fractal_dimension", [](int d, int m) { return fractal_dimension({d, m}); });
  m.def("measure_proxy", [](int d, int m, int k, int level) { return as_pair(measure_proxy({d, m}, k, level)); },
        "Returns (numerator, denominator).");
  m.def("iterate", [](int d, int m, int level) {
    const auto set = iterate({d, m}, level);
    py::array_t<std::int32_t> out({static_cast<py::ssize_t>(set.size()), static_cast<py::ssize_t>(d)});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < set.size(); ++i) {
      for (int j = 0; j < d; ++j) view(i, j) = set.cells()[i][j];
    }
    return out;
  }, "Kept boxes as an (N, d) array of integer positions.");
  m.def("lift_matches_iterate", [](int d, int m, int level) {
    return lift(fractal_color_rep({d, m}, level)) == iterate({d, m}, level);
  });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, "Runs a command-line invocation in-process; returns (exit code, stdout, stderr).");
  m.def("sha256_hex", &cli::sha256_hex);
}
