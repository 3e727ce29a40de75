#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "banach_ortho/cli.hpp"
#include "banach_ortho/generators.hpp"

namespace py = pybind11;
using namespace bjo;

namespace {

SpaceDescriptor space_from_str(const std::string& text) {
  return space_from_json(json::parse(text));
}

Vector to_vector(const SpaceDescriptor& s, const std::vector<std::complex<double>>& coords) {
  if (int(coords.size()) != s.dim()) throw DomainError("vector dimension mismatch");
  Vector v;
  v.c = coords;
  if (s.field() == Field::Real)
    for (auto c : v.c)
      if (c.imag() != 0.0) throw DomainError("real space given complex coordinates");
  return v;
}

OperatorDescriptor op_from_str(const std::string& text) {
  return operator_from_json(json::parse(text));
}

py::dict verdict_dict(const OrthoVerdict& v, Field f) {
  py::dict d;
  d["decision"] = v.decision;
  d["margin"] = v.margin;
  d["exhaustive"] = v.exhaustive;
  if (v.lambda_star) d["lambda_star"] = *v.lambda_star;
  if (!v.note.empty()) d["note"] = v.note;
  if (v.witness) {
    std::vector<std::complex<double>> w(v.witness->c.begin(), v.witness->c.end());
    d["witness_functional"] = w;
  }
  if (v.witness_vector) {
    std::vector<std::complex<double>> w(v.witness_vector->c.begin(), v.witness_vector->c.end());
    d["witness_vector"] = w;
  }
  (void)f;
  return d;
}

}  // namespace

PYBIND11_MODULE(_banach_ortho, m) {
  m.doc() = "Birkhoff-James orthogonality, numerical ranges, and spear-vector toolkit";
  m.attr("__version__") = cli::kVersion;

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_NotImplementedError);
  py::register_exception<DiagnosticError>(m, "DiagnosticError", PyExc_RuntimeError);

  py::class_<SpaceDescriptor>(m, "Space")
      .def_static("from_json", &space_from_str, py::arg("text"),
                  "build a space from its JSON descriptor")
      .def_static(
          "lp",
          [](const std::string& field, int dim, double p) {
            return SpaceDescriptor::lp(field == "real" ? Field::Real : Field::Complex, dim, p);
          },
          py::arg("field"), py::arg("dim"), py::arg("p"))
      .def_property_readonly("dim", &SpaceDescriptor::dim)
      .def_property_readonly("label", &SpaceDescriptor::label)
      .def("norm",
           [](const SpaceDescriptor& s, const std::vector<std::complex<double>>& x) {
             return s.norm(to_vector(s, x));
           })
      .def("dual_norm",
           [](const SpaceDescriptor& s, const std::vector<std::complex<double>>& phi) {
             Functional f;
             f.c = phi;
             return s.dual_norm(f);
           })
      .def("is_smooth_point",
           [](const SpaceDescriptor& s, const std::vector<std::complex<double>>& x) {
             auto r = s.is_smooth_point(to_vector(s, x));
             return py::make_tuple(r.smooth, r.face_diameter, r.exhaustive);
           })
      .def("__repr__", [](const SpaceDescriptor& s) { return "<Space " + s.label() + ">"; });

  m.def(
      "bj_orthogonal",
      [](const SpaceDescriptor& s, const std::vector<std::complex<double>>& x,
         const std::vector<std::complex<double>>& y, double tol) {
        return verdict_dict(bj_orthogonal(s, to_vector(s, x), to_vector(s, y), tol), s.field());
      },
      py::arg("space"), py::arg("x"), py::arg("y"), py::arg("tol") = kDefaultTol);

  m.def(
      "james_witness",
      [](const SpaceDescriptor& s, const std::vector<std::complex<double>>& x,
         const std::vector<std::complex<double>>& y, double tol) -> py::object {
        auto w = james_witness(s, to_vector(s, x), to_vector(s, y), tol);
        if (!w.functional) return py::none();
        std::vector<std::complex<double>> c(w.functional->c.begin(), w.functional->c.end());
        return py::cast(c);
      },
      py::arg("space"), py::arg("x"), py::arg("y"), py::arg("tol") = kDefaultTol);

  m.def(
      "best_approximation",
      [](const SpaceDescriptor& s, const std::vector<std::complex<double>>& x,
         const std::vector<std::complex<double>>& y) {
        auto b = best_approximation(s, to_vector(s, x), to_vector(s, y));
        std::vector<std::complex<double>> r(b.residual.c.begin(), b.residual.c.end());
        return py::make_tuple(b.lambda, r);
      },
      py::arg("space"), py::arg("x"), py::arg("y"));

  m.def(
      "numerical_radius",
      [](const SpaceDescriptor& s, const std::vector<std::complex<double>>& u,
         const std::vector<std::complex<double>>& z) {
        auto r = numerical_radius(s, to_vector(s, u), to_vector(s, z));
        return py::make_tuple(r.lower, r.upper, r.exhaustive);
      },
      py::arg("space"), py::arg("u"), py::arg("z"));

  m.def(
      "range_scan_polygon",
      [](const SpaceDescriptor& s, const std::vector<std::complex<double>>& u,
         const std::vector<std::complex<double>>& z) {
        auto est = range_scan(s, to_vector(s, u), to_vector(s, z));
        std::vector<std::complex<double>> inner(est.inner.vertices.begin(),
                                                est.inner.vertices.end());
        std::vector<std::complex<double>> outer(est.outer.vertices.begin(),
                                                est.outer.vertices.end());
        return py::make_tuple(inner, outer);
      },
      py::arg("space"), py::arg("u"), py::arg("z"));

  m.def(
      "blaschke_eval",
      [](int k, const std::vector<std::complex<double>>& zeros, std::complex<double> z) {
        BlaschkeParams b{k, {zeros.begin(), zeros.end()}};
        return blaschke_eval(b, z);
      },
      py::arg("k"), py::arg("zeros"), py::arg("z"));

  m.def(
      "operator_norm_json",
      [](const std::string& op) {
        auto r = operator_norm(op_from_str(op));
        return py::make_tuple(r.value, r.exact);
      },
      py::arg("operator_json"));

  m.def(
      "v_radius_json",
      [](const std::string& op) {
        auto r = v_radius(op_from_str(op));
        return py::make_tuple(r.value, r.exhaustive);
      },
      py::arg("operator_json"));

  // JSON pass-through: the full problem-file surface of the CLI
  m.def(
      "run_problem",
      [](const std::string& problem) { return cli::run_problem(json::parse(problem)).dump(); },
      py::arg("problem_json"), "run a problem file (JSON string in, report JSON out)");
  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed) {
        return cli::run_suite(name, seed).dump();
      },
      py::arg("name"), py::arg("seed"), "run a property suite and return the summary JSON");
  m.def("known_kinds", [] { return cli::known_kinds(); });
}
