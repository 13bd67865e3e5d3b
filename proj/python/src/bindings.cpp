// Thin pybind11 layer. Structured results cross the boundary as JSON text
// and are decoded by the Python package.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

#include "schottky/acceptance.hpp"
#include "schottky/config.hpp"
#include "schottky/errors.hpp"
#include "schottky/io.hpp"

namespace py = pybind11;
using namespace schottky;

namespace {

py::object to_py_int(const BigInt& n) {
  return py::module_::import("builtins").attr("int")(n.str());
}

Complex to_complex(const SpherePoint& p) {
  if (p.denominator() == Complex(0.0)) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  return p.value();
}

MarkedSchottky marked(const std::string& text) {
  return marked_from_json(Json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_schottky_core, m) {
  static py::exception<Error> error(m, "SchottkyError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (e.code() + ": " + e.what()).c_str());
    }
  });

  m.def("set_default_tolerance", &set_default_tolerance, py::arg("tol"));
  m.def("default_tolerance", &default_tolerance);

  py::class_<MobiusMap>(m, "Mobius")
      .def(py::init([](Complex a, Complex b, Complex c, Complex d,
                       bool reversing) {
             return MobiusMap(a, b, c, d,
                              reversing ? Orientation::reversing
                                        : Orientation::preserving);
           }),
           py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"),
           py::arg("reversing") = false)
      .def_property_readonly("matrix", &MobiusMap::matrix)
      .def_property_readonly("reversing", &MobiusMap::is_reversing)
      .def("trace", &MobiusMap::trace)
      .def("inverse", &MobiusMap::inverse)
      .def("classify",
           [](const MobiusMap& f) { return to_string(classify(f)); })
      .def("__call__",
           [](const MobiusMap& f, Complex z) {
             return to_complex(apply(f, SpherePoint::finite(z)));
           })
      .def("__mul__", [](const MobiusMap& f, const MobiusMap& g) {
        return compose(f, g);
      });
  m.def("projective_distance", &projective_distance);

  m.def("m_g", [](int g) { return to_py_int(m_g(g)); }, py::arg("g"));
  m.def("g0_count", [](int g) { return to_py_int(g0_count(g)); },
        py::arg("g"));
  m.def("m_g_oracle",
        [](int g, int bound) { return to_py_int(m_g_oracle(g, bound)); },
        py::arg("g"), py::arg("bound") = 12);
  m.def("enumeration_report",
        [](int g, bool types, int bound) {
          return enumeration_report(g, types, bound).dump();
        },
        py::arg("g"), py::arg("types") = false, py::arg("bound") = 12);
  m.def("signatures_of_rank", [](int g) {
    std::vector<std::string> out;
    for (const auto& s : signatures_of_rank(g)) out.push_back(to_string(s));
    return out;
  });
  m.def("rho_report", [](const std::string& sig) {
    return rho_report(parse_signature(sig)).dump();
  });

  m.def("zeta", [](const std::string& text, double tol) {
    return zeta(marked(text), tol);
  }, py::arg("group"), py::arg("tol") = 1e-9);
  m.def("limit_points",
        [](const std::string& text, int length, double tol,
           std::size_t cap) {
          std::vector<Complex> out;
          for (const auto& p : limit_points(marked(text), length, tol, cap)) {
            out.push_back(to_complex(p));
          }
          return out;
        },
        py::arg("group"), py::arg("length") = 6, py::arg("tol") = 1e-9,
        py::arg("cap") = 1'000'000);
  m.def("validate", [](const std::string& text, double tol) {
    const auto g = marked(text);
    if (!g.witness()) throw PreconditionFailed("group has no circle pairing");
    return to_json(validate_pairing(*g.witness(), tol)).dump();
  }, py::arg("group"), py::arg("tol") = 1e-9);
  m.def("fixed_point",
        [](const std::string& text, const std::vector<std::string>& images,
           double tol) -> py::object {
          const auto g = marked(text);
          std::vector<FreeWord> words;
          for (const auto& w : images) words.push_back(FreeWord::parse(w));
          const RealStructureSpec spec(FgAuto(g.rank(), std::move(words)));
          const auto wit = is_fixed_point(spec, g, tol);
          if (!wit) return py::none();
          return py::str(Json{{"conjugator", to_json(wit->conjugator)},
                              {"residual", wit->residual}}
                             .dump());
        },
        py::arg("group"), py::arg("images"), py::arg("tol") = 1e-9);
  m.def("genus2_report", [](int budget) { return genus2_report(budget).dump(); },
        py::arg("budget") = 20000);

  m.def("run_acceptance", [](std::uint64_t seed) {
    Config c;
    c.seed = seed;
    py::list out;
    for (const auto& r : run_acceptance(c)) {
      py::dict d;
      d["id"] = r.id;
      d["name"] = r.name;
      d["pass"] = r.pass;
      d["detail"] = r.detail;
      out.append(d);
    }
    return out;
  }, py::arg("seed") = Config{}.seed);
}
