#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "loewy/acceptance.hpp"
#include "loewy/error.hpp"
#include "loewy/expr.hpp"
#include "loewy/injectivity.hpp"
#include "loewy/json_io.hpp"

namespace py = pybind11;
using namespace loewy;

namespace {

// Elements carry their algebra so Python can print and compare them.
struct PyElement {
  AlgebraDescriptor desc;
  TupleElement value;

  PyElement with(TupleElement v) const { return {desc, std::move(v)}; }
  std::string str() const { return value.width() == 1 ? value[0].to_string() : value.to_string(); }
};

void same_algebra(const PyElement& a, const PyElement& b) {
  if (!(a.desc == b.desc)) throw Error(ErrorKind::Type, "elements of different algebras");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact arithmetic in the semiartinian regular algebras B(alpha, n)";

  py::register_exception<Error>(m, "LoewyError", PyExc_ValueError);

  py::class_<AlgebraDescriptor>(m, "Algebra")
      .def(py::init([](const std::string& field, const std::string& level, std::uint32_t width) {
             return AlgebraDescriptor(FieldDescriptor::parse(field), Ordinal::parse(level), width);
           }),
           py::arg("field") = "q", py::arg("level") = "1", py::arg("width") = 1)
      .def_property_readonly("field", [](const AlgebraDescriptor& d) { return d.field.to_string(); })
      .def_property_readonly("level", [](const AlgebraDescriptor& d) { return d.level.to_string(); })
      .def_property_readonly("width", [](const AlgebraDescriptor& d) { return d.width; })
      .def("eval", [](const AlgebraDescriptor& d, const std::string& src) {
        return PyElement{d, eval_expr(d, *parse_expr(d.field, src))};
      })
      .def("one", [](const AlgebraDescriptor& d) { return PyElement{d, TupleElement::one(d)}; })
      .def("zero", [](const AlgebraDescriptor& d) { return PyElement{d, TupleElement::zero(d)}; })
      .def("dimension_sequence", [](const AlgebraDescriptor& d) { return to_json(dimension_sequence(d)).dump(); })
      .def("basis_indices",
           [](const AlgebraDescriptor& d, std::uint64_t count) {
             std::vector<std::string> out;
             for (const auto& i : enumerate_indices(d, budget_for(d, count))) out.push_back(i.to_string());
             return out;
           },
           py::arg("count") = 20)
      .def("__repr__", [](const AlgebraDescriptor& d) { return d.to_string(); });

  py::class_<PyElement>(m, "Element")
      .def("__str__", &PyElement::str)
      .def("__repr__", [](const PyElement& e) { return "Element(" + e.str() + ")"; })
      .def("__add__", [](const PyElement& a, const PyElement& b) { same_algebra(a, b); return a.with(a.value + b.value); })
      .def("__sub__", [](const PyElement& a, const PyElement& b) { same_algebra(a, b); return a.with(a.value - b.value); })
      .def("__mul__", [](const PyElement& a, const PyElement& b) { same_algebra(a, b); return a.with(a.value * b.value); })
      .def("__neg__", [](const PyElement& a) { return a.with(-a.value); })
      .def("__eq__", [](const PyElement& a, const PyElement& b) { return a.desc == b.desc && a.value == b.value; })
      .def("quasi_inverse", [](const PyElement& a) { return a.with(quasi_inverse(a.value)); })
      .def("depth", [](const PyElement& a) -> std::optional<std::string> {
        auto d = loewy_depth(a.value);
        return d ? std::optional(d->to_string()) : std::nullopt;
      })
      .def("augmentation", [](const PyElement& a) { return augmentation(a.value).to_string(); })
      .def("basis_coords", [](const PyElement& a) {
        std::map<std::string, std::string> out;
        for (const auto& [i, k] : to_basis_coords(a.value)) out.emplace(i.to_string(), k.to_string());
        return out;
      })
      .def("to_json", [](const PyElement& a) { return to_json(a.value).dump(); });

  m.def("baer_socle_inclusion",
        [](const std::string& lambda, const std::string& cardinal) {
          SocleDirectSum ideal{SupportDescriptor::symbolic(SymbolicCardinal::parse(cardinal), "A"),
                               FieldDescriptor::rationals()};
          return verdict_to_string(baer_extend(SymbolicCardinal::parse(lambda), ideal, Inclusion{}));
        },
        py::arg("lambda_"), py::arg("cardinal"));

  m.def("search_mult_basis",
        [](std::uint64_t p, std::uint32_t n, std::uint64_t bound) {
          return finite_field_mult_basis_search(p, n, bound).bases_text;
        },
        py::arg("p"), py::arg("n"), py::arg("bound") = 256);

  m.def("selftest",
        [](std::vector<int> only, std::uint64_t seed) {
          AcceptanceOptions opts;
          opts.only = std::move(only);
          opts.seed = seed;
          std::vector<std::pair<std::string, bool>> out;
          for (const auto& c : run_acceptance(opts)) out.emplace_back(c.line(), c.report.passed);
          return out;
        },
        py::arg("only"), py::arg("seed") = AcceptanceOptions{}.seed);
}
