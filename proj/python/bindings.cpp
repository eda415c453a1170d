// Copyright 2026 The ultrawrap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ultrawrap/calculus.hpp"
#include "ultrawrap/cayley_dickson.hpp"
#include "ultrawrap/expression.hpp"
#include "ultrawrap/group_constructions.hpp"
#include "ultrawrap/padic.hpp"
#include "ultrawrap/quadratic_forms.hpp"
#include "ultrawrap/wrap_sim.hpp"

namespace py = pybind11;
using namespace ultrawrap;

namespace {

FieldSpec field(const std::string& kind, int p, int precision) {
  check_field(parse_field_kind(kind), p);
  return {parse_field_kind(kind), p, precision};
}

py::object to_python(const expr::Value& v) {
  if (const auto* s = std::get_if<UltraScalar>(&v)) return py::cast(*s);
  if (const auto* x = std::get_if<CDElement>(&v)) return py::cast(*x);
  return py::cast(expr::render(v));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact non-archimedean algebra, calculus and wrap-group desk models";

  auto arith = py::register_exception<ArithmeticError>(m, "ArithmeticError", PyExc_ArithmeticError);
  py::register_exception<DivisionByZero>(m, "DivisionByZero", arith.ptr());
  py::register_exception<PrecisionLoss>(m, "PrecisionLoss", arith.ptr());
  py::register_exception<ZeroNormElement>(m, "ZeroNormElement", arith.ptr());
  py::register_exception<FieldError>(m, "FieldError", PyExc_ValueError);
  py::register_exception<expr::SyntaxError>(m, "SyntaxError", PyExc_ValueError);
  py::register_exception<NonCancellative>(m, "NonCancellative", PyExc_ValueError);
  py::register_exception<NonCommutative>(m, "NonCommutative", PyExc_ValueError);

  py::class_<FieldSpec>(m, "FieldSpec")
      .def(py::init(&field), py::arg("kind") = "padic", py::arg("p") = 5, py::arg("precision") = 10)
      .def_readonly("p", &FieldSpec::p)
      .def_readonly("precision", &FieldSpec::precision)
      .def_property_readonly("name", &FieldSpec::name)
      .def("__repr__", &FieldSpec::name);

  py::class_<UltraScalar>(m, "Scalar")
      .def_static("parse", &UltraScalar::parse_literal)
      .def_static("integer", &UltraScalar::from_integer)
      .def_static("rational", &UltraScalar::from_rational)
      .def_property_readonly("p", &UltraScalar::p)
      .def_property_readonly("valuation", &UltraScalar::valuation)
      .def_property_readonly("precision", &UltraScalar::precision)
      .def("is_zero", &UltraScalar::is_zero)
      .def("norm", [](const UltraScalar& x) { return x.norm().to_string(); })
      .def("literal", &UltraScalar::to_literal)
      .def("inverse", &UltraScalar::inverse)
      .def("sqrt", &UltraScalar::sqrt)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self / py::self)
      .def(-py::self)
      .def(py::self == py::self)
      .def("__repr__", &UltraScalar::to_string)
      .def("__str__", [](const UltraScalar& x) { return render_scalar(x); });

  // pybind11 holders cannot point to const; the object is never mutated.
  py::class_<CDParams, std::shared_ptr<CDParams>>(m, "Params")
      .def(py::init([](const FieldSpec& f, const std::vector<std::int64_t>& q) {
        return std::const_pointer_cast<CDParams>(CDParams::make(f, q));
      }))
      .def_property_readonly("level", &CDParams::level)
      .def_property_readonly("dimension", &CDParams::dimension)
      .def("__repr__", &CDParams::to_string);

  py::class_<CDElement>(m, "Element")
      .def_static("generator",
                  [](const std::shared_ptr<CDParams>& p, int j) { return CDElement::generator(p, j); })
      .def_property_readonly("coeffs", &CDElement::coeffs)
      .def("norm_value", &norm_value)
      .def("conj", &conj)
      .def("inverse", &cd_inv)
      .def("is_zero", &CDElement::is_zero)
      .def("__mul__", &cd_mul)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self == py::self)
      .def("__repr__", &CDElement::to_string);

  m.def(
      "eval",
      [](const std::string& text, const FieldSpec& f, std::optional<std::vector<std::int64_t>> q) {
        CDParamsPtr params = q ? CDParams::make(f, *q) : nullptr;
        return to_python(expr::eval(text, {f, params}));
      },
      py::arg("text"), py::arg("field"), py::arg("q") = py::none(),
      "Evaluate an expression; products of three factors must be bracketed.");
  m.def("canonical", [](const std::string& text) { return expr::print(expr::parse(text)); });

  m.def(
      "division_check",
      [](const FieldSpec& f, const std::vector<std::int64_t>& q, int depth) {
        const DivisionVerdict d = has_division_property(CDParams::make(f, q), depth);
        py::dict r;
        r["division"] = d.division;
        r["exhaustive"] = d.exhaustive;
        r["depth"] = d.depth;
        if (d.a) r["a"] = *d.a;
        if (d.b) r["b"] = *d.b;
        return r;
      },
      py::arg("field"), py::arg("q"), py::arg("depth") = 0);
  m.def("hilbert_symbol", &hilbert_symbol);

  m.def(
      "differential",
      [](const std::string& f, const UltraScalar& x, const std::vector<UltraScalar>& v) {
        const FieldSpec spec{x.kind(), x.p(), std::max(1, x.precision())};
        const auto fn = calc::ScalarFn<UltraScalar>::polynomial(expr::as_polynomial(expr::eval(f, {spec, nullptr}), spec));
        return calc::differential_n(fn, x, v);
      },
      py::arg("f"), py::arg("x"), py::arg("v"), "d^n f(x).(v1..vn) for a polynomial f in x.");

  m.def(
      "audit_group",
      [](const std::string& name) {
        MagmaPtr g = name == "Q8" ? FiniteMagma::quaternion_units()
                     : name == "octonion-units" ? FiniteMagma::signed_generators(3)
                     : name[0] == 'S' ? FiniteMagma::symmetric(std::stoi(name.substr(1)))
                                      : FiniteMagma::cyclic(std::stoi(name.substr(1)));
        const MagmaAudit a = audit_axioms(*g);
        py::dict r;
        for (const auto& c : a.g) r[py::str(c.name)] = c.holds;
        r["alternative"] = a.alternative();
        r["group"] = a.group();
        return r;
      },
      py::arg("name"), "Axioms of Z<n>, S<n>, Q8 or octonion-units.");

  m.def("grothendieck_eta_injective", [](long long n) {
    const GrothendieckGroup<long long> g(truncated_naturals(n));
    return g.eta_injective();
  });

  m.def(
      "wrap_audit",
      [](int p, int d, int n, int k) {
        const wrap::DeskAudit a = wrap::audit_desk_monoid(p, d, n, k);
        py::dict laws;
        for (const auto& l : a.laws) laws[py::str(l.name)] = l.holds;
        py::dict r;
        r["maps"] = a.maps;
        r["classes"] = a.classes;
        r["laws"] = laws;
        return r;
      },
      py::arg("p") = 2, py::arg("d") = 2, py::arg("n") = 2, py::arg("k") = 1);
}
