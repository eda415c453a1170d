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

#include "json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ultrawrap/expression.hpp"

namespace ultrawrap::io {

json load(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) return json::parse(text);
  std::ifstream in(text);
  if (!in) throw std::invalid_argument("cannot read " + text);
  return json::parse(in);
}

json to_json(const FieldSpec& f) {
  return {{"field", f.name()}, {"kind", std::string(field_kind_name(f.kind))}, {"p", f.p},
          {"precision", f.precision}};
}

std::string scalar_text(const UltraScalar& x) { return render_scalar(x); }

json to_json(const CDParams& p) {
  json j = to_json(p.field());
  j["q"] = json::array();
  for (const auto& q : p.q()) j["q"].push_back(scalar_text(q));
  return j;
}

json to_json(const CDElement& x) {
  json c = json::array();
  for (const auto& a : x.coeffs()) c.push_back(scalar_text(a));
  return {{"params", to_json(x.params())}, {"coeffs", c}, {"value", x.to_string()}};
}

UltraScalar scalar_from(const json& j, const FieldSpec& f) {
  if (j.is_number_integer()) return UltraScalar::from_integer(j.get<std::int64_t>(), f);
  if (j.is_string()) return expr::as_scalar(expr::eval(j.get<std::string>(), {f, nullptr}));
  throw std::invalid_argument("expected a scalar, got " + j.dump());
}

std::vector<UltraScalar> scalar_list(const std::string& csv, const FieldSpec& f) {
  std::vector<UltraScalar> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(' ') == std::string::npos) continue;
    out.push_back(expr::as_scalar(expr::eval(item, {f, nullptr})));
  }
  return out;
}

MagmaPtr builtin_magma(const std::string& name) {
  if (name == "trivial") return FiniteMagma::cyclic(1);
  if (name == "Q8") return FiniteMagma::quaternion_units();
  if (name == "octonion-units") return FiniteMagma::signed_generators(3);
  if (name.size() >= 2 && (name[0] == 'Z' || name[0] == 'S')) {
    std::size_t used = 0;
    const int n = std::stoi(name.substr(1), &used);
    if (used + 1 == name.size()) return name[0] == 'Z' ? FiniteMagma::cyclic(n) : FiniteMagma::symmetric(n);
  }
  throw std::invalid_argument("unknown builtin group " + name + " (Z<n>, S<n>, Q8, octonion-units, trivial)");
}

MagmaPtr magma_from(const json& j) {
  json table = j.is_object() ? j.at("table") : j;
  std::vector<std::vector<int>> t = table.get<std::vector<std::vector<int>>>();
  std::vector<std::string> names;
  if (j.is_object() && j.contains("names")) {
    names = j.at("names").get<std::vector<std::string>>();
  } else {
    for (std::size_t i = 0; i < t.size(); ++i) names.push_back(std::to_string(i));
  }
  return std::make_shared<const FiniteMagma>(std::move(names), std::move(t));
}

MagmaPtr magma_arg(const std::string& arg) {
  const auto first = arg.find_first_not_of(' ');
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return magma_from(load(arg));
  if (std::ifstream(arg).good()) return magma_from(load(arg));
  return builtin_magma(arg);
}

json to_json(const FiniteMagma& m, const MagmaAudit& a) {
  json axioms = json::array();
  for (const auto& c : a.g) {
    json x = {{"name", c.name}, {"holds", c.holds}};
    if (c.witness) {
      json el = json::array();
      for (int e : c.witness->elements) el.push_back(m.name(e));
      x["witness"] = {{"elements", el}, {"detail", c.witness->detail}};
    }
    axioms.push_back(x);
  }
  return {{"size", m.size()}, {"axioms", axioms}, {"alternative", a.alternative()}, {"group", a.group()}};
}

wrap::GridMap grid_map_from(const json& j, int p, int depth, int k, int targets, int rho) {
  const json& g = j.is_object() && j.contains("grid") ? j.at("grid") : json::object();
  p = g.value("p", p);
  depth = g.value("depth", g.value("d", depth));
  json values = j.is_object() ? j.at("values") : j;
  std::vector<int> v;
  if (values.is_string()) {
    for (char c : values.get<std::string>()) {
      if (c < '0' || c > '9') throw std::invalid_argument("values string must be decimal digits");
      v.push_back(c - '0');
    }
  } else {
    v = values.get<std::vector<int>>();
  }
  wrap::BallGrid grid = wrap::BallGrid::standard(p, depth, k);
  const json marked = j.is_object() ? j.value("marked", json(nullptr)) : json(nullptr);
  if (!marked.is_null()) {
    std::vector<int> m;
    for (const auto& x : marked) m.push_back(x.is_string() ? static_cast<int>(grid.leaf_index(x)) : x.get<int>());
    grid = wrap::BallGrid(p, depth, std::move(m));
  }
  if (j.is_object()) {
    targets = j.value("targets", targets);
    rho = j.value("rho", rho);
  }
  return wrap::GridMap(std::move(grid), targets, std::move(v), rho);
}

json to_json(const wrap::GridMap& f) {
  json marked = json::array();
  for (int m : f.grid().marked()) marked.push_back(f.grid().address(m));
  return {{"grid", {{"p", f.grid().p()}, {"depth", f.grid().depth()}}},
          {"marked", marked},
          {"values", f.values()},
          {"targets", f.targets()},
          {"rho", f.rho()}};
}

}  // namespace ultrawrap::io
