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

// Command line front end. Every subcommand prints a JSON object with --json
// and "key: value" lines otherwise; the exit code is 0 iff no error.

#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json_io.hpp"
#include "ultrawrap/calculus.hpp"
#include "ultrawrap/cayley_dickson.hpp"
#include "ultrawrap/expression.hpp"
#include "ultrawrap/group_constructions.hpp"
#include "ultrawrap/linear_spaces.hpp"
#include "ultrawrap/padic.hpp"
#include "ultrawrap/quadratic_forms.hpp"
#include "ultrawrap/wrap_sim.hpp"

namespace {

using namespace ultrawrap;
using io::json;

struct FieldOpts {
  int p = 5;
  std::string kind = "padic";
  int precision = 10;
  FieldSpec spec() const {
    check_field(parse_field_kind(kind), p);
    return FieldSpec{parse_field_kind(kind), p, precision};
  }
};

void add_field(CLI::App* app, FieldOpts& f, int default_p = 5) {
  f.p = default_p;
  app->add_option("--p", f.p, "prime")->capture_default_str();
  app->add_option("--kind", f.kind, "padic or laurent")->capture_default_str();
  app->add_option("--precision", f.precision, "relative precision in digits")->capture_default_str();
}

CDParamsPtr params_from(const FieldOpts& f, const std::string& q) {
  const FieldSpec spec = f.spec();
  return CDParams::make(spec, q.empty() ? std::vector<UltraScalar>{} : io::scalar_list(q, spec));
}

void emit(const json& j, bool as_json) {
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  for (const auto& [k, v] : j.items()) {
    std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

// ------------------------------------------------------------------ padic

json cmd_padic(const FieldOpts& f, const std::string& text, bool sqrt) {
  const FieldSpec spec = f.spec();
  const UltraScalar x = expr::as_scalar(expr::eval(text, {spec, nullptr}));
  json j = {{"expression", expr::print(expr::parse(text))},
            {"field", spec.name()},
            {"value", x.to_string()},
            {"literal", x.p() <= 36 ? x.to_literal() : x.to_string()},
            {"norm", x.norm().to_string()},
            {"precision", x.precision()}};
  j["valuation"] = x.is_zero() ? json(nullptr) : json(x.valuation());
  j["absolute_precision"] = x.is_exact_zero() ? json(nullptr) : json(x.absolute_precision());
  if (sqrt) {
    auto r = hensel_sqrt(x);
    j["sqrt"] = r ? json(r->to_literal()) : json(nullptr);
  }
  return j;
}

// --------------------------------------------------------------------- cd

json cmd_cd(const FieldOpts& f, const std::string& q, const std::string& text) {
  const CDParamsPtr params = params_from(f, q);
  const expr::Value v = expr::eval(text, {params->field(), params});
  json j;
  j["expression"] = expr::print(expr::parse(text));
  if (const auto* s = std::get_if<UltraScalar>(&v)) {
    j["value"] = render_scalar(*s);
    j["kind"] = "scalar";
    j["element"] = io::to_json(CDElement::scalar(params, *s));
  } else if (const auto* x = std::get_if<CDElement>(&v)) {
    j["value"] = x->to_string();
    j["kind"] = "element";
    j["element"] = io::to_json(*x);
    j["norm"] = render_scalar(norm_value(*x));
  } else {
    j["value"] = expr::render(v);
    j["kind"] = "polynomial";
  }
  return j;
}

// --------------------------------------------------------- division-check

json witness_json(const IsotropyWitness& w) {
  json x = json::array();
  for (const auto& c : w.x) x.push_back(io::scalar_text(c));
  return {{"x", x},
          {"residue_point", w.residue_point},
          {"residue_level", w.residue_level},
          {"hensel_index", w.hensel_index},
          {"derivative_valuation", w.derivative_valuation},
          {"residual_valuation", w.residual_valuation}};
}

json cmd_division(const FieldOpts& f, int r, const std::string& q, int depth) {
  const CDParamsPtr params = params_from(f, q);
  if (params->level() != r) {
    throw std::invalid_argument("--r " + std::to_string(r) + " needs " + std::to_string(r) + " values in --q");
  }
  const DivisionVerdict d = has_division_property(params, depth);
  json j = {{"params", io::to_json(*params)},
            {"verdict", d.division ? "division" : "zero-divisors"},
            {"exhaustive", d.exhaustive},
            {"depth", d.depth}};
  if (r == 2) {
    j["hilbert_symbol"] = hilbert_symbol(-params->q()[0], -params->q()[1]);
  }
  if (!d.division && d.a && d.b) {
    j["witness"] = {{"a", io::to_json(*d.a)}, {"b", io::to_json(*d.b)},
                    {"product_is_zero", cd_mul(*d.a, *d.b).is_zero()}};
    if (d.witness) j["witness"]["isotropic_vector"] = witness_json(*d.witness);
  }
  return j;
}

// ------------------------------------------------------------------- calc

calc::ScalarFn<UltraScalar> function_arg(const std::string& f, const FieldSpec& spec) {
  if (f.rfind("corpus:", 0) == 0) return calc::corpus_function(f.substr(7), spec);
  return calc::ScalarFn<UltraScalar>::polynomial(expr::as_polynomial(expr::eval(f, {spec, nullptr}), spec),
                                                 calc::Ball::whole(), f);
}

json cmd_calc_phi(const FieldOpts& f, int order, const std::string& fn, const std::string& x,
                  const std::string& v, const std::string& t) {
  const FieldSpec spec = f.spec();
  const auto g = function_arg(fn, spec);
  calc::QuotientPoint q{expr::as_scalar(expr::eval(x, {spec, nullptr})), io::scalar_list(v, spec),
                        io::scalar_list(t, spec)};
  if (q.order() != order || static_cast<int>(q.t.size()) != order) {
    throw std::invalid_argument("--v and --t need exactly --order values each");
  }
  const UltraScalar y = calc::phi_n(g, q);
  return {{"function", g.name()}, {"order", order}, {"value", render_scalar(y)}, {"series", y.to_string()}};
}

json cmd_calc_d(const FieldOpts& f, const std::string& fn, const std::string& x, const std::string& v,
                int target) {
  const FieldSpec spec = f.spec();
  const auto g = function_arg(fn, spec);
  const UltraScalar x0 = expr::as_scalar(expr::eval(x, {spec, nullptr}));
  const std::vector<UltraScalar> vs = io::scalar_list(v, spec);
  calc::ExtensionOptions o;
  o.target = target;
  const auto rep = calc::extend_at_zero(g, x0, vs, o);
  json j = {{"function", g.name()}, {"order", vs.size()}, {"converged", rep.converged}, {"exact", rep.exact}};
  if (rep.converged) {
    j["differential"] = render_scalar(calc::differential_n(g, x0, vs, o));
    j["limit"] = render_scalar(*rep.limit);
    if (!rep.exact) {
      j["stabilization"] = rep.stabilization;
      j["cutoff"] = rep.cutoff;
    }
  }
  return j;
}

json cmd_calc_class(const FieldOpts& f, int n, const std::string& fn, const std::string& flavor, int samples,
                    std::uint64_t seed, bool trust) {
  const FieldSpec spec = f.spec();
  const auto g = function_arg(fn, spec);
  calc::SampleSpec s;
  s.count = samples;
  s.seed = seed;
  s.trust_samples = trust;
  if (flavor != "partial" && flavor != "full") throw std::invalid_argument("--flavor is partial or full");
  const auto v = calc::class_check(g, n, flavor == "partial" ? calc::Flavor::kPartial : calc::Flavor::kFull, spec, s);
  json j = {{"function", g.name()},
            {"class", (flavor == "partial" ? "C^" : "C^[") + std::to_string(n) + (flavor == "partial" ? "" : "]")},
            {"verdict", std::string(calc::verdict_name(v.verdict))},
            {"exact", v.exact},
            {"reason", v.reason}};
  if (v.witness) {
    json pt = json::array();
    for (const auto& c : v.witness->point) pt.push_back(io::scalar_text(c));
    j["witness"] = {{"order", v.witness->order}, {"point", pt}};
  }
  return j;
}

// ------------------------------------------------------------------ linal

json cmd_opnorm(const FieldOpts& f, const std::string& matrix) {
  const FieldSpec spec = f.spec();
  const json m = io::load(matrix);
  const int rows = static_cast<int>(m.size());
  if (rows == 0) throw std::invalid_argument("empty matrix");
  const int cols = static_cast<int>(m[0].size());
  std::vector<UltraScalar> e;
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("ragged matrix");
    for (const auto& x : row) e.push_back(io::scalar_from(x, spec));
  }
  const linal::FiniteMap a = linal::FiniteMap::matrix(rows, cols, std::move(e));
  const Norm n = linal::operator_norm(a);
  json j = {{"rows", rows}, {"cols", cols}, {"norm", n.to_string()}};
  j["valuation"] = n.is_zero() ? json(nullptr) : json(n.valuation());
  return j;
}

json cmd_classify(const FieldOpts& f, const std::string& q, const std::string& map, const std::string& a) {
  const CDParamsPtr params = params_from(f, q);
  const expr::Context ctx{params->field(), params};
  std::optional<linal::AlgebraMap> m;
  if (map == "left" || map == "right") {
    const CDElement x = expr::as_element(expr::eval(a, ctx), params);
    m = map == "left" ? linal::AlgebraMap::left_mul(x, 1) : linal::AlgebraMap::right_mul(x, 1);
  } else if (map == "conj") {
    m = linal::AlgebraMap::conjugation(params, 1);
  } else if (map == "matrix") {
    const json rows = io::load(a);
    std::vector<CDElement> entries;
    for (const auto& row : rows) {
      for (const auto& x : row) {
        entries.push_back(expr::as_element(expr::eval(x.is_string() ? x.get<std::string>() : x.dump(), ctx), params));
      }
    }
    const int n_out = static_cast<int>(rows.size());
    m = linal::AlgebraMap::from_left_matrix(params, n_out, n_out ? static_cast<int>(rows[0].size()) : 0, entries);
  } else {
    throw std::invalid_argument("--map is left, right, conj or matrix");
  }
  const linal::LinearityReport r = linal::linearity_class(*m);
  json cls = json::array(), everywhere = json::array();
  for (auto c : r.classes()) cls.push_back(std::string(linal::class_name(c)));
  for (auto c : r.classes_everywhere()) everywhere.push_back(std::string(linal::class_name(c)));
  return {{"params", io::to_json(*params)}, {"map", map}, {"norm", m->norm().to_string()},
          {"classes", cls}, {"classes_everywhere", everywhere}};
}

// ------------------------------------------------------------------ group

SkewElement skew_from(const json& j, const FiniteMagma& w) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("skew element is [g1, w1, g2, w2]");
  auto g = [&](const json& x) { return x.is_number_integer() ? x.get<int>() : w.index_of(x.get<std::string>()); };
  return {g(j[0]), ReducedWord::parse(j[1].get<std::string>()), g(j[2]), ReducedWord::parse(j[3].get<std::string>())};
}

json skew_json(const SkewProduct& s, const SkewElement& x) {
  const auto inv = s.invariant(x);
  return {{"g1", s.w()->name(x.g1)}, {"w1", x.w1.to_string()}, {"g2", s.w()->name(x.g2)},
          {"w2", x.w2.to_string()}, {"text", s.to_string(x)},
          {"invariant", std::vector<long>(inv.begin(), inv.end())}};
}

json cmd_group_audit(const std::string& table) {
  const MagmaPtr m = io::magma_arg(table);
  json j = io::to_json(*m, audit_axioms(*m));
  j["abelianization_classes"] = [&] {
    const auto a = abelianization(*m);
    return *std::max_element(a.begin(), a.end()) + 1;
  }();
  return j;
}

json cmd_skew_mul(const std::string& w, const std::string& x, const std::string& y) {
  const SkewProduct s(io::magma_arg(w));
  const SkewElement a = skew_from(io::load(x), *s.w());
  const SkewElement b = skew_from(io::load(y), *s.w());
  return {{"x", skew_json(s, a)}, {"y", skew_json(s, b)}, {"product", skew_json(s, s.mul(a, b))}};
}

json cmd_skew_equiv(const std::string& w, const std::string& x, const std::string& y, long long budget) {
  const SkewProduct s(io::magma_arg(w));
  const SkewElement a = skew_from(io::load(x), *s.w());
  const SkewElement b = skew_from(io::load(y), *s.w());
  const EquivResult r = skew_equiv(s, a, b, budget);
  json path = json::array();
  for (const auto& e : r.path) path.push_back(s.to_string(e));
  return {{"verdict", std::string(verdict_name(r.verdict))}, {"expanded", r.expanded},
          {"budget", budget}, {"path", path},
          {"invariant_x", std::vector<long>(r.invariant_x.begin(), r.invariant_x.end())},
          {"invariant_y", std::vector<long>(r.invariant_y.begin(), r.invariant_y.end())}};
}

json cmd_grothendieck(long long naturals, const std::string& table) {
  if (!table.empty()) {
    const GrothendieckGroup<int> g(as_monoid(io::magma_arg(table)));
    return {{"monoid", table}, {"elements", g.monoid().carrier.size()}, {"eta_injective", g.eta_injective()}};
  }
  const GrothendieckGroup<long long> g(truncated_naturals(naturals));
  std::vector<std::string> classes;
  const auto& c = g.monoid().carrier;
  std::vector<FormalDifference<long long>> reps;
  for (long long x : c) {
    for (long long y : c) {
      const auto d = g.difference(x, y);
      bool seen = false;
      for (const auto& r : reps) seen = seen || g.equal(r, d);
      if (!seen) reps.push_back(d);
    }
  }
  // Class of m - n is the integer m - n.
  std::vector<long long> values;
  for (const auto& r : reps) values.push_back(g.sum(r.plus) - g.sum(r.minus));
  std::sort(values.begin(), values.end());
  return {{"monoid", "N truncated at " + std::to_string(naturals)},
          {"classes", reps.size()},
          {"integers", values},
          {"eta_injective", g.eta_injective()}};
}

// ------------------------------------------------------------------- wrap

struct WrapOpts {
  int p = 2, d = 2, k = 1, n = 2, rho = 1;
};

void add_wrap(CLI::App* app, WrapOpts& w) {
  app->add_option("--p", w.p, "branching of the ball tree")->capture_default_str();
  app->add_option("--d", w.d, "depth")->capture_default_str();
  app->add_option("--k", w.k, "marked points")->capture_default_str();
  app->add_option("--n", w.n, "size of the target set N")->capture_default_str();
  app->add_option("--rho", w.rho, "flatness radius")->capture_default_str();
}

wrap::Kappa kappa_arg(const std::string& k) {
  if (k == "insert") return wrap::Kappa::kInsert;
  if (k == "insert-deep") return wrap::Kappa::kInsertDeep;
  throw std::invalid_argument("--kappa is insert or insert-deep");
}

json class_json(const wrap::GridMap& f) {
  const wrap::WrapClass c = wrap::canonicalize(f);
  return {{"key", wrap::key_to_string(c.key)}, {"representative", c.representative.values()}};
}

json cmd_wrap_compose(const WrapOpts& w, const std::string& f, const std::string& g, const std::string& kappa) {
  const auto a = io::grid_map_from(io::load(f), w.p, w.d, w.k, w.n, w.rho);
  const auto b = io::grid_map_from(io::load(g), w.p, w.d, w.k, w.n, w.rho);
  const wrap::GridMap c = wrap::compose_maps(a, b, kappa_arg(kappa));
  return {{"kappa", kappa}, {"f", class_json(a)}, {"g", class_json(b)}, {"composite", io::to_json(c)},
          {"class", class_json(c)}};
}

json cmd_wrap_holonomy(const WrapOpts& w, const std::string& f, const std::string& group, const std::string& labels) {
  const auto base = io::grid_map_from(io::load(f), w.p, w.d, w.k, w.n, w.rho);
  wrap::TransportMap t = wrap::TransportMap::trivial(base, io::magma_arg(group));
  if (!labels.empty()) {
    const json rows = io::load(labels);
    if (rows.size() != t.labels.size()) throw std::invalid_argument("labels need one row per level");
    for (std::size_t l = 0; l < rows.size(); ++l) {
      if (rows[l].size() != t.labels[l].size()) {
        throw std::invalid_argument("level " + std::to_string(l + 1) + " needs " +
                                    std::to_string(t.labels[l].size()) + " labels");
      }
      for (std::size_t i = 0; i < rows[l].size(); ++i) {
        const json& x = rows[l][i];
        t.labels[l][i] = x.is_number_integer() ? x.get<int>() : t.group->index_of(x.get<std::string>());
      }
    }
  }
  json ends = json::array(), hol = json::array();
  for (int g : t.endpoints()) ends.push_back(t.group->name(g));
  for (int h : wrap::holonomy(t)) hol.push_back(t.group->name(h));
  return {{"base", class_json(base)}, {"endpoints", ends}, {"holonomy", hol}};
}

json law_json(const wrap::DeskAudit& a) {
  json laws = json::array();
  for (const auto& l : a.laws) {
    json x = {{"name", l.name}, {"holds", l.holds}, {"checks", l.checks}};
    if (!l.witness.empty()) x["witness"] = l.witness;
    laws.push_back(x);
  }
  return {{"maps", a.maps}, {"classes", a.classes}, {"laws", laws}, {"all_hold", a.all_hold()}};
}

json cmd_wrap_audit(const WrapOpts& w, const std::string& group, const std::string& edges) {
  json j = {{"desk", law_json(wrap::audit_desk_monoid(w.p, w.d, w.n, w.k, w.rho))}};
  if (group.empty()) return j;
  std::vector<wrap::TransportMap> sample;
  for (const auto& b : wrap::enumerate_flat_maps(wrap::BallGrid::standard(w.p, w.d, w.k), w.n, w.rho)) {
    const auto t = wrap::TransportMap::trivial(b, io::magma_arg(group));
    std::vector<long> e;
    if (edges == "all") {
      for (long i = 0; i < t.edge_count(); ++i) e.push_back(i);
    } else if (edges == "path") {
      e = wrap::marked_path_edges(t.hat);
    } else {
      throw std::invalid_argument("--edges is all or path");
    }
    for (auto& x : wrap::enumerate_labelings(t, e)) sample.push_back(std::move(x));
  }
  j["transport"] = law_json(wrap::audit_transport(sample));
  const wrap::WrapGroupReport r = wrap::wrap_group(sample);
  j["group"] = {{"commutative_group", r.commutative_group}, {"monoid_elements", r.monoid_elements},
                {"group_axioms", r.group_axioms}, {"eta_injective", r.eta_injective},
                {"holonomy_image", r.holonomy_image}, {"holonomy_image_group", r.holonomy_image_group},
                {"detail", r.detail}};
  if (r.sampled_associativity) j["group"]["sampled_associativity"] = *r.sampled_associativity;
  return j;
}

json cmd_wrap_classes(const WrapOpts& w, int max_depth) {
  json rows = json::array();
  for (int d = 1; d <= max_depth; ++d) {
    std::optional<wrap::BallGrid> grid;
    try {
      grid = wrap::BallGrid::standard(w.p, d, w.k);
    } catch (const std::invalid_argument&) {
      continue;  // needs p^d > 2k
    }
    const wrap::BallGrid& g = *grid;
    std::set<wrap::ClassKey> keys;
    const auto maps = wrap::enumerate_flat_maps(g, w.n, w.rho);
    for (const auto& f : maps) keys.insert(wrap::class_key(f));
    rows.push_back({{"depth", d}, {"maps", maps.size()}, {"classes", keys.size()}});
  }
  return {{"p", w.p}, {"k", w.k}, {"n", w.n}, {"rho", w.rho}, {"by_depth", rows}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ultrawrap: non-archimedean algebra, calculus and wrap-group desk models"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "print JSON");
  app.fallthrough();
  std::function<json()> run;

  FieldOpts pf;
  std::string p_expr;
  bool p_sqrt = false;
  auto* padic = app.add_subcommand("padic", "evaluate a scalar expression");
  add_field(padic, pf);
  padic->add_option("expression", p_expr)->required();
  padic->add_flag("--sqrt", p_sqrt, "also report a square root");
  padic->callback([&] { run = [&] { return cmd_padic(pf, p_expr, p_sqrt); }; });

  FieldOpts cf;
  std::string c_q = "1,1,1", c_expr;
  auto* cd = app.add_subcommand("cd", "evaluate an algebra expression; products must be bracketed");
  add_field(cd, cf);
  cd->add_option("--q", c_q, "comma separated q_1..q_r")->capture_default_str();
  cd->add_option("expression", c_expr)->required();
  cd->callback([&] { run = [&] { return cmd_cd(cf, c_q, c_expr); }; });

  FieldOpts df;
  int d_r = 2, d_depth = 0;
  std::string d_q = "1,1";
  auto* div = app.add_subcommand("division-check", "decide the division property");
  add_field(div, df, 2);
  div->add_option("--r", d_r, "level")->capture_default_str();
  div->add_option("--q", d_q, "comma separated q_1..q_r")->capture_default_str();
  div->add_option("--depth", d_depth, "residue search depth (0: exact depth)")->capture_default_str();
  div->callback([&] { run = [&] { return cmd_division(df, d_r, d_q, d_depth); }; });

  auto* calc = app.add_subcommand("calc", "difference quotients and differentiability classes");
  calc->require_subcommand(1);
  FieldOpts kf;
  int k_order = 1, k_n = 1, k_samples = 6, k_target = -1;
  std::uint64_t k_seed = 1;
  bool k_trust = false;
  std::string k_f, k_x = "0", k_v, k_t, k_flavor = "partial";
  auto* phi = calc->add_subcommand("phi", "iterated difference quotient");
  add_field(phi, kf);
  phi->add_option("--order", k_order)->capture_default_str();
  phi->add_option("--f", k_f, "polynomial in x or corpus:<name>")->required();
  phi->add_option("--x", k_x)->capture_default_str();
  phi->add_option("--v", k_v, "comma separated directions")->required();
  phi->add_option("--t", k_t, "comma separated increments")->required();
  phi->callback([&] { run = [&] { return cmd_calc_phi(kf, k_order, k_f, k_x, k_v, k_t); }; });
  auto* dd = calc->add_subcommand("d", "differential d^n f(x).(v1..vn)");
  add_field(dd, kf);
  dd->add_option("--f", k_f)->required();
  dd->add_option("--x", k_x)->capture_default_str();
  dd->add_option("--v", k_v)->required();
  dd->add_option("--target", k_target, "stabilization valuation (default precision - 2)");
  dd->callback([&] { run = [&] { return cmd_calc_d(kf, k_f, k_x, k_v, k_target); }; });
  auto* cls = calc->add_subcommand("class", "C^n or C^[n] verdict");
  add_field(cls, kf);
  cls->add_option("--n", k_n)->capture_default_str();
  cls->add_option("--f", k_f)->required();
  cls->add_option("--flavor", k_flavor, "partial (C^n) or full (C^[n])")->capture_default_str();
  cls->add_option("--samples", k_samples)->capture_default_str();
  cls->add_option("--seed", k_seed)->capture_default_str();
  cls->add_flag("--trust-samples", k_trust, "accept sampled evidence for black boxes");
  cls->callback([&] { run = [&] { return cmd_calc_class(kf, k_n, k_f, k_flavor, k_samples, k_seed, k_trust); }; });

  auto* linal = app.add_subcommand("linal", "operator norms and linearity classes");
  linal->require_subcommand(1);
  FieldOpts lf;
  std::string l_matrix, l_q = "1,1", l_map = "left", l_a = "u1";
  auto* opnorm = linal->add_subcommand("opnorm", "operator norm of a scalar matrix");
  add_field(opnorm, lf);
  opnorm->add_option("--matrix", l_matrix, "JSON rows of scalars (inline or file)")->required();
  opnorm->callback([&] { run = [&] { return cmd_opnorm(lf, l_matrix); }; });
  auto* classify = linal->add_subcommand("classify", "K_q / K_r / K_l classes of an algebra map");
  add_field(classify, lf);
  classify->add_option("--q", l_q)->capture_default_str();
  classify->add_option("--map", l_map, "left, right, conj or matrix")->capture_default_str();
  classify->add_option("--a", l_a, "element, or JSON rows of elements for matrix")->capture_default_str();
  classify->callback([&] { run = [&] { return cmd_classify(lf, l_q, l_map, l_a); }; });

  auto* group = app.add_subcommand("group", "finite magmas, skew products, Grothendieck groups");
  group->require_subcommand(1);
  std::string g_table, g_w = "S3", g_x, g_y;
  long long g_budget = 10000, g_naturals = 12;
  auto* audit = group->add_subcommand("audit", "axioms G1..G5 of a multiplication table");
  audit->add_option("--table", g_table, "JSON table (inline or file) or builtin name")->required();
  audit->callback([&] { run = [&] { return cmd_group_audit(g_table); }; });
  auto* skew = group->add_subcommand("skew-mul", "product in the skew product of W with F(a, b)");
  skew->add_option("--w", g_w, "W: builtin name or JSON table")->capture_default_str();
  skew->add_option("--x", g_x, "JSON [g1, w1, g2, w2]")->required();
  skew->add_option("--y", g_y, "JSON [g1, w1, g2, w2]")->required();
  skew->callback([&] { run = [&] { return cmd_skew_mul(g_w, g_x, g_y); }; });
  auto* equiv = group->add_subcommand("skew-equiv", "bounded search for an equivalence");
  equiv->add_option("--w", g_w)->capture_default_str();
  equiv->add_option("--x", g_x)->required();
  equiv->add_option("--y", g_y)->required();
  equiv->add_option("--budget", g_budget)->capture_default_str();
  equiv->callback([&] { run = [&] { return cmd_skew_equiv(g_w, g_x, g_y, g_budget); }; });
  auto* groth = group->add_subcommand("grothendieck", "group completion of a commutative monoid");
  groth->add_option("--naturals", g_naturals, "truncated (N, +) up to this bound")->capture_default_str();
  groth->add_option("--table", g_table, "monoid table instead (JSON or builtin)");
  groth->callback([&] { run = [&] { return cmd_grothendieck(g_naturals, g_table); }; });

  auto* wrapc = app.add_subcommand("wrap", "desk model of wrap monoids");
  wrapc->require_subcommand(1);
  WrapOpts wo;
  std::string w_f, w_g, w_kappa = "insert", w_group = "Z2", w_labels, w_edges = "all";
  bool w_exhaustive = false;
  int w_max_depth = 4;
  auto* compose = wrapc->add_subcommand("compose", "compose two flat maps");
  add_wrap(compose, wo);
  compose->add_option("--f", w_f, "grid map JSON (inline or file)")->required();
  compose->add_option("--g", w_g, "grid map JSON (inline or file)")->required();
  compose->add_option("--kappa", w_kappa, "insert or insert-deep")->capture_default_str();
  compose->callback([&] { run = [&] { return cmd_wrap_compose(wo, w_f, w_g, w_kappa); }; });
  auto* hol = wrapc->add_subcommand("holonomy", "endpoints and holonomy of a labelled transport");
  add_wrap(hol, wo);
  hol->add_option("--f", w_f, "base grid map JSON")->required();
  hol->add_option("--group", w_group)->capture_default_str();
  hol->add_option("--labels", w_labels, "JSON rows of edge labels per level");
  hol->callback([&] { run = [&] { return cmd_wrap_holonomy(wo, w_f, w_group, w_labels); }; });
  auto* waudit = wrapc->add_subcommand("audit", "monoid laws over all flat maps");
  add_wrap(waudit, wo);
  waudit->add_flag("--exhaustive", w_exhaustive, "accepted for clarity; audits are always exhaustive");
  waudit->add_option("--group", w_group, "also audit transport classes over this group");
  waudit->add_option("--edges", w_edges, "labelled edges: all or path")->capture_default_str();
  waudit->callback([&] {
    run = [&] { return cmd_wrap_audit(wo, waudit->count("--group") ? w_group : "", w_edges); };
  });
  auto* wclasses = wrapc->add_subcommand("classes", "class counts by depth");
  add_wrap(wclasses, wo);
  wclasses->add_option("--max-depth", w_max_depth)->capture_default_str();
  wclasses->callback([&] { run = [&] { return cmd_wrap_classes(wo, w_max_depth); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    emit(run(), as_json);
  } catch (const std::exception& e) {
    const std::string type = dynamic_cast<const NonCancellative*>(&e)      ? "NonCancellative"
                             : dynamic_cast<const NonCommutative*>(&e)     ? "NonCommutative"
                             : dynamic_cast<const ZeroNormElement*>(&e)    ? "ZeroNormElement"
                             : dynamic_cast<const expr::SyntaxError*>(&e)  ? "SyntaxError"
                             : dynamic_cast<const DivisionByZero*>(&e)     ? "DivisionByZero"
                             : dynamic_cast<const PrecisionLoss*>(&e)      ? "PrecisionLoss"
                             : dynamic_cast<const FieldError*>(&e)         ? "FieldError"
                             : dynamic_cast<const calc::NonConvergent*>(&e) ? "NonConvergent"
                                                                           : "Error";
    json err = {{"error", type}, {"message", e.what()}};
    if (const auto* nc = dynamic_cast<const NonCancellative*>(&e)) err["witness"] = nc->witness();
    if (as_json) {
      std::cout << err.dump(2) << "\n";
    } else {
      std::cerr << type << ": " << e.what() << "\n";
    }
    return 1;
  }
  return 0;
}
