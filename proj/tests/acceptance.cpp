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

// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero only when
// a criterion fails for a reason other than a documented known failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"
#include "ultrawrap/calculus.hpp"
#include "ultrawrap/cayley_dickson.hpp"
#include "ultrawrap/group_constructions.hpp"
#include "ultrawrap/linear_spaces.hpp"
#include "ultrawrap/padic.hpp"
#include "ultrawrap/quadratic_forms.hpp"
#include "ultrawrap/wrap_sim.hpp"

namespace ultrawrap {
namespace {

using testing::random_cd;
using testing::random_nonzero;
using testing::random_params;
using testing::random_scalar;
using testing::Rng;
using testing::uniform_int;

// Collects clause failures; only the first message per clause is kept.
class Checker {
 public:
  void expect(bool ok, const std::string& clause) {
    ++checks_;
    if (!ok && failed_.insert(clause).second) order_.push_back(clause);
  }
  // A clause that fails in a documented way.
  void known(const std::string& clause, const std::string& why) { known_.push_back(clause + ": " + why); }

  bool passed() const { return order_.empty() && known_.empty(); }
  bool only_known() const { return order_.empty() && !known_.empty(); }
  long checks() const { return checks_; }
  std::string summary() const {
    std::ostringstream s;
    for (const auto& c : order_) s << " [failed: " << c << "]";
    for (const auto& c : known_) s << " [known: " << c << "]";
    return s.str();
  }

 private:
  long checks_ = 0;
  std::set<std::string> failed_;
  std::vector<std::string> order_;
  std::vector<std::string> known_;
};

FieldSpec qp(int p, int prec = 10) { return {FieldKind::kPadic, p, prec}; }
UltraScalar I(std::int64_t n, const FieldSpec& f) { return UltraScalar::from_integer(n, f); }

// ------------------------------------------------------------- 1 and 2

void algebra_laws(Checker& c) {
  Rng rng(1001);
  for (const FieldSpec& f : {qp(3), qp(5), FieldSpec{FieldKind::kLaurent, 3, 10}}) {
    for (int level = 1; level <= 3; ++level) {
      for (int trial = 0; trial < 1000; ++trial) {
        auto p = random_params(rng, f, level);
        const CDElement a = random_cd(rng, p), b = random_cd(rng, p);
        c.expect(conj(conj(a)) == a, "involution");
        const CDElement s = a + conj(a), n = a * conj(a);
        c.expect(s.is_scalar() && s[0] == trace(a), "trace is scalar");
        c.expect(n.is_scalar() && n[0] == norm_value(a), "norm is scalar");
        auto [a1, a2] = halves(a);
        c.expect(conj(a) == from_halves(p, conj(a1), -a2), "doubled conjugate");
        c.expect(norm_value(a) == norm_value(a1) + p->q()[level - 1] * norm_value(a2), "doubling norm rule");
        c.expect(a * (b * b) == (a * b) * b, "right alternativity");
        c.expect(b * (b * a) == (b * b) * a, "left alternativity");
        c.expect(norm_value(a * b) == norm_value(a) * norm_value(b), "norm multiplicativity");
      }
    }
  }
  auto p = CDParams::make(qp(5), std::vector<std::int64_t>{2, 3, 7});
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const CDElement ui = CDElement::generator(p, i), uj = CDElement::generator(p, j);
      c.expect(cd_mul(ui, uj) == table_mul(ui, uj), "doubling equals table");
    }
  }
}

void non_associativity(Checker& c) {
  auto p = CDParams::make(qp(5), std::vector<std::int64_t>{1, 1, 1});
  auto u = [&](int j) { return CDElement::generator(p, j); };
  const CDElement left = (u(1) * u(2)) * u(4), right = u(1) * (u(2) * u(4));
  c.expect(left == -u(7), "(u1u2)u4 = -u7");
  c.expect(right == u(7), "u1(u2u4) = u7");
  c.expect(!(left == right), "brackets differ");
}

// ------------------------------------------------------------------ 3

void division(Checker& c) {
  auto q2 = CDParams::make(qp(2), std::vector<std::int64_t>{1, 1});
  const DivisionVerdict d2 = has_division_property(q2, 4);
  c.expect(d2.division && d2.exhaustive && d2.depth >= 4, "A2(1,1)/Q2 exhaustive refutation mod 16");
  c.expect(hilbert_symbol(-q2->q()[0], -q2->q()[1]) == -1, "A2(1,1)/Q2 Hilbert symbol -1");

  auto q5 = CDParams::make(qp(5), std::vector<std::int64_t>{1, 1});
  const DivisionVerdict d5 = has_division_property(q5);
  c.expect(!d5.division && d5.a && d5.b, "A2(1,1)/Q5 zero divisors");
  if (d5.a && d5.b) {
    c.expect(*d5.b == conj(*d5.a), "pair is (b, b*)");
    c.expect(cd_mul(*d5.a, *d5.b).is_zero() && !d5.a->is_zero(), "b b* = 0 exactly");
  }

  int agree = 0, total = 0;
  for (int p : {2, 3, 5, 7, 13}) {
    for (std::int64_t q1 : {1, -1, p, -p}) {
      for (std::int64_t q2v : {1, -1, p, -p}) {
        auto params = CDParams::make(qp(p), std::vector<std::int64_t>{q1, q2v});
        const DivisionVerdict v = has_division_property(params);
        const bool h = hilbert_symbol(-params->q()[0], -params->q()[1]) == -1;
        ++total;
        agree += v.exhaustive && v.division == h;
        if (!v.division) c.expect(v.a && cd_mul(*v.a, *v.b).is_zero(), "quaternion witness is a zero divisor");
      }
    }
  }
  c.expect(agree == total, "Hilbert and search agree on every quaternion case");

  for (int p : {3, 5, 7, 13}) {
    for (std::int64_t q1 : {1, -1, p, -p}) {
      for (std::int64_t q2v : {1, -1, p, -p}) {
        for (std::int64_t q3 : {1, -1, p, -p}) {
          auto params = CDParams::make(qp(p), std::vector<std::int64_t>{q1, q2v, q3});
          const DivisionVerdict v = has_division_property(params);
          c.expect(!v.division && v.a && v.b && cd_mul(*v.a, *v.b).is_zero(), "A3 witness found");
        }
      }
    }
  }
}

// ------------------------------------------------------------------ 4

// (prod t_j)^-1 sum over subsets S of (-1)^(n-|S|) f(x + sum_S t_j v_j).
UltraScalar alternating_sum(const calc::ScalarFn<UltraScalar>& f, const UltraScalar& x,
                            const std::vector<UltraScalar>& v, const std::vector<UltraScalar>& t) {
  const int n = static_cast<int>(v.size());
  std::optional<UltraScalar> sum;
  for (int mask = 0; mask < (1 << n); ++mask) {
    UltraScalar y = x;
    int size = 0;
    for (int j = 0; j < n; ++j) {
      if (mask >> j & 1) {
        y = y + t[j] * v[j];
        ++size;
      }
    }
    UltraScalar term = f(y);
    if ((n - size) & 1) term = -term;
    sum = sum ? *sum + term : term;
  }
  UltraScalar out = *sum;
  for (const auto& tj : t) out = out / tj;
  return out;
}

void calculus(Checker& c) {
  Rng rng(1004);
  const std::vector<FieldSpec> fields{qp(5, 12), qp(2, 12), qp(7, 12), FieldSpec{FieldKind::kLaurent, 3, 12}};
  for (int i = 0; i < 200; ++i) {
    const FieldSpec& f = fields[i % fields.size()];
    const int n = 1 + i % 3;
    std::vector<UltraScalar> coeffs;
    for (int k = 0, d = uniform_int(rng, 0, 4); k <= d; ++k) coeffs.push_back(random_scalar(rng, f, 0, 1));
    const auto poly = calc::ScalarFn<UltraScalar>::polynomial(std::move(coeffs));
    const UltraScalar x = random_scalar(rng, f, 0, 2);
    std::vector<UltraScalar> v, t;
    for (int j = 0; j < n; ++j) {
      v.push_back(random_scalar(rng, f, 0, 2));
      t.push_back(random_nonzero(rng, f, 0, 1));
    }
    c.expect(calc::phi_n(poly, calc::QuotientPoint{x, v, t}) == alternating_sum(poly, x, v, t),
             "Phi^n matches the alternating sum");
  }

  const FieldSpec f = qp(5, 12);
  const auto sq = calc::corpus_function("x^2", f);
  const auto lc = calc::corpus_function("locally-constant:3", f);
  c.expect(!(lc(I(1, f)) == lc(I(6, f))), "locally constant corpus is non-constant");
  for (int i = 0; i < 20; ++i) {
    const UltraScalar x = random_scalar(rng, f), v1 = random_scalar(rng, f), v2 = random_scalar(rng, f);
    c.expect(calc::differential_n(sq, x, {v1}) == I(2, f) * x * v1, "d(x^2) = 2xv");
    c.expect(calc::differential_n(sq, x, {v1, v2}) == I(4, f) * v1 * v2, "d^2(x^2) = 4 v1 v2");
    std::vector<UltraScalar> vs;
    for (int n = 1; n <= 3; ++n) {
      vs.push_back(random_scalar(rng, f));
      c.expect(calc::differential_n(lc, x, vs).is_zero(), "d^n of a locally constant function is 0");
    }
  }
}

// ------------------------------------------------------------------ 5

void operator_norm(Checker& c) {
  Rng rng(1005);
  const FieldSpec f = qp(5);
  for (int m = 0; m < 20; ++m) {
    const int rows = uniform_int(rng, 1, 4), cols = uniform_int(rng, 1, 4);
    std::vector<UltraScalar> e;
    for (int i = 0; i < rows * cols; ++i) e.push_back(random_scalar(rng, f, -2, 3));
    const auto a = linal::FiniteMap::matrix(rows, cols, std::move(e));
    const Norm bound = linal::operator_norm(a);
    for (int s = 0; s < 1000; ++s) {
      std::vector<UltraScalar> h;
      for (int j = 0; j < cols; ++j) h.push_back(random_scalar(rng, f, -2, 3));
      const Norm nh = linal::sup_norm(h);
      if (nh == Norm::zero(5)) continue;
      c.expect(linal::sup_norm(a.apply(h)) <= bound * nh, "bound dominates every sampled quotient");
    }
    Norm basis = Norm::zero(5);
    for (int j = 0; j < cols; ++j) {
      std::vector<UltraScalar> ej(cols, UltraScalar::zero(f));
      ej[j] = UltraScalar::one(f);
      basis = max(basis, linal::sup_norm(a.apply(ej)));
    }
    c.expect(basis == bound, "attained on a basis vector");
  }
}

// ------------------------------------------------------------------ 6

using W = ReducedWord;

W random_word(Rng& rng, int max_len) {
  std::vector<W::Syllable> s;
  for (int i = 0, n = uniform_int(rng, 0, max_len); i < n; ++i) {
    s.push_back({uniform_int(rng, 0, 1), uniform_int(rng, 0, 1) ? 1L : -1L});
  }
  return free_reduce(s);
}

void special_cases(Checker& c, const SkewProduct& s, const SkewElement& x, const SkewElement& y) {
  const int e = s.e();
  const auto& w = *s.w();
  const W eb;
  c.expect(s.mul(s.make(e, eb, x.g2, x.w2), s.make(e, eb, y.g2, y.w2)) ==
               s.make(e, eb, w.mul(y.g2, x.g2), y.w2 * x.w2),
           "(e x g1a1)(e x g2a2)");
  c.expect(s.mul(s.make(x.g1, x.w1, e, eb), s.make(y.g1, y.w1, e, eb)) ==
               s.make(w.mul(x.g1, y.g1), x.w1 * y.w1, e, eb),
           "(g1a1 x e)(g2a2 x e)");
  c.expect(s.mul(s.make(x.g1, x.w1, e, eb), s.make(e, eb, y.g2, y.w2)) ==
               s.make(x.g1, x.w1, y.g2, x.w1.inverse() * y.w2 * x.w1),
           "(g1a1 x e)(e x g4a4)");
  c.expect(s.mul(s.make(e, eb, x.g2, x.w2), s.make(y.g1, y.w1, e, eb)) == s.make(y.g1, y.w1, x.g2, x.w2),
           "(e x g4a4)(g1a1 x e)");
}

void skew_product(Checker& c) {
  Rng rng(1006);
  for (const MagmaPtr& m : {FiniteMagma::cyclic(4), FiniteMagma::symmetric(3), FiniteMagma::quaternion_units()}) {
    const SkewProduct s(m);
    const int n = m->size();
    for (int g1 = 0; g1 < n; ++g1) {
      for (int g2 = 0; g2 < n; ++g2) {
        special_cases(c, s, s.make(g1, {}, g2, {}), s.make(g2, {}, g1, {}));
        c.expect(s.mul(s.theta(g1), s.theta(g2)) == s.theta(m->mul(g1, g2)), "theta is a homomorphism");
      }
    }
    for (int it = 0; it < 1000; ++it) {
      const SkewElement x = s.make(uniform_int(rng, 0, n - 1), random_word(rng, 4), uniform_int(rng, 0, n - 1),
                                   random_word(rng, 4));
      const SkewElement y = s.make(uniform_int(rng, 0, n - 1), random_word(rng, 4), uniform_int(rng, 0, n - 1),
                                   random_word(rng, 4));
      special_cases(c, s, x, y);
    }
    c.expect(audit_axioms(*quotient_group_on_trivial_words(*m)).alternative(),
             "alternative on trivial-word carriers");
  }

  // Chain in B (W trivial) with (a x b) ~ (e x e).
  const SkewProduct s(FiniteMagma::cyclic(1));
  auto el = [&](const char* u, const char* v) { return s.make(0, W::parse(u), 0, W::parse(v)); };
  const SkewElement ab = el("a", "b"), eb = el("e", "b"), ae = el("a", "e");
  const SkewElement s0 = s.mul(ab, ab);
  const SkewElement s2 = s.mul(s.mul(eb, ae), s.mul(eb, ae));
  const SkewElement s3 = s.mul(s.mul(eb, s.mul(ae, eb)), ae);
  const SkewElement s4 = s.mul(el("e", "a^-1ba"), ae);
  const SkewElement s5 = s.mul(el("e", "ab"), el("ba", "e"));
  c.expect(skew_equiv(s, s0, s.identity()).verdict == EquivVerdict::kEquivalent, "chain step 1");
  c.expect(skew_equiv(s, s.identity(), s2).verdict == EquivVerdict::kEquivalent, "chain step 2");
  c.expect(skew_equiv(s, s2, s3).verdict == EquivVerdict::kEquivalent, "chain step 3");
  const EquivResult whole = skew_equiv(s, s0, s5, 10000);
  if (whole.verdict == EquivVerdict::kEquivalent) return;
  const EquivResult mid = skew_equiv(s, s3, s4, 10000);
  const EquivResult last = skew_equiv(s, s4, s5, 10000);
  if (whole.verdict == EquivVerdict::kDistinct && mid.verdict == EquivVerdict::kUnknown &&
      last.verdict == EquivVerdict::kDistinct) {
    c.known("rewriting chain",
            "rebracketing step unknown at 10^4 expansions; chain ends are separated by an invariant");
  } else {
    c.expect(false, "rewriting chain");
  }
}

// ------------------------------------------------------------------ 7

void grothendieck(Checker& c) {
  const long long n = 30;
  const GrothendieckGroup<long long> g(truncated_naturals(n));
  c.expect(g.eta_injective(), "eta injective");
  for (long long m = 0; m <= n; ++m) {
    for (long long k = 0; k <= n; ++k) {
      for (long long m2 = 0; m2 <= n; m2 += 3) {
        for (long long k2 = 0; k2 <= n; k2 += 2) {
          c.expect(g.equal(g.difference(m, k), g.difference(m2, k2)) == (m - k == m2 - k2),
                   "[m]-[k] -> m-k is well defined and injective");
        }
      }
      const auto d = g.difference(m, k);
      c.expect(g.equal(g.add(d, g.negate(d)), g.zero()), "inverses");
      if (m + k <= n) c.expect(g.equal(g.add(g.eta(m), g.eta(k)), g.eta(m + k)), "eta is additive");
    }
  }
  const auto mx = std::make_shared<FiniteMagma>(
      std::vector<std::string>{"0", "1", "2"}, std::vector<std::vector<int>>{{0, 1, 2}, {1, 1, 2}, {2, 2, 2}}, 0);
  bool raised = false;
  try {
    GrothendieckGroup<int> bad(as_monoid(mx));
  } catch (const NonCancellative& e) {
    raised = e.witness().size() == 3;
  }
  c.expect(raised, "NonCancellative raised with a witness");
}

// ------------------------------------------------------------------ 8

std::vector<wrap::TransportMap> transports(const MagmaPtr& g, bool all_edges) {
  std::vector<wrap::TransportMap> out;
  for (const wrap::GridMap& b : wrap::enumerate_flat_maps(wrap::BallGrid::standard(2, 2, 1), 2)) {
    const wrap::TransportMap t = wrap::TransportMap::trivial(b, g);
    std::vector<long> edges(t.edge_count());
    std::iota(edges.begin(), edges.end(), 0L);
    for (auto& l : wrap::enumerate_labelings(t, all_edges ? edges : wrap::marked_path_edges(t.hat))) {
      out.push_back(std::move(l));
    }
  }
  return out;
}

bool law(const wrap::DeskAudit& a, const std::string& name) {
  for (const auto& l : a.laws) {
    if (l.name == name) return l.holds;
  }
  return false;
}

void wrap_model(Checker& c) {
  const wrap::DeskAudit desk = wrap::audit_desk_monoid(2, 2, 2, 1);
  for (const char* name : {"unit", "cancellation", "alternativity", "well-defined on classes", "kappa independence"}) {
    c.expect(law(desk, name), std::string("desk ") + name);
  }
  const wrap::DeskAudit trivial = wrap::audit_transport(transports(FiniteMagma::cyclic(1), true));
  c.expect(law(trivial, "commutativity"), "commutative for trivial G");
  const wrap::DeskAudit z2 = wrap::audit_transport(transports(FiniteMagma::cyclic(2), true));
  c.expect(law(z2, "commutativity"), "commutative for Z/2");
  c.expect(law(z2, "holonomy morphism"), "holonomy morphism for Z/2");
  const wrap::DeskAudit s3 = wrap::audit_transport(transports(FiniteMagma::symmetric(3), false));
  c.expect(law(s3, "holonomy morphism"), "holonomy morphism for S3");
}

// ------------------------------------------------------------------ 9

void field_layer(Checker& c) {
  Rng rng(1009);
  for (const FieldSpec& f : {qp(5), FieldSpec{FieldKind::kLaurent, 3, 10}}) {
    for (int i = 0; i < 10000; ++i) {
      const UltraScalar x = random_scalar(rng, f, -4, 4), y = random_scalar(rng, f, -4, 4);
      c.expect((x + y).norm() <= max(x.norm(), y.norm()), "ultrametric inequality");
      if (x.norm() != y.norm()) c.expect((x + y).norm() == max(x.norm(), y.norm()), "strict case");
      c.expect((x * y).norm() == x.norm() * y.norm(), "multiplicativity");
    }
  }
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Checker&)> run;
};

}  // namespace
}  // namespace ultrawrap

int main() {
  using namespace ultrawrap;
  const std::vector<Criterion> criteria{
      {1, "algebra laws and doubling table", 5, algebra_laws},
      {2, "non-associativity witness", 1, non_associativity},
      {3, "division property", 30, division},
      {4, "difference quotients and differentials", 5, calculus},
      {5, "operator norm", 5, operator_norm},
      {6, "skew product", 20, skew_product},
      {7, "Grothendieck completion", 1, grothendieck},
      {8, "wrap desk model", 60, wrap_model},
      {9, "field layer", 5, field_layer},
  };
  int unexpected = 0;
  for (const Criterion& cr : criteria) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = s < cr.limit_s;
    const bool pass = error.empty() && c.passed() && in_time;
    const bool known = error.empty() && c.only_known() && in_time;
    if (!pass && !known) ++unexpected;
    std::printf("%s %d %s (%ld checks, %.2f s, limit %.0f s)%s%s%s\n", pass ? "PASS" : "FAIL", cr.id, cr.name,
                c.checks(), s, cr.limit_s, c.summary().c_str(), in_time ? "" : " [over time limit]",
                error.empty() ? "" : (" [exception: " + error + "]").c_str());
  }
  std::printf("%d unexpected failure(s)\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}
