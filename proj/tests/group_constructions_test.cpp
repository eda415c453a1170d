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

#include "ultrawrap/group_constructions.hpp"

#include <gtest/gtest.h>

#include <set>

#include "support/generators.hpp"

namespace ultrawrap {
namespace {

using testing::Rng;
using testing::uniform_int;
using W = ReducedWord;

// Reduction by a stack of single letters, independent of free_reduce.
std::vector<int> letters_reduced(const std::vector<int>& letters) {
  std::vector<int> st;
  for (int x : letters) {
    if (!st.empty() && st.back() == -x) {
      st.pop_back();
    } else {
      st.push_back(x);
    }
  }
  return st;
}

// Letters +-1 for a^+-1 and +-2 for b^+-1.
std::vector<int> to_letters(const W& w) {
  std::vector<int> out;
  for (const auto& s : w.syllables()) {
    for (long i = 0; i < std::labs(s.exp); ++i) out.push_back((s.gen + 1) * (s.exp > 0 ? 1 : -1));
  }
  return out;
}

W from_letters(const std::vector<int>& l) {
  std::vector<W::Syllable> s;
  for (int x : l) s.push_back({std::abs(x) - 1, x > 0 ? 1L : -1L});
  return free_reduce(s);
}

std::vector<int> random_letters(Rng& rng, int max_len) {
  std::vector<int> l(uniform_int(rng, 0, max_len));
  for (int& x : l) x = (uniform_int(rng, 0, 1) ? 1 : 2) * (uniform_int(rng, 0, 1) ? 1 : -1);
  return l;
}

W random_word(Rng& rng, int max_len = 6) { return from_letters(random_letters(rng, max_len)); }

SkewElement random_skew(Rng& rng, const SkewProduct& s, int max_len = 4) {
  const int n = s.w()->size();
  return s.make(uniform_int(rng, 0, n - 1), random_word(rng, max_len), uniform_int(rng, 0, n - 1),
                random_word(rng, max_len));
}

// ---------------------------------------------------------------- audit

TEST(MagmaAudit, SignedOctonionGeneratorsAreAlternativeNotAssociative) {
  const MagmaPtr o = FiniteMagma::signed_generators(3);
  ASSERT_EQ(o->size(), 16);
  const MagmaAudit a = audit_axioms(*o);
  EXPECT_TRUE(a.g[0].holds);
  EXPECT_TRUE(a.g[1].holds);
  EXPECT_TRUE(a.g[2].holds);
  EXPECT_TRUE(a.g[3].holds);
  EXPECT_FALSE(a.g[4].holds);
  ASSERT_TRUE(a.g[4].witness);
  const auto& t = a.g[4].witness->elements;
  ASSERT_EQ(t.size(), 3u);
  EXPECT_NE(o->mul(o->mul(t[0], t[1]), t[2]), o->mul(t[0], o->mul(t[1], t[2])));
  EXPECT_EQ(o->name(t[0]), "+u1");
  EXPECT_EQ(o->name(t[1]), "+u2");
  EXPECT_EQ(o->name(t[2]), "+u4");
  const int u1 = o->index_of("+u1"), u2 = o->index_of("+u2"), u4 = o->index_of("+u4");
  EXPECT_EQ(o->name(o->mul(o->mul(u1, u2), u4)), "-u7");
  EXPECT_EQ(o->name(o->mul(u1, o->mul(u2, u4))), "+u7");
}

TEST(MagmaAudit, GroupsPassEverything) {
  for (const MagmaPtr& m : {FiniteMagma::cyclic(4), FiniteMagma::symmetric(3),
                            FiniteMagma::quaternion_units(), FiniteMagma::symmetric(4)}) {
    const MagmaAudit a = audit_axioms(*m);
    EXPECT_TRUE(a.group()) << a.to_string(*m);
  }
}

TEST(MagmaAudit, BrokenInverseFailsG3) {
  // {e, x} with x x = x: a unit but no inverse for x.
  const FiniteMagma m({"e", "x"}, {{0, 1}, {1, 1}});
  const MagmaAudit a = audit_axioms(m);
  EXPECT_TRUE(a.g[1].holds);
  EXPECT_FALSE(a.g[2].holds);
  ASSERT_TRUE(a.g[2].witness);
  EXPECT_EQ(a.g[2].witness->elements, std::vector<int>{1});
  // A claimed but wrong inverse table is refused.
  EXPECT_THROW(FiniteMagma({"e", "x"}, {{0, 1}, {1, 1}}, 0, std::vector<int>{0, 1}),
               std::invalid_argument);
  EXPECT_THROW(FiniteMagma({"e", "x"}, {{0, 1}, {1, 1}}, 1), std::invalid_argument);
}

TEST(MagmaAudit, CapAndNoUnit) {
  EXPECT_THROW(audit_axioms(*FiniteMagma::cyclic(20), 10), CapExceeded);
  // Left-zero band x y = x: associative, no unit.
  const FiniteMagma lz({"p", "q"}, {{0, 0}, {1, 1}});
  const MagmaAudit a = audit_axioms(lz);
  EXPECT_FALSE(a.g[1].holds);
  EXPECT_FALSE(a.g[2].holds);
  EXPECT_TRUE(a.g[4].holds);
}

TEST(MagmaAudit, Abelianization) {
  auto classes = [](const MagmaPtr& m) {
    const auto ab = abelianization(*m);
    return std::set<int>(ab.begin(), ab.end()).size();
  };
  EXPECT_EQ(classes(FiniteMagma::cyclic(4)), 4u);
  EXPECT_EQ(classes(FiniteMagma::symmetric(3)), 2u);
  EXPECT_EQ(classes(FiniteMagma::quaternion_units()), 4u);
  EXPECT_EQ(classes(FiniteMagma::symmetric(4)), 2u);
}

// ----------------------------------------------------------- free group

TEST(FreeGroup, Examples) {
  EXPECT_TRUE((W::a() * W::a().inverse()).is_identity());
  EXPECT_FALSE(W::parse("b^-1 a b a^-1").is_identity());
  EXPECT_EQ(W::parse("ab") * W::parse("b^-1a"), W::generator(0, 2));
  EXPECT_EQ(W::parse("a^2b^-3").to_string(), "a^2b^-3");
  EXPECT_EQ(W::parse("e").to_string(), "e");
  EXPECT_EQ(W::parse("aab b^-1 a"), W::generator(0, 3));
  EXPECT_THROW(W::parse("ac"), std::invalid_argument);
}

TEST(FreeGroup, ReductionMatchesLetterStack) {
  Rng rng(11);
  for (int it = 0; it < 2000; ++it) {
    const std::vector<int> l = random_letters(rng, 14);
    const W w = from_letters(l);
    EXPECT_EQ(to_letters(w), letters_reduced(l));
    EXPECT_LE(w.length(), static_cast<long>(l.size()));
    // Idempotent.
    EXPECT_EQ(free_reduce(w.syllables()), w);
    EXPECT_EQ(W::parse(w.to_string()), w);
  }
}

TEST(FreeGroup, GroupLaws) {
  Rng rng(12);
  for (int it = 0; it < 1000; ++it) {
    const W x = random_word(rng), y = random_word(rng), z = random_word(rng);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_TRUE((x * x.inverse()).is_identity());
    EXPECT_TRUE((x.inverse() * x).is_identity());
    EXPECT_EQ(x * W(), x);
    std::vector<int> cat = to_letters(x), ly = to_letters(y);
    cat.insert(cat.end(), ly.begin(), ly.end());
    EXPECT_EQ(to_letters(x * y), letters_reduced(cat));
    EXPECT_EQ((x * y).exponent_sum(0), x.exponent_sum(0) + y.exponent_sum(0));
  }
}

// --------------------------------------------------------- skew product

// The four displayed special cases of the product formula.
void check_special_cases(const SkewProduct& s, const SkewElement& x, const SkewElement& y) {
  const int e = s.e();
  const auto& w = *s.w();
  const W eb;
  // (e (x) g1a1)(e (x) g2a2) = e (x) (g2g1)(a2a1).
  EXPECT_EQ(s.mul(s.make(e, eb, x.g2, x.w2), s.make(e, eb, y.g2, y.w2)),
            s.make(e, eb, w.mul(y.g2, x.g2), y.w2 * x.w2));
  // (g1a1 (x) e)(g2a2 (x) e) = (g1g2)(a1a2) (x) e.
  EXPECT_EQ(s.mul(s.make(x.g1, x.w1, e, eb), s.make(y.g1, y.w1, e, eb)),
            s.make(w.mul(x.g1, y.g1), x.w1 * y.w1, e, eb));
  // (g1a1 (x) e)(e (x) g4a4) = g1a1 (x) g4(a1^-1 a4 a1).
  EXPECT_EQ(s.mul(s.make(x.g1, x.w1, e, eb), s.make(e, eb, y.g2, y.w2)),
            s.make(x.g1, x.w1, y.g2, x.w1.inverse() * y.w2 * x.w1));
  // (e (x) g4a4)(g1a1 (x) e) = g1a1 (x) g4a4.
  EXPECT_EQ(s.mul(s.make(e, eb, x.g2, x.w2), s.make(y.g1, y.w1, e, eb)),
            s.make(y.g1, y.w1, x.g2, x.w2));
}

TEST(SkewProduct, QuaternionExample) {
  const MagmaPtr q = FiniteMagma::quaternion_units();
  const SkewProduct s(q);
  const int i = q->index_of("+u1"), j = q->index_of("+u2"), k = q->index_of("+u3");
  EXPECT_EQ(s.mul(s.theta(i), s.theta(j)), s.theta(k));
  Rng rng(3);
  for (int it = 0; it < 200; ++it) {
    const SkewElement x = random_skew(rng, s);
    EXPECT_EQ(s.mul(x, s.identity()), x);
    EXPECT_EQ(s.mul(s.identity(), x), x);
  }
}

TEST(SkewProduct, SpecialCasesExhaustiveOnTrivialWords) {
  for (const MagmaPtr& m :
       {FiniteMagma::cyclic(4), FiniteMagma::symmetric(3), FiniteMagma::quaternion_units()}) {
    const SkewProduct s(m);
    for (int g1 = 0; g1 < m->size(); ++g1) {
      for (int g2 = 0; g2 < m->size(); ++g2) {
        check_special_cases(s, s.make(g1, {}, g1, {}), s.make(g2, {}, g2, {}));
        check_special_cases(s, s.make(g1, {}, g2, {}), s.make(g2, {}, g1, {}));
      }
    }
  }
}

TEST(SkewProduct, SpecialCasesOnRandomWords) {
  Rng rng(4);
  for (const MagmaPtr& m :
       {FiniteMagma::cyclic(4), FiniteMagma::symmetric(3), FiniteMagma::quaternion_units()}) {
    const SkewProduct s(m);
    for (int it = 0; it < 1000; ++it) check_special_cases(s, random_skew(rng, s), random_skew(rng, s));
  }
}

TEST(SkewProduct, InverseAndDivision) {
  Rng rng(5);
  const SkewProduct s(FiniteMagma::symmetric(3));
  for (int it = 0; it < 500; ++it) {
    const SkewElement x = random_skew(rng, s), l = random_skew(rng, s);
    EXPECT_EQ(s.mul(x, s.inverse(x)), s.identity());
    EXPECT_EQ(s.mul(s.inverse(x), x), s.identity());
    EXPECT_EQ(s.mul(s.right_divide(x, l), l), x);
    EXPECT_EQ(s.mul(l, s.left_divide(l, x)), x);
  }
}

TEST(SkewProduct, NotAssociativeOnWords) {
  // The B part (x1, y1)(x2, y2) = (x1 x2, x1^-1 y2 x1 y1) is not associative.
  const SkewProduct s(FiniteMagma::cyclic(1));
  const SkewElement x = s.make(0, W::a(), 0, {}), y = s.make(0, W::b(), 0, {}),
                    z = s.make(0, {}, 0, W::b());
  EXPECT_NE(s.mul(s.mul(x, y), z), s.mul(x, s.mul(y, z)));
}

TEST(SkewProduct, CommutatorExpansion) {
  Rng rng(6);
  for (const MagmaPtr& m : {FiniteMagma::symmetric(3), FiniteMagma::quaternion_units()}) {
    const SkewProduct s(m);
    const FiniteMagma& w = *m;
    for (int it = 0; it < 300; ++it) {
      const SkewElement x = random_skew(rng, s), y = random_skew(rng, s);
      const SkewElement got = s.mul(s.mul(x, y), s.mul(s.inverse(x), s.inverse(y)));
      const int g1 = x.g1, g2 = x.g2, g3 = y.g1, g4 = y.g2;
      const W &a1 = x.w1, &a2 = x.w2, &a3 = y.w1, &a4 = y.w2;
      auto inv = [&](int g) { return w.inverse_or_throw(g); };
      const W a13 = a1 * a3;
      const SkewElement want = s.make(
          w.mul(w.mul(g1, g3), w.mul(inv(g1), inv(g3))), a1 * a3 * a1.inverse() * a3.inverse(),
          w.mul(w.mul(inv(g4), inv(g2)), w.mul(g4, g2)),
          (a13.inverse() * ((a13 * a4.inverse() * a13.inverse()) * (a1 * a2.inverse() * a1.inverse())) *
           a13) *
              ((a1.inverse() * a4 * a1) * a2));
      EXPECT_EQ(got, want);
    }
  }
}

// ---------------------------------------------------- trivial-word part

TEST(QuotientGroup, ThetaIsHomomorphismAndInverseLaw) {
  const MagmaPtr w = FiniteMagma::symmetric(3);
  const MagmaPtr q = quotient_group_on_trivial_words(*w);
  const int n = w->size();
  auto theta = [n](int g) { return g * n + 0; };
  ASSERT_EQ(*w->unit(), 0);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) EXPECT_EQ(theta(w->mul(g, h)), q->mul(theta(g), theta(h)));
  }
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      const int x = g * n + h, xi = w->inverse_or_throw(g) * n + w->inverse_or_throw(h);
      EXPECT_EQ(q->mul(x, xi), *q->unit());
      EXPECT_EQ(q->mul(xi, x), *q->unit());
    }
  }
}

TEST(QuotientGroup, AgreesWithSkewProductOnTrivialWords) {
  for (const MagmaPtr& m : {FiniteMagma::symmetric(3), FiniteMagma::quaternion_units(),
                            FiniteMagma::symmetric(4), FiniteMagma::signed_generators(3)}) {
    const SkewProduct s(m);
    const MagmaPtr q = quotient_group_on_trivial_words(*m);
    const int n = m->size();
    for (int x = 0; x < n * n; ++x) {
      for (int y = 0; y < n * n; ++y) {
        const SkewElement p = s.mul(s.make(x / n, {}, x % n, {}), s.make(y / n, {}, y % n, {}));
        ASSERT_TRUE(p.w1.is_identity() && p.w2.is_identity());
        ASSERT_EQ(p.g1 * n + p.g2, q->mul(x, y));
      }
    }
  }
}

TEST(QuotientGroup, AssociativeIffWordGroupAssociative) {
  const MagmaAudit s3 = audit_axioms(*quotient_group_on_trivial_words(*FiniteMagma::symmetric(3)));
  EXPECT_TRUE(s3.group());
  const MagmaAudit oct = audit_axioms(*quotient_group_on_trivial_words(*FiniteMagma::signed_generators(3)));
  EXPECT_TRUE(oct.alternative());
  EXPECT_FALSE(oct.g[4].holds);
}

TEST(QuotientGroup, AlternativeOnQuaternionUnits) {
  const MagmaPtr q = quotient_group_on_trivial_words(*FiniteMagma::quaternion_units());
  for (int x = 0; x < q->size(); ++x) {
    for (int y = 0; y < q->size(); ++y) {
      EXPECT_EQ(q->mul(q->mul(x, x), y), q->mul(x, q->mul(x, y)));
      EXPECT_EQ(q->mul(q->mul(y, x), x), q->mul(y, q->mul(x, x)));
    }
  }
}

// ------------------------------------------------------------ rewriting

TEST(SkewEquiv, RelationIsOneStep) {
  const MagmaPtr m = FiniteMagma::symmetric(3);
  const SkewProduct s(m);
  for (int g1 = 0; g1 < m->size(); ++g1) {
    for (int g2 = 0; g2 < m->size(); ++g2) {
      const EquivResult r = skew_equiv(s, s.relation_lhs(g1, g2), s.relation_rhs(g1), 100);
      ASSERT_EQ(r.verdict, EquivVerdict::kEquivalent);
      EXPECT_EQ(r.path.size(), 2u);
    }
  }
}

TEST(SkewEquiv, InvariantSeparates) {
  const MagmaPtr m = FiniteMagma::symmetric(3);
  const SkewProduct s(m);
  // Transposition vs identity: different images in the abelianization.
  const EquivResult r = skew_equiv(s, s.theta(m->index_of("102")), s.identity());
  EXPECT_EQ(r.verdict, EquivVerdict::kDistinct);
  EXPECT_EQ(r.expanded, 0);
  // Same invariant, tiny budget: no claim either way.
  const SkewElement x = s.make(0, W::parse("aba^-1b^-1"), 0, {});
  const EquivResult u = skew_equiv(s, x, s.identity(), 1);
  EXPECT_EQ(u.verdict, EquivVerdict::kUnknown);
}

TEST(SkewEquiv, PathStepsPreserveInvariant) {
  const SkewProduct s(FiniteMagma::cyclic(2));
  Rng rng(8);
  for (int it = 0; it < 20; ++it) {
    const SkewElement x = random_skew(rng, s, 2);
    // c * L ~ c * R for a random context c.
    const SkewElement l = s.relation_lhs(1, 1), r = s.relation_rhs(1);
    const EquivResult res = skew_equiv(s, s.mul(x, l), s.mul(x, r), 1000);
    ASSERT_EQ(res.verdict, EquivVerdict::kEquivalent);
    for (const auto& z : res.path) EXPECT_EQ(s.invariant(z), res.invariant_x);
  }
}

TEST(SkewEquiv, RewritingChainStopsAtRebracketing) {
  // W trivial: B^2 with (a (x) b) ~ (e (x) e).
  const SkewProduct s(FiniteMagma::cyclic(1));
  auto el = [&](const char* u, const char* v) { return s.make(0, W::parse(u), 0, W::parse(v)); };
  const SkewElement ab = el("a", "b"), eb = el("e", "b"), ae = el("a", "e");
  const SkewElement s0 = s.mul(ab, ab);
  const SkewElement s1 = s.identity();
  const SkewElement s2 = s.mul(s.mul(eb, ae), s.mul(eb, ae));
  const SkewElement s3 = s.mul(s.mul(eb, s.mul(ae, eb)), ae);
  const SkewElement s4 = s.mul(el("e", "a^-1ba"), ae);
  const SkewElement s5 = s.mul(el("e", "ab"), el("ba", "e"));
  EXPECT_EQ(skew_equiv(s, s0, s1).verdict, EquivVerdict::kEquivalent);
  EXPECT_EQ(skew_equiv(s, s1, s2).verdict, EquivVerdict::kEquivalent);
  EXPECT_EQ(skew_equiv(s, s2, s3).verdict, EquivVerdict::kEquivalent);
  EXPECT_EQ(s2, s0);
  EXPECT_EQ(s3, s0);
  // The rebracketing step is not found within the budget.
  const EquivResult mid = skew_equiv(s, s3, s4, 10000);
  EXPECT_EQ(mid.verdict, EquivVerdict::kUnknown);
  EXPECT_EQ(mid.expanded, 10000);
  // The end of the chain has sigma_b(w1) = 1, the start has 0.
  const EquivResult last = skew_equiv(s, s4, s5);
  EXPECT_EQ(last.verdict, EquivVerdict::kDistinct);
  EXPECT_EQ(skew_equiv(s, s0, s5, 10000).verdict, EquivVerdict::kDistinct);
}

// --------------------------------------------------------- Grothendieck

TEST(Grothendieck, TruncatedNaturalsGiveIntegers) {
  const long long n = 12;
  const GrothendieckGroup<long long> g(truncated_naturals(n));
  EXPECT_TRUE(g.equal(g.difference(2, 5), g.difference(0, 3)));
  EXPECT_FALSE(g.equal(g.difference(2, 5), g.difference(3, 0)));
  EXPECT_TRUE(g.eta_injective());
  // [m] - [k] -> m - k is well defined and bijective onto [-n, n].
  std::vector<std::pair<long long, long long>> reps;
  std::set<long long> images;
  for (long long m = 0; m <= n; ++m) {
    for (long long k = 0; k <= n; ++k) {
      bool found = false;
      for (const auto& [m2, k2] : reps) {
        const bool eq = g.equal(g.difference(m, k), g.difference(m2, k2));
        EXPECT_EQ(eq, m - k == m2 - k2);
        found = found || eq;
      }
      if (!found) reps.emplace_back(m, k);
      images.insert(m - k);
    }
  }
  EXPECT_EQ(reps.size(), static_cast<std::size_t>(2 * n + 1));
  EXPECT_EQ(images.size(), reps.size());
  // Group laws on the generated sample, and eta is a morphism.
  for (long long m = 0; m <= 4; ++m) {
    for (long long k = 0; k <= 4; ++k) {
      const auto d = g.difference(m, k);
      EXPECT_TRUE(g.equal(g.add(d, g.negate(d)), g.zero()));
      EXPECT_TRUE(g.equal(g.add(g.eta(m), g.eta(k)), g.eta(m + k)));
    }
  }
}

TEST(Grothendieck, FiniteAbelianGroupIsItsOwnCompletion) {
  const MagmaPtr z6 = FiniteMagma::cyclic(6);
  const GrothendieckGroup<int> g(as_monoid(z6));
  EXPECT_TRUE(g.eta_injective());
  for (int x = 0; x < 6; ++x) {
    for (int y = 0; y < 6; ++y) {
      int hits = 0;
      for (int z = 0; z < 6; ++z) hits += g.equal(g.difference(x, y), g.eta(z));
      EXPECT_EQ(hits, 1);
    }
  }
}

TEST(Grothendieck, RefusesBadMonoids) {
  // ({0, 1, 2}, max): 0 + 2 = 1 + 2.
  const auto mx = std::make_shared<FiniteMagma>(
      std::vector<std::string>{"0", "1", "2"},
      std::vector<std::vector<int>>{{0, 1, 2}, {1, 1, 2}, {2, 2, 2}}, 0);
  try {
    GrothendieckGroup<int> g(as_monoid(mx));
    FAIL() << "expected NonCancellative";
  } catch (const NonCancellative& e) {
    ASSERT_EQ(e.witness().size(), 3u);
    EXPECT_NE(e.witness()[0], e.witness()[1]);
  }
  EXPECT_THROW(GrothendieckGroup<int>(as_monoid(FiniteMagma::symmetric(3))), NonCommutative);
}

}  // namespace
}  // namespace ultrawrap
