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

#include <gtest/gtest.h>

#include "support/generators.hpp"
#include "ultrawrap/quadratic_forms.hpp"

namespace ultrawrap {
namespace {

using testing::Rng;

FieldSpec qp(int p) { return FieldSpec{FieldKind::kPadic, p, 10}; }

void expect_valid(const DiagonalForm& f, const IsotropyWitness& w) {
  EXPECT_TRUE(f.evaluate(w.x).is_zero());
  int vmin = UltraScalar::kExact;
  for (const auto& x : w.x) vmin = std::min(vmin, x.valuation());
  EXPECT_EQ(vmin, 0);
  int lead = 0;
  while (w.x[lead].valuation() != 0) ++lead;
  EXPECT_TRUE(w.x[lead] == UltraScalar::one(f.field));
  EXPECT_GT(w.residual_valuation, 2 * w.derivative_valuation);
}

// Number of primitive residue vectors x mod p^k with sum c_j x_j^2 = 0 mod
// p^k, by brute force over integer coefficients.
long long count_residue_zeros(const std::vector<long long>& c, int p, int k) {
  long long mod = 1;
  for (int i = 0; i < k; ++i) mod *= p;
  const int m = static_cast<int>(c.size());
  std::vector<long long> x(m, 0);
  long long count = 0;
  while (true) {
    bool primitive = false;
    long long s = 0;
    for (int i = 0; i < m; ++i) {
      primitive |= x[i] % p != 0;
      s = (s + c[i] % mod * (x[i] * x[i] % mod)) % mod;
    }
    if (primitive && (s % mod + mod) % mod == 0) ++count;
    int i = 0;
    while (i < m && x[i] == mod - 1) x[i++] = 0;
    if (i == m) break;
    ++x[i];
  }
  return count;
}

TEST(NormForm, Examples) {
  auto f1 = norm_form_of(*CDParams::make(qp(5), std::vector<std::int64_t>{1}));
  EXPECT_EQ(f1.to_string(), "<1,1>");
  auto f2 = norm_form_of(*CDParams::make(qp(5), std::vector<std::int64_t>{1, 1}));
  EXPECT_EQ(f2.to_string(), "<1,1,1,1>");
  auto f0 = norm_form_of(*CDParams::make(qp(5), std::vector<std::int64_t>{}));
  EXPECT_EQ(f0.to_string(), "<1>");
  auto f3 = norm_form_of(*CDParams::make(qp(7), std::vector<std::int64_t>{2, 3, 5}));
  EXPECT_EQ(f3.to_string(), "<1,2,3,6,5,10,15,30>");
}

TEST(NormForm, MatchesNormValue) {
  Rng rng(3);
  for (int level = 0; level <= 3; ++level) {
    for (int trial = 0; trial < 100; ++trial) {
      auto params = testing::random_params(rng, qp(5), level);
      CDElement x = testing::random_cd(rng, params);
      EXPECT_TRUE(norm_value(x) == norm_form_of(*params).evaluate(x.coeffs()));
    }
  }
}

TEST(Isotropy, SumOfFourSquaresOverQ2) {
  auto f = DiagonalForm::of_integers(qp(2), {1, 1, 1, 1});
  IsotropySearch s = isotropy_search(f, 4);
  EXPECT_FALSE(s.witness.has_value());
  EXPECT_TRUE(s.exhaustive);
  EXPECT_EQ(count_residue_zeros({1, 1, 1, 1}, 2, 4), 0);
}

TEST(Isotropy, BinaryOverQ5) {
  auto f = DiagonalForm::of_integers(qp(5), {1, 1});
  auto w = is_isotropic(f, 3);
  ASSERT_TRUE(w.has_value());
  expect_valid(f, *w);
  EXPECT_TRUE(w->x[0] == UltraScalar::one(qp(5)));
  EXPECT_TRUE(w->x[1] * w->x[1] == UltraScalar::from_integer(-1, qp(5)));
  EXPECT_EQ(w->x[1].unit_residue(1), 3);
}

TEST(Isotropy, UnaryIsAnisotropic) {
  for (int p : {2, 3, 5, 7}) {
    EXPECT_FALSE(is_isotropic(DiagonalForm::of_integers(qp(p), {1}), 3).has_value());
    EXPECT_FALSE(is_isotropic(DiagonalForm::of_integers(qp(p), {p}), 3).has_value());
  }
}

TEST(Isotropy, MonotoneInDepth) {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int p = std::vector<int>{2, 3, 5, 7}[trial % 4];
    std::vector<std::int64_t> c;
    for (int j = 0; j < 3; ++j) {
      std::int64_t v = 0;
      while (v == 0) v = testing::uniform_int(rng, -30, 30);
      c.push_back(v);
    }
    auto f = DiagonalForm::of_integers(qp(p), c);
    auto w = is_isotropic(f, exact_search_depth(p));
    for (int d = exact_search_depth(p) + 1; d <= exact_search_depth(p) + 2; ++d) {
      auto w2 = is_isotropic(f, d);
      ASSERT_EQ(w.has_value(), w2.has_value());
      if (w) EXPECT_EQ(w->residue_point, w2->residue_point);
    }
  }
}

// Classical criteria: <a,b> is isotropic iff -ab is a square; <a,b,c> is
// isotropic iff (-ac, -bc) = 1.
TEST(Isotropy, AgreesWithClassicalCriteria) {
  Rng rng(5);
  int iso = 0, aniso = 0;
  for (int p : {2, 3, 5, 7, 13}) {
    const FieldSpec f = qp(p);
    for (int trial = 0; trial < 80; ++trial) {
      std::vector<std::int64_t> c;
      for (int j = 0; j < 3; ++j) {
        std::int64_t v = 0;
        while (v == 0) v = testing::uniform_int(rng, -60, 60);
        c.push_back(v);
      }
      auto a = UltraScalar::from_integer(c[0], f), b = UltraScalar::from_integer(c[1], f),
           cc = UltraScalar::from_integer(c[2], f);
      auto f2 = DiagonalForm::of_integers(f, {c[0], c[1]});
      bool expect2 = (-(a * b)).is_square();
      auto w2 = is_isotropic(f2, exact_search_depth(p));
      EXPECT_EQ(w2.has_value(), expect2) << f2.to_string() << " p=" << p;
      if (w2) expect_valid(f2, *w2);
      auto f3 = DiagonalForm::of_integers(f, c);
      bool expect3 = hilbert_symbol(-(a * cc), -(b * cc)) == 1;
      auto w3 = is_isotropic(f3, exact_search_depth(p));
      EXPECT_EQ(w3.has_value(), expect3) << f3.to_string() << " p=" << p;
      if (w3) {
        expect_valid(f3, *w3);
        ++iso;
      } else {
        ++aniso;
      }
    }
  }
  EXPECT_GT(iso, 0);
  EXPECT_GT(aniso, 0);
}

TEST(Isotropy, FiveVariablesAlwaysIsotropic) {
  Rng rng(6);
  for (int p : {2, 3, 5, 7}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::int64_t> c;
      for (int j = 0; j < 5; ++j) {
        std::int64_t v = 0;
        while (v == 0) v = testing::uniform_int(rng, -40, 40);
        c.push_back(v);
      }
      auto f = DiagonalForm::of_integers(qp(p), c);
      auto w = is_isotropic(f, exact_search_depth(p));
      ASSERT_TRUE(w.has_value()) << f.to_string() << " p=" << p;
      expect_valid(f, *w);
    }
  }
}

TEST(Isotropy, RejectsLaurentForms) {
  FieldSpec f{FieldKind::kLaurent, 3, 6};
  EXPECT_THROW(isotropy_search(DiagonalForm::of_integers(f, {1, 1}), 3), FieldError);
}

TEST(Hilbert, Examples) {
  auto m1 = [](int p) { return UltraScalar::from_integer(-1, qp(p)); };
  EXPECT_EQ(hilbert_symbol(m1(2), m1(2)), -1);
  EXPECT_EQ(hilbert_symbol(m1(5), m1(5)), 1);
  for (int p : {2, 3, 5, 7, 13}) {
    for (int b : {-7, -1, 2, 3, 6, 10}) {
      EXPECT_EQ(hilbert_symbol(UltraScalar::one(qp(p)), UltraScalar::from_integer(b, qp(p))), 1);
    }
  }
}

TEST(Hilbert, SymbolLaws) {
  Rng rng(31);
  for (int p : {2, 3, 5, 7, 13}) {
    const FieldSpec f = qp(p);
    for (int trial = 0; trial < 200; ++trial) {
      auto a = testing::random_nonzero(rng, f, -3, 3), b = testing::random_nonzero(rng, f, -3, 3),
           c = testing::random_nonzero(rng, f, -3, 3);
      EXPECT_EQ(hilbert_symbol(a, b), hilbert_symbol(b, a));
      EXPECT_EQ(hilbert_symbol(a, b * c), hilbert_symbol(a, b) * hilbert_symbol(a, c));
      EXPECT_EQ(hilbert_symbol(a, -a), 1);
      EXPECT_EQ(hilbert_symbol(a, b * b), 1);
      auto one_minus = UltraScalar::one(f) - a;
      if (!one_minus.is_zero()) EXPECT_EQ(hilbert_symbol(a, one_minus), 1);
    }
  }
}

struct MatrixCase {
  int p;
  std::int64_t q1, q2;
};

std::vector<MatrixCase> quaternion_matrix() {
  std::vector<MatrixCase> out;
  for (int p : {2, 3, 5, 7, 13}) {
    for (std::int64_t q1 : {1, -1, p, -p}) {
      for (std::int64_t q2 : {1, -1, p, -p}) out.push_back({p, q1, q2});
    }
  }
  return out;
}

TEST(Division, HilbertOracleAgreesOnQuaternionMatrix) {
  int division = 0;
  for (const auto& m : quaternion_matrix()) {
    auto params = CDParams::make(qp(m.p), std::vector<std::int64_t>{m.q1, m.q2});
    DivisionVerdict v = has_division_property(params);
    EXPECT_TRUE(v.exhaustive);
    const int h = hilbert_symbol(-params->q()[0], -params->q()[1]);
    EXPECT_EQ(v.division, h == -1) << "p=" << m.p << " q=(" << m.q1 << "," << m.q2 << ")";
    if (v.division) {
      ++division;
    } else {
      EXPECT_TRUE(cd_mul(*v.a, *v.b).is_zero());
      EXPECT_FALSE(v.a->is_zero());
      EXPECT_FALSE(v.b->is_zero());
      EXPECT_THROW(cd_inv(*v.a), ZeroNormElement);
    }
  }
  EXPECT_GT(division, 0);
}

TEST(Division, Examples) {
  auto q2 = has_division_property(CDParams::make(qp(2), std::vector<std::int64_t>{1, 1}), 4);
  EXPECT_TRUE(q2.division);
  auto p5 = CDParams::make(qp(5), std::vector<std::int64_t>{1, 1});
  auto q5 = has_division_property(p5);
  ASSERT_FALSE(q5.division);
  const CDElement& b = *q5.a;
  EXPECT_TRUE(b[0] == UltraScalar::one(qp(5)));
  EXPECT_TRUE(b[1] * b[1] == UltraScalar::from_integer(-1, qp(5)));
  EXPECT_TRUE(b[2].is_zero());
  EXPECT_TRUE(b[3].is_zero());
  EXPECT_TRUE(cd_mul(b, conj(b)).is_zero());
  auto r0 = has_division_property(CDParams::make(qp(3), std::vector<std::int64_t>{}));
  EXPECT_TRUE(r0.division);
}

TEST(Division, OctonionMatrixAlwaysSplits) {
  for (int p : {3, 5, 7, 13}) {
    for (std::int64_t q1 : {1, -1, p, -p}) {
      for (std::int64_t q2 : {1, -1, p, -p}) {
        for (std::int64_t q3 : {1, -1, p, -p}) {
          auto params = CDParams::make(qp(p), std::vector<std::int64_t>{q1, q2, q3});
          DivisionVerdict v = has_division_property(params);
          ASSERT_FALSE(v.division) << params->to_string();
          EXPECT_TRUE(cd_mul(*v.a, *v.b).is_zero());
          expect_valid(norm_form_of(*params), *v.witness);
        }
      }
    }
  }
}

}  // namespace
}  // namespace ultrawrap
