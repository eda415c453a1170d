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

#include <numeric>
#include <vector>

#include "support/generators.hpp"
#include "ultrawrap/padic.hpp"

namespace ultrawrap {
namespace {

using testing::Rng;
using testing::random_nonzero;
using testing::random_scalar;

std::vector<int> digits_of(const UltraScalar& x) {
  return {x.digits().begin(), x.digits().end()};
}

// Brute force: the residue x in [0, p^k) with den * x = num mod p^k,
// written in base p. den must be prime to p.
std::vector<int> brute_residue(long long num, long long den, int p, int k) {
  long long mod = 1;
  for (int i = 0; i < k; ++i) mod *= p;
  long long n = ((num % mod) + mod) % mod;
  long long d = ((den % mod) + mod) % mod;
  for (long long x = 0; x < mod; ++x) {
    if ((d * x) % mod == n) {
      std::vector<int> out;
      for (int i = 0; i < k; ++i) {
        out.push_back(static_cast<int>(x % p));
        x /= p;
      }
      return out;
    }
  }
  return {};
}

TEST(PadicFrozen, OneThirdInQ5) {
  FieldSpec f{FieldKind::kPadic, 5, 4};
  UltraScalar x = UltraScalar::from_rational(1, 3, f);
  EXPECT_EQ(x.valuation(), 0);
  EXPECT_EQ(digits_of(x), (std::vector<int>{2, 3, 1, 3}));
  EXPECT_EQ(digits_of(x), brute_residue(1, 3, 5, 4));
}

TEST(PadicFrozen, CarryingAddition) {
  FieldSpec f{FieldKind::kPadic, 5, 3};
  UltraScalar a = UltraScalar::from_integer(2 + 3 * 5, f);
  UltraScalar b = UltraScalar::from_integer(4 + 4 * 5, f);
  UltraScalar s = a + b;
  EXPECT_EQ(s.valuation(), 0);
  EXPECT_EQ(digits_of(s), (std::vector<int>{1, 3, 1}));
}

TEST(PadicFrozen, ThreeTimesItsInverse) {
  FieldSpec f{FieldKind::kPadic, 5, 6};
  UltraScalar three = UltraScalar::from_integer(3, f);
  UltraScalar r = three * three.inverse();
  EXPECT_EQ(r.valuation(), 0);
  EXPECT_EQ(digits_of(r), (std::vector<int>{1, 0, 0, 0, 0, 0}));
}

TEST(PadicOracle, RationalsMatchBruteForce) {
  Rng rng(11);
  for (int p : {2, 3, 5, 7}) {
    FieldSpec f{FieldKind::kPadic, p, 4};
    for (int trial = 0; trial < 200; ++trial) {
      long long num = testing::uniform_int(rng, -500, 500);
      long long den = testing::uniform_int(rng, 1, 500);
      if (num % p == 0 || den % p == 0) continue;
      UltraScalar x = UltraScalar::from_rational(num, den, f);
      EXPECT_EQ(x.valuation(), 0);
      EXPECT_EQ(digits_of(x), brute_residue(num, den, p, 4))
          << num << "/" << den << " p=" << p;
    }
  }
}

TEST(PadicOracle, ValuationOfRationals) {
  FieldSpec f{FieldKind::kPadic, 3, 5};
  EXPECT_EQ(UltraScalar::from_rational(18, 1, f).valuation(), 2);
  EXPECT_EQ(UltraScalar::from_rational(2, 27, f).valuation(), -3);
  EXPECT_EQ(UltraScalar::from_rational(-9, 4, f).valuation(), 2);
  EXPECT_EQ(UltraScalar::from_rational(9, 1, f).norm().to_string(), "1/9");
  EXPECT_EQ(UltraScalar::from_rational(1, 9, f).norm().to_string(), "9");
}

class FieldLaws : public ::testing::TestWithParam<FieldSpec> {};

TEST_P(FieldLaws, RingAndNormLaws) {
  const FieldSpec f = GetParam();
  Rng rng(2026);
  for (int trial = 0; trial < 2000; ++trial) {
    UltraScalar x = random_scalar(rng, f), y = random_scalar(rng, f),
                z = random_scalar(rng, f);
    EXPECT_TRUE(x + y == y + x);
    EXPECT_TRUE(x * y == y * x);
    EXPECT_TRUE((x + y) + z == x + (y + z));
    EXPECT_TRUE((x * y) * z == x * (y * z));
    EXPECT_TRUE(x * (y + z) == x * y + x * z);
    EXPECT_TRUE((x + y) - y == x);
    EXPECT_TRUE((x - x).is_zero());
    EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
    EXPECT_LE((x + y).norm(), max(x.norm(), y.norm()));
    if (!y.is_zero()) {
      EXPECT_TRUE((x * y) / y == x);
      EXPECT_TRUE(y * y.inverse() == UltraScalar::one(f));
    }
  }
}

TEST_P(FieldLaws, StrictUltrametricInequality) {
  const FieldSpec f = GetParam();
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    UltraScalar x = random_nonzero(rng, f, -3, 3), y = random_nonzero(rng, f, -3, 3);
    if (x.norm() != y.norm()) {
      EXPECT_EQ((x + y).norm(), max(x.norm(), y.norm()));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Fields, FieldLaws,
    ::testing::Values(FieldSpec{FieldKind::kPadic, 2, 12}, FieldSpec{FieldKind::kPadic, 5, 10},
                      FieldSpec{FieldKind::kPadic, 13, 8}, FieldSpec{FieldKind::kLaurent, 3, 10},
                      FieldSpec{FieldKind::kLaurent, 2, 10}),
    [](const auto& info) {
      return std::string(field_kind_name(info.param.kind)) + std::to_string(info.param.p);
    });

TEST(PadicPrecision, SumKeepsSmallestAbsolutePrecision) {
  FieldSpec f{FieldKind::kPadic, 5, 3};
  UltraScalar x = UltraScalar::from_integer(1, f);  // 1 + O(5^3)
  UltraScalar y = UltraScalar::uniformizer_power(FieldSpec{FieldKind::kPadic, 5, 10}, 5);
  UltraScalar s = x + y;
  EXPECT_EQ(s.absolute_precision(), 3);
  EXPECT_TRUE(s == x);
}

TEST(PadicPrecision, CancellationLeavesBoundedZero) {
  FieldSpec f{FieldKind::kPadic, 7, 6};
  UltraScalar x = UltraScalar::from_rational(3, 11, f);
  UltraScalar z = x - x;
  EXPECT_TRUE(z.is_zero());
  EXPECT_FALSE(z.is_exact_zero());
  EXPECT_EQ(z.absolute_precision(), 6);
  EXPECT_TRUE(x.indistinguishable_at(x + UltraScalar::uniformizer_power(f, 4), 4));
  EXPECT_FALSE(x.indistinguishable_at(x + UltraScalar::uniformizer_power(f, 4), 5));
}

TEST(PadicPrecision, ProductKeepsSmallestRelativePrecision) {
  UltraScalar a = UltraScalar::from_integer(7, FieldSpec{FieldKind::kPadic, 3, 4});
  UltraScalar b = UltraScalar::from_integer(5, FieldSpec{FieldKind::kPadic, 3, 9});
  EXPECT_EQ((a * b).precision(), 4);
  EXPECT_EQ(a.inverse().precision(), 4);
}

TEST(PadicPrecision, ExactZeroAbsorbs) {
  FieldSpec f{FieldKind::kPadic, 5, 4};
  UltraScalar z = UltraScalar::zero(f);
  UltraScalar x = UltraScalar::from_rational(2, 7, f);
  EXPECT_TRUE((z * x).is_exact_zero());
  EXPECT_TRUE(z + x == x);
  EXPECT_EQ((z + x).precision(), 4);
}

TEST(PadicErrors, DivisionByZero) {
  FieldSpec f{FieldKind::kPadic, 5, 4};
  EXPECT_THROW(UltraScalar::zero(f).inverse(), DivisionByZero);
  EXPECT_THROW(UltraScalar::from_rational(1, 0, f), DivisionByZero);
  EXPECT_THROW(UltraScalar::from_rational(1, 3, FieldSpec{FieldKind::kLaurent, 3, 4}),
               DivisionByZero);
}

TEST(PadicErrors, BadFields) {
  EXPECT_THROW(UltraScalar::one(FieldSpec{FieldKind::kPadic, 6, 4}), FieldError);
  EXPECT_THROW(UltraScalar::one(FieldSpec{FieldKind::kPadic, 1, 4}), FieldError);
  UltraScalar a = UltraScalar::one(FieldSpec{FieldKind::kPadic, 5, 4});
  UltraScalar b = UltraScalar::one(FieldSpec{FieldKind::kPadic, 7, 4});
  UltraScalar c = UltraScalar::one(FieldSpec{FieldKind::kLaurent, 5, 4});
  EXPECT_THROW(a + b, FieldError);
  EXPECT_THROW(a * c, FieldError);
}

TEST(PadicErrors, ResidueNeedsDigits) {
  UltraScalar a = UltraScalar::from_rational(1, 3, FieldSpec{FieldKind::kPadic, 5, 4});
  EXPECT_EQ(a.unit_residue(2), 2 + 3 * 5);
  EXPECT_THROW(a.unit_residue(5), PrecisionLoss);
}

TEST(Laurent, NoCarries) {
  FieldSpec f{FieldKind::kLaurent, 3, 4};
  UltraScalar two = UltraScalar::from_integer(2, f);
  EXPECT_EQ(digits_of(two + two), (std::vector<int>{1, 0, 0, 0}));
  EXPECT_TRUE((UltraScalar::from_integer(1, f) + two).is_zero());
  UltraScalar t = UltraScalar::uniformizer_power(f, 1);
  UltraScalar s = (UltraScalar::one(f) + t) * (UltraScalar::one(f) + t);
  // (1 + t)^2 = 1 + 2t + t^2 over F_3.
  EXPECT_EQ(digits_of(s), (std::vector<int>{1, 2, 1, 0}));
  EXPECT_EQ(s.valuation(), 0);
}

TEST(Literal, RoundTrip) {
  for (const char* text : {"p5:2.301e-1", "t3:1.02e4", "p2:1.011e0", "p5:0",
                           "p5:0e7", "p31:u.0ae-2", "p3:1e3"}) {
    UltraScalar x = UltraScalar::parse_literal(text);
    EXPECT_EQ(x.to_literal(), text);
  }
  UltraScalar x = UltraScalar::parse_literal("p5:2.301e-1");
  EXPECT_EQ(x.valuation(), -1);
  EXPECT_EQ(digits_of(x), (std::vector<int>{2, 3, 0, 1}));
  EXPECT_EQ(x.precision(), 4);
  EXPECT_TRUE(UltraScalar::parse_literal("p5:0").is_exact_zero());
  EXPECT_EQ(UltraScalar::parse_literal("p5:0e7").absolute_precision(), 7);
}

TEST(Literal, Rejects) {
  for (const char* text : {"p5:7e0", "p4:1e0", "q5:1e0", "p5:12e0", "p5:", "p5:1.e0",
                           "p5:1.2", "p5:1.2ex"}) {
    EXPECT_ANY_THROW(UltraScalar::parse_literal(text)) << text;
  }
}

TEST(Literal, RandomRoundTrip) {
  Rng rng(5);
  for (FieldSpec f : {FieldSpec{FieldKind::kPadic, 5, 6}, FieldSpec{FieldKind::kLaurent, 3, 5}}) {
    for (int i = 0; i < 300; ++i) {
      UltraScalar x = random_scalar(rng, f);
      UltraScalar y = UltraScalar::parse_literal(x.to_literal());
      EXPECT_EQ(y.to_literal(), x.to_literal());
      EXPECT_TRUE(x == y);
    }
  }
}

TEST(Sqrt, OddPrimesRecoverRoots) {
  Rng rng(99);
  for (FieldSpec f : {FieldSpec{FieldKind::kPadic, 3, 10}, FieldSpec{FieldKind::kPadic, 5, 10},
                      FieldSpec{FieldKind::kPadic, 13, 8}, FieldSpec{FieldKind::kLaurent, 5, 9}}) {
    for (int i = 0; i < 200; ++i) {
      UltraScalar x = random_nonzero(rng, f);
      UltraScalar sq = x * x;
      UltraScalar r = sq.sqrt();
      EXPECT_TRUE(r * r == sq);
      EXPECT_TRUE(r == x || r == -x);
      EXPECT_LE(r.digits()[0] * 2, f.p);
    }
  }
}

TEST(Sqrt, TwoAdic) {
  Rng rng(3);
  FieldSpec f{FieldKind::kPadic, 2, 14};
  for (int i = 0; i < 200; ++i) {
    UltraScalar x = random_nonzero(rng, f);
    UltraScalar sq = x * x;
    UltraScalar r = sq.sqrt();
    EXPECT_EQ(r.precision(), f.precision - 1);
    EXPECT_TRUE(r * r == sq);
    EXPECT_TRUE(r == x || r == -x);
    EXPECT_EQ(r.unit_residue(2), 1);
  }
  // -7 = 1 mod 8 is a square in Q_2.
  UltraScalar m7 = UltraScalar::from_integer(-7, f);
  UltraScalar r = m7.sqrt();
  EXPECT_TRUE(r * r == m7);
  EXPECT_FALSE(UltraScalar::from_integer(3, f).is_square());
  EXPECT_FALSE(UltraScalar::from_integer(5, f).is_square());
  EXPECT_FALSE(UltraScalar::from_integer(2, f).is_square());
  EXPECT_THROW(UltraScalar::from_integer(1, FieldSpec{FieldKind::kPadic, 2, 2}).sqrt(),
               PrecisionLoss);
}

TEST(Sqrt, RejectsNonSquares) {
  FieldSpec f{FieldKind::kPadic, 5, 6};
  EXPECT_FALSE(UltraScalar::from_integer(2, f).is_square());
  EXPECT_FALSE(UltraScalar::from_integer(5, f).is_square());
  EXPECT_TRUE(UltraScalar::from_integer(-1, f).is_square());
  EXPECT_TRUE(UltraScalar::from_integer(25 * 4, f).is_square());
  EXPECT_THROW(UltraScalar::one(FieldSpec{FieldKind::kLaurent, 2, 4}).sqrt(), FieldError);
}

TEST(Sqrt, SmallExamples) {
  FieldSpec f{FieldKind::kPadic, 5, 8};
  auto two = hensel_sqrt(UltraScalar::from_integer(4, f));
  ASSERT_TRUE(two.has_value());
  EXPECT_TRUE(*two == UltraScalar::from_integer(2, f));
  EXPECT_FALSE(hensel_sqrt(UltraScalar::from_integer(5, f)).has_value());
  auto i = hensel_sqrt(UltraScalar::from_integer(-1, f));
  ASSERT_TRUE(i.has_value());
  EXPECT_EQ(i->unit_residue(1), 2);
  EXPECT_TRUE(*i * *i == UltraScalar::from_integer(-1, f));
}

TEST(PadicOracle, RationalRoundTrip) {
  Rng rng(17);
  for (int p : {2, 3, 5, 7, 13}) {
    FieldSpec f{FieldKind::kPadic, p, 9};
    for (int i = 0; i < 300; ++i) {
      long long n = testing::uniform_int(rng, -100000, 100000);
      long long d = testing::uniform_int(rng, 1, 100000);
      UltraScalar x = UltraScalar::from_rational(n, d, f);
      EXPECT_TRUE((x * UltraScalar::from_integer(d, f) - UltraScalar::from_integer(n, f)).is_zero());
    }
  }
}

TEST(NormValue, Rendering) {
  EXPECT_EQ(Norm::zero(3).to_string(), "0");
  EXPECT_EQ(Norm::of_valuation(3, 2).to_string(), "1/9");
  EXPECT_EQ(Norm::of_valuation(3, -2).to_string(), "9");
  EXPECT_EQ(Norm::of_valuation(3, 0).to_string(), "1");
  EXPECT_LT(Norm::zero(3), Norm::of_valuation(3, 40));
  EXPECT_LT(Norm::of_valuation(3, 2), Norm::of_valuation(3, 1));
  EXPECT_DOUBLE_EQ(Norm::of_valuation(2, 3).to_double(), 0.125);
}

}  // namespace
}  // namespace ultrawrap
