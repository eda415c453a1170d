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

// The Cayley-Dickson tower A_0 = K, A_1(q1), A_2(q1,q2), A_3(q1,q2,q3).
//
// Elements are coordinate vectors in the generator basis u_0 = 1, u_1, ...,
// u_7 with u_1 u_2 = u_3, u_1 u_4 = -u_5, u_2 u_4 = -u_6,
// u_1 u_6 = u_3 u_4 = -u_2 u_5 = -u_7 and u_j^2 = -Q_j where Q_j is the
// product of the q_i over the bits of j.
//
// Two products are provided. cd_mul runs the doubling recursion
//   (a1, a2)(b1, b2) = (a1 b1 - d b2 a2*, a1* b2 + b1 a2),  d = q_level
// on the natural doubling basis and converts with a fixed sign per basis
// vector; table_mul expands over the generator table. They are checked
// against each other on every generator pair the first time either is used.

#ifndef ULTRAWRAP_CAYLEY_DICKSON_HPP_
#define ULTRAWRAP_CAYLEY_DICKSON_HPP_

#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ultrawrap/padic.hpp"

namespace ultrawrap {

class ParameterMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CDParams;
using CDParamsPtr = std::shared_ptr<const CDParams>;

class CDParams {
 public:
  // Level r = q.size() in [0, 3]. Every q_j must be nonzero and belong to
  // `field`; F_2((t)) is rejected.
  CDParams(const FieldSpec& field, std::vector<UltraScalar> q);

  static CDParamsPtr make(const FieldSpec& field, std::vector<UltraScalar> q);
  static CDParamsPtr make(const FieldSpec& field, const std::vector<std::int64_t>& q);

  int level() const { return static_cast<int>(q_.size()); }
  int dimension() const { return 1 << level(); }
  const FieldSpec& field() const { return field_; }
  const std::vector<UltraScalar>& q() const { return q_; }

  // q1^e[0] q2^e[1] q3^e[2]; exponents beyond the level must be zero.
  UltraScalar q_monomial(const std::array<int, 3>& e) const;
  // Q_j with u_j^2 = -Q_j.
  UltraScalar square_coefficient(int j) const;
  // Parameters one level down (drops the last q).
  CDParamsPtr lower() const;

  bool operator==(const CDParams& o) const;
  std::string to_string() const;

 private:
  FieldSpec field_;
  std::vector<UltraScalar> q_;
};

class CDElement {
 public:
  CDElement(CDParamsPtr params, std::vector<UltraScalar> coeffs);

  static CDElement zero(CDParamsPtr params);
  static CDElement one(CDParamsPtr params);
  static CDElement scalar(CDParamsPtr params, const UltraScalar& c);
  static CDElement generator(CDParamsPtr params, int j);

  const CDParams& params() const { return *params_; }
  const CDParamsPtr& params_ptr() const { return params_; }
  int dimension() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<UltraScalar>& coeffs() const { return coeffs_; }
  const UltraScalar& operator[](int j) const { return coeffs_[j]; }

  CDElement operator+(const CDElement& o) const;
  CDElement operator-(const CDElement& o) const;
  CDElement operator-() const;
  // Product with the generator-basis product; see cd_mul.
  CDElement operator*(const CDElement& o) const;
  CDElement operator*(const UltraScalar& c) const;
  CDElement operator/(const UltraScalar& c) const;

  // Coordinatewise equality to tracked precision.
  bool operator==(const CDElement& o) const;
  bool is_zero() const;
  // All coordinates but the first vanish.
  bool is_scalar() const;
  // Sup of the coordinate norms.
  Norm sup_norm() const;
  std::string to_string() const;

 private:
  CDParamsPtr params_;
  std::vector<UltraScalar> coeffs_;
};

CDElement operator*(const UltraScalar& c, const CDElement& x);
std::ostream& operator<<(std::ostream& os, const CDElement& x);

// Thrown by cd_inv for a nonzero element of norm zero.
class ZeroNormElement : public ArithmeticError {
 public:
  explicit ZeroNormElement(const CDElement& witness);
  const CDElement& witness() const { return *witness_; }

 private:
  std::shared_ptr<CDElement> witness_;
};

void require_same_params(const CDElement& x, const CDElement& y);

CDElement cd_mul(const CDElement& x, const CDElement& y);
CDElement table_mul(const CDElement& x, const CDElement& y);
CDElement conj(const CDElement& x);
UltraScalar trace(const CDElement& x);
// n(x) by the doubling rule n((a1, a2)) = n(a1) + d n(a2).
UltraScalar norm_value(const CDElement& x);
// x* / n(x).
CDElement cd_inv(const CDElement& x);

// Split at the top doubling level: x = (a1, a2) with a2 the coefficient of
// the new generator in the natural doubling basis.
std::pair<CDElement, CDElement> halves(const CDElement& x);
CDElement from_halves(CDParamsPtr params, const CDElement& a1, const CDElement& a2);
// Image of x under A_r -> A_s for the params `target` extending x's.
CDElement embed(const CDElement& x, CDParamsPtr target);

// One generator product u_i u_j = sign * q-monomial * u_index.
struct GeneratorProduct {
  int sign = 1;
  std::array<int, 3> q_exponents{0, 0, 0};
  int index = 0;

  UltraScalar coefficient(const CDParams& params) const;
  // "+u3", "-q1*u6", "-q1q2q3*u0".
  std::string to_string() const;
  friend bool operator==(const GeneratorProduct&, const GeneratorProduct&) = default;
};

using GeneratorTable = std::vector<std::vector<GeneratorProduct>>;

// The 2^r x 2^r generator table. It is built from the listed relations and
// their alternative-law consequences, independently of cd_mul.
GeneratorTable generator_table(int level);
// s_j with u_j = s_j e_j for the natural doubling basis e_j.
const std::array<int, 8>& doubling_basis_signs();

// Elements a + b u of the two-dimensional algebra with u^2 = u + alpha and
// conjugation u* = 1 - u. Requires 4 alpha + 1 != 0.
class UAlgebraElement {
 public:
  UAlgebraElement(UltraScalar a, UltraScalar b, UltraScalar alpha);

  const UltraScalar& a() const { return a_; }
  const UltraScalar& b() const { return b_; }
  const UltraScalar& alpha() const { return alpha_; }

  UAlgebraElement operator+(const UAlgebraElement& o) const;
  UAlgebraElement operator*(const UAlgebraElement& o) const;
  bool operator==(const UAlgebraElement& o) const;
  UAlgebraElement conj() const;
  UltraScalar trace() const;
  UltraScalar norm_value() const;
  std::string to_string() const;

 private:
  void require_same_alpha(const UAlgebraElement& o) const;
  UltraScalar a_, b_, alpha_;
};

UAlgebraElement u_mul(const UAlgebraElement& x, const UAlgebraElement& y);

// Small integers print as integers, everything else as a literal.
std::string render_scalar(const UltraScalar& x);

}  // namespace ultrawrap

#endif  // ULTRAWRAP_CAYLEY_DICKSON_HPP_
