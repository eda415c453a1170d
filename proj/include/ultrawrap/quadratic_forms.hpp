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

// Diagonal quadratic forms over Q_p: isotropy search with Hensel
// certificates, the Hilbert symbol, and the division test for A_r.

#ifndef ULTRAWRAP_QUADRATIC_FORMS_HPP_
#define ULTRAWRAP_QUADRATIC_FORMS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ultrawrap/cayley_dickson.hpp"
#include "ultrawrap/padic.hpp"

namespace ultrawrap {

struct DiagonalForm {
  FieldSpec field;
  std::vector<UltraScalar> coeffs;

  DiagonalForm(FieldSpec f, std::vector<UltraScalar> c);
  static DiagonalForm of_integers(const FieldSpec& f, const std::vector<std::int64_t>& c);

  int dimension() const { return static_cast<int>(coeffs.size()); }
  UltraScalar evaluate(const std::vector<UltraScalar>& x) const;
  std::string to_string() const;
};

// The norm form <Q_0, ..., Q_{2^r - 1}> with Q_j = prod of q_i over bits of j.
DiagonalForm norm_form_of(const CDParams& params);

struct IsotropyWitness {
  // Primitive zero of the form; the first coordinate of valuation 0 is 1.
  std::vector<UltraScalar> x;
  // Hensel certificate, stated for the residue point y (integers) of the
  // rescaled form sum c'_j y_j^2 with v(c'_j) in {0, 1}:
  //   v(2 c'_j y_j) = derivative_valuation for j = hensel_index and
  //   v(F(y)) >= residual_valuation > 2 * derivative_valuation,
  // with v(F(y)) computed modulo a fixed power of p (and capped there).
  std::vector<std::int64_t> residue_point;
  int residue_level = 0;
  int hensel_index = 0;
  int derivative_valuation = 0;
  int residual_valuation = 0;
};

struct IsotropySearch {
  std::optional<IsotropyWitness> witness;
  int requested_depth = 0;
  int effective_depth = 0;
  // True when the depth is large enough for "no witness" to mean anisotropic.
  bool exhaustive = false;
  long long nodes = 0;
};

// Smallest search depth at which the residue search is a decision procedure.
int exact_search_depth(int p);

// Depth-limited search for a primitive zero. For p = 2 the depth is raised
// to at least 4. Throws FieldError for F_p((t)) forms and PrecisionLoss when
// the coefficients carry too few digits for the requested depth.
IsotropySearch isotropy_search(const DiagonalForm& form, int search_depth);
std::optional<IsotropyWitness> is_isotropic(const DiagonalForm& form, int search_depth);

// Hilbert symbol (a, b)_p in {+1, -1} over Q_p.
int hilbert_symbol(const UltraScalar& a, const UltraScalar& b);

struct DivisionVerdict {
  bool division = true;
  // Nonzero a, b with a b = 0; b = conj(a).
  std::optional<CDElement> a;
  std::optional<CDElement> b;
  std::optional<IsotropyWitness> witness;
  bool exhaustive = false;
  int depth = 0;
};

// search_depth <= 0 selects exact_search_depth(p).
DivisionVerdict has_division_property(const CDParamsPtr& params, int search_depth = 0);

}  // namespace ultrawrap

#endif  // ULTRAWRAP_QUADRATIC_FORMS_HPP_
