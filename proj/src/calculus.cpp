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

#include "ultrawrap/calculus.hpp"

#include <charconv>

namespace ultrawrap::calc {

bool Ball::contains(const UltraScalar& x) const {
  if (!center) return true;
  if (!x.same_field(*center)) throw FieldError("point from another field");
  const UltraScalar d = x - *center;
  if (d.is_zero()) return true;
  return d.valuation() >= radius;
}

UltraScalar truncate(const UltraScalar& x, int depth) {
  if (x.is_zero()) {
    if (!x.is_exact_zero() && x.absolute_precision() < depth) {
      throw PrecisionLoss("truncation below p^" + std::to_string(depth) + " needs more digits",
                          x.absolute_precision(), depth);
    }
    return UltraScalar::zero(FieldSpec{x.kind(), x.p(), 1});
  }
  if (x.absolute_precision() < depth) {
    throw PrecisionLoss("truncation below p^" + std::to_string(depth) + " needs more digits",
                        x.absolute_precision(), depth);
  }
  const int v = x.valuation();
  if (v >= depth) return UltraScalar::zero(FieldSpec{x.kind(), x.p(), 1});
  UltraScalar::Digits d(x.digits().begin(), x.digits().begin() + (depth - v));
  UltraScalar r = UltraScalar::from_digits(x.kind(), x.p(), v, d);
  // A finite digit sum is exact; carry as many digits as the input.
  return r.padded(std::max(x.precision(), depth - v));
}

void validate(const QuotientPoint& q, const Ball& domain) {
  UltraScalar y = q.x;
  if (!domain.contains(y)) throw DomainError("base point outside the domain ball");
  for (int j = 0; j < q.order(); ++j) {
    if (q.t[j].is_zero()) throw DomainError("increment t_" + std::to_string(j + 1) + " is zero");
    y = y + q.t[j] * q.v[j];
    if (!domain.contains(y)) throw DomainError("shifted point outside the domain ball");
  }
}

std::vector<int> increment_slots(int n) {
  std::vector<int> s;
  for (int k = 1; k <= n; ++k) s.push_back(2 * flat_length(k - 1));
  return s;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kMember: return "member";
    case Verdict::kNonMember: return "non-member";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

int parse_suffix(const std::string& name, std::size_t at) {
  int v = 0;
  const char* b = name.data() + at;
  const char* e = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e) throw std::invalid_argument("bad corpus name: " + name);
  return v;
}

UltraScalar digit_halving(const UltraScalar& x) {
  if (x.is_exact_zero()) return x;
  const int A = x.absolute_precision();
  const int out_abs = A / 2;
  const FieldSpec f{x.kind(), x.p(), std::max(1, A)};
  UltraScalar r = UltraScalar::zero(f, out_abs);
  if (!x.is_zero()) {
    for (int i = 0; i < x.precision(); ++i) {
      const int e = x.valuation() + i;
      if (x.digits()[i] == 0) continue;
      r += UltraScalar::from_integer(x.digits()[i], f) * UltraScalar::uniformizer_power(f, e / 2);
    }
  }
  return r.capped_absolute(out_abs);
}

}  // namespace

ScalarFn<UltraScalar> corpus_function(const std::string& name, const FieldSpec& field) {
  const std::string lc = "locally-constant:", ind = "indicator:";
  if (name.rfind(lc, 0) == 0) {
    const int l = parse_suffix(name, lc.size());
    return ScalarFn<UltraScalar>::locally_constant(
        l, [](const UltraScalar& y) { return y; }, Ball::whole(), name);
  }
  if (name.rfind(ind, 0) == 0) {
    const int l = parse_suffix(name, ind.size());
    const FieldSpec f = field;
    return ScalarFn<UltraScalar>::locally_constant(
        l,
        [f](const UltraScalar& y) {
          return y.is_zero() ? UltraScalar::one(FieldSpec{f.kind, f.p, 1}) : UltraScalar::zero(f);
        },
        Ball::whole(), name);
  }
  if (name == "digit-halving") {
    return ScalarFn<UltraScalar>::black_box(
        digit_halving, Ball::around(UltraScalar::zero(field), 0), name);
  }
  if (name.rfind("x^", 0) == 0) {
    const int k = parse_suffix(name, 2);
    if (k < 0) throw std::invalid_argument("bad corpus name: " + name);
    std::vector<UltraScalar> c(k + 1, UltraScalar::zero(field));
    c[k] = UltraScalar::one(field);
    return ScalarFn<UltraScalar>::polynomial(std::move(c), Ball::whole(), name);
  }
  throw std::invalid_argument("unknown corpus function: " + name);
}

}  // namespace ultrawrap::calc
