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

// Truncated elements of Q_p and F_p((t)).
//
// A nonzero element is stored as p^v * (d_0 + d_1 p + ... + d_{n-1} p^{n-1})
// with d_0 != 0; n is its relative precision. In F_p((t)) the same digit
// vector is read as a Laurent series in t with no carries. Zero is a
// distinguished value that remembers the absolute precision it is known to
// (exact zero has none).
//
// Precision rules:
//   sum      absolute precision is the minimum of the operands' absolute
//            precisions (valuation + relative precision);
//   product  relative precision is the minimum of the operands';
//   inverse  relative precision is preserved.

#ifndef ULTRAWRAP_PADIC_HPP_
#define ULTRAWRAP_PADIC_HPP_

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/container/small_vector.hpp>

namespace ultrawrap {

enum class FieldKind : std::uint8_t { kPadic, kLaurent };

std::string_view field_kind_name(FieldKind kind);
FieldKind parse_field_kind(std::string_view name);

// Base field at a working relative precision.
struct FieldSpec {
  FieldKind kind = FieldKind::kPadic;
  int p = 2;
  int precision = 10;

  int characteristic() const { return kind == FieldKind::kPadic ? 0 : p; }
  std::string name() const;
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public ArithmeticError {
 public:
  using ArithmeticError::ArithmeticError;
};

// Raised when a result needs more digits than the operands carry.
class PrecisionLoss : public ArithmeticError {
 public:
  PrecisionLoss(const std::string& what, int available, int requested)
      : ArithmeticError(what), available_(available), requested_(requested) {}
  int available() const { return available_; }
  int requested() const { return requested_; }

 private:
  int available_;
  int requested_;
};

// Bad field parameters, or operands from two different fields.
class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::int64_t n);

// Validates p and the kind; throws FieldError.
void check_field(FieldKind kind, int p);

// The value p^(-v) of an absolute value, kept exact.
class Norm {
 public:
  static Norm zero(int p) { return Norm(p, 0, true); }
  static Norm of_valuation(int p, int v) { return Norm(p, v, false); }

  int base() const { return p_; }
  bool is_zero() const { return zero_; }
  // Exponent v with value p^(-v). Meaningless for zero.
  int valuation() const { return v_; }
  double to_double() const;
  // "0", "1", "5", "1/25".
  std::string to_string() const;

  Norm operator*(const Norm& o) const;
  std::strong_ordering operator<=>(const Norm& o) const;
  bool operator==(const Norm& o) const {
    return (*this <=> o) == std::strong_ordering::equal;
  }

 private:
  Norm(int p, int v, bool zero) : p_(p), v_(v), zero_(zero) {}
  int p_;
  int v_;
  bool zero_;
};

Norm max(const Norm& a, const Norm& b);

class UltraScalar {
 public:
  using Digits = boost::container::small_vector<std::int32_t, 16>;
  static constexpr int kExact = std::numeric_limits<int>::max() / 4;

  // Exact zero of Q_5; only useful as a placeholder.
  UltraScalar() : kind_(FieldKind::kPadic), p_(5), valuation_(0),
                  zero_abs_(kExact) {}

  static UltraScalar zero(const FieldSpec& f, int absolute_precision = kExact);
  static UltraScalar one(const FieldSpec& f);
  static UltraScalar from_integer(std::int64_t n, const FieldSpec& f);
  // num/den to f.precision significant digits. In F_p((t)) a rational is
  // read through Z -> F_p, so den must be prime to p.
  static UltraScalar from_rational(std::int64_t num, std::int64_t den,
                                   const FieldSpec& f);
  // p^valuation * sum digits[i] p^i; leading zero digits are absorbed into
  // the valuation. All-zero digits give zero O(p^(valuation + size)).
  static UltraScalar from_digits(FieldKind kind, int p, int valuation,
                                 const Digits& digits);
  // p^e (or t^e) with the given relative precision.
  static UltraScalar uniformizer_power(const FieldSpec& f, int e);

  FieldKind kind() const { return kind_; }
  int p() const { return p_; }
  bool is_zero() const { return digits_.empty(); }
  bool is_exact_zero() const { return is_zero() && zero_abs_ >= kExact; }
  // Valuation; kExact for zero.
  int valuation() const { return is_zero() ? kExact : valuation_; }
  // Number of significant digits; 0 for zero.
  int precision() const { return static_cast<int>(digits_.size()); }
  int absolute_precision() const;
  const Digits& digits() const { return digits_; }
  bool same_field(const UltraScalar& o) const {
    return kind_ == o.kind_ && p_ == o.p_;
  }

  Norm norm() const;

  UltraScalar operator-() const;
  UltraScalar operator+(const UltraScalar& o) const;
  UltraScalar operator-(const UltraScalar& o) const;
  UltraScalar operator*(const UltraScalar& o) const;
  UltraScalar operator/(const UltraScalar& o) const;
  UltraScalar& operator+=(const UltraScalar& o) { return *this = *this + o; }
  UltraScalar& operator-=(const UltraScalar& o) { return *this = *this - o; }
  UltraScalar& operator*=(const UltraScalar& o) { return *this = *this * o; }
  UltraScalar inverse() const;
  UltraScalar pow(int e) const;

  // Equal up to the precision both sides carry: x - y is zero.
  bool operator==(const UltraScalar& o) const;
  // v(x - y) >= k is certain.
  bool indistinguishable_at(const UltraScalar& o, int k) const;

  // Keeps at most k significant digits.
  UltraScalar truncated(int k) const;
  // Pads with zero digits to k significant digits (treats the stored digits
  // as exact). Zero becomes O(p^absolute) with absolute = k when finite.
  UltraScalar padded(int k) const;
  // Absolute precision capped at a.
  UltraScalar capped_absolute(int a) const;

  // Unit part u = x / p^v modulo p^m as an integer. Needs m <= precision and
  // p^m < 2^62. Only for Q_p; in F_p((t)) returns the leading coefficient
  // when m == 1.
  std::int64_t unit_residue(int m) const;

  // Square root by Hensel lifting. The root whose unit part has the smaller
  // leading residue mod p (odd p) or is 1 mod 4 (p = 2) is returned.
  // Throws ArithmeticError for non-squares, PrecisionLoss when too few
  // digits are known, FieldError in characteristic 2.
  UltraScalar sqrt() const;
  bool is_square() const;

  // "p5:2.301e-1": digits least significant first, e = valuation. "t3:"
  // for F_3((t)). "p5:0" is exact zero, "p5:0e7" is zero mod 5^7.
  std::string to_literal() const;
  static UltraScalar parse_literal(std::string_view text);
  // "3 + 4*5 + O(5^3)" style rendering.
  std::string to_string() const;

 private:
  void require_same_field(const UltraScalar& o) const;
  bool carries() const { return kind_ == FieldKind::kPadic; }

  FieldKind kind_;
  std::int32_t p_;
  std::int32_t valuation_;
  std::int32_t zero_abs_;  // absolute precision of a zero
  Digits digits_;
};

std::ostream& operator<<(std::ostream& os, const UltraScalar& x);

// Square root, or nullopt for a non-square. Zero maps to zero.
std::optional<UltraScalar> hensel_sqrt(const UltraScalar& a);

// Digit-vector arithmetic modulo p^n, shared by the field and its users.
namespace digits {
using Digits = UltraScalar::Digits;
Digits add(const Digits& a, const Digits& b, int n, int p, bool carry);
Digits neg(const Digits& a, int n, int p, bool carry);
Digits mul(const Digits& a, const Digits& b, int n, int p, bool carry);
// Requires a[0] != 0 mod p.
Digits inv(const Digits& a, int n, int p, bool carry);
// n rendered in base p (Q_p) or as the constant n mod p (F_p((t))).
Digits from_int(std::int64_t v, int n, int p, bool carry);
}  // namespace digits

}  // namespace ultrawrap

#endif  // ULTRAWRAP_PADIC_HPP_
