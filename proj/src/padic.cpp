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

#include "ultrawrap/padic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace ultrawrap {

std::string_view field_kind_name(FieldKind kind) {
  return kind == FieldKind::kPadic ? "padic" : "laurent";
}

FieldKind parse_field_kind(std::string_view name) {
  if (name == "padic" || name == "Qp") return FieldKind::kPadic;
  if (name == "laurent" || name == "Fp((t))") return FieldKind::kLaurent;
  throw FieldError("unknown field kind: " + std::string(name));
}

std::string FieldSpec::name() const {
  return kind == FieldKind::kPadic ? "Q_" + std::to_string(p)
                                   : "F_" + std::to_string(p) + "((t))";
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void check_field(FieldKind kind, int p) {
  (void)kind;
  if (!is_prime(p)) throw FieldError(std::to_string(p) + " is not prime");
  if (p >= (1 << 15)) throw FieldError("prime too large: " + std::to_string(p));
}

// ---------------------------------------------------------------- Norm

double Norm::to_double() const {
  return zero_ ? 0.0 : std::pow(static_cast<double>(p_), -v_);
}

namespace {

// p^e as a decimal string, or empty when it does not fit.
std::string power_string(int p, int e) {
  unsigned __int128 r = 1;
  for (int i = 0; i < e; ++i) {
    r *= static_cast<unsigned>(p);
    if (r > static_cast<unsigned __int128>(std::numeric_limits<std::uint64_t>::max())) {
      return "";
    }
  }
  return std::to_string(static_cast<std::uint64_t>(r));
}

}  // namespace

std::string Norm::to_string() const {
  if (zero_) return "0";
  const int e = v_ < 0 ? -v_ : v_;
  std::string mag = power_string(p_, e);
  if (mag.empty()) mag = std::to_string(p_) + "^" + std::to_string(e);
  return v_ <= 0 ? mag : "1/" + mag;
}

Norm Norm::operator*(const Norm& o) const {
  if (p_ != o.p_) throw FieldError("norms over different primes");
  if (zero_ || o.zero_) return zero(p_);
  return of_valuation(p_, v_ + o.v_);
}

std::strong_ordering Norm::operator<=>(const Norm& o) const {
  if (p_ != o.p_) throw FieldError("norms over different primes");
  if (zero_ || o.zero_) {
    return static_cast<int>(!zero_) <=> static_cast<int>(!o.zero_);
  }
  return o.v_ <=> v_;
}

Norm max(const Norm& a, const Norm& b) { return a < b ? b : a; }

// -------------------------------------------------------- digit vectors

namespace digits {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int32_t at(const Digits& a, int i) {
  return i < static_cast<int>(a.size()) ? a[i] : 0;
}

}  // namespace

Digits add(const Digits& a, const Digits& b, int n, int p, bool carry) {
  Digits out(n);
  std::int64_t c = 0;
  for (int i = 0; i < n; ++i) {
    std::int64_t s = static_cast<std::int64_t>(at(a, i)) + at(b, i) + c;
    out[i] = static_cast<std::int32_t>(s % p);
    c = carry ? s / p : 0;
  }
  return out;
}

Digits neg(const Digits& a, int n, int p, bool carry) {
  Digits out(n, 0);
  if (!carry) {
    for (int i = 0; i < n; ++i) out[i] = (p - at(a, i)) % p;
    return out;
  }
  int i = 0;
  while (i < n && at(a, i) == 0) ++i;
  if (i == n) return out;
  out[i] = p - at(a, i);
  for (++i; i < n; ++i) out[i] = p - 1 - at(a, i);
  return out;
}

Digits mul(const Digits& a, const Digits& b, int n, int p, bool carry) {
  boost::container::small_vector<std::int64_t, 32> acc(n, 0);
  const int na = std::min<int>(n, static_cast<int>(a.size()));
  const int nb = std::min<int>(n, static_cast<int>(b.size()));
  for (int i = 0; i < na; ++i) {
    if (a[i] == 0) continue;
    const int lim = std::min(nb, n - i);
    for (int j = 0; j < lim; ++j) {
      acc[i + j] += static_cast<std::int64_t>(a[i]) * b[j];
    }
    if (!carry) {
      for (int j = 0; j < lim; ++j) acc[i + j] %= p;
    }
  }
  Digits out(n);
  std::int64_t c = 0;
  for (int i = 0; i < n; ++i) {
    std::int64_t s = acc[i] + c;
    out[i] = static_cast<std::int32_t>(s % p);
    c = carry ? s / p : 0;
  }
  return out;
}

Digits from_int(std::int64_t v, int n, int p, bool carry) {
  Digits out(n, 0);
  if (n == 0) return out;
  if (!carry) {
    out[0] = static_cast<std::int32_t>(floor_mod(v, p));
    return out;
  }
  if (v < 0) {
    // |v| fits even for INT64_MIN when taken as unsigned.
    std::uint64_t u = static_cast<std::uint64_t>(-(v + 1)) + 1;
    Digits pos(n, 0);
    for (int i = 0; i < n && u != 0; ++i) {
      pos[i] = static_cast<std::int32_t>(u % static_cast<unsigned>(p));
      u /= static_cast<unsigned>(p);
    }
    return neg(pos, n, p, true);
  }
  std::uint64_t u = static_cast<std::uint64_t>(v);
  for (int i = 0; i < n && u != 0; ++i) {
    out[i] = static_cast<std::int32_t>(u % static_cast<unsigned>(p));
    u /= static_cast<unsigned>(p);
  }
  return out;
}

namespace {

std::int64_t inverse_mod_prime(std::int64_t a, std::int64_t p) {
  // Fermat.
  std::int64_t r = 1, b = floor_mod(a, p);
  for (std::int64_t e = p - 2; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r;
}

}  // namespace

Digits inv(const Digits& a, int n, int p, bool carry) {
  if (n == 0) return {};
  if (at(a, 0) % p == 0) throw DivisionByZero("inverse of a non-unit digit vector");
  Digits w(1, static_cast<std::int32_t>(inverse_mod_prime(a[0], p)));
  int m = 1;
  while (m < n) {
    m = std::min(2 * m, n);
    Digits aw = mul(a, w, m, p, carry);
    Digits two = from_int(2, m, p, carry);
    Digits corr = add(two, neg(aw, m, p, carry), m, p, carry);
    w = mul(w, corr, m, p, carry);
  }
  w.resize(n, 0);
  return w;
}

}  // namespace digits

// ---------------------------------------------------------- UltraScalar

namespace {

int sat_add(int a, int b) {
  if (a >= UltraScalar::kExact || b >= UltraScalar::kExact) {
    return UltraScalar::kExact;
  }
  return a + b;
}

char digit_char(int d) {
  return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10));
}

int char_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

}  // namespace

UltraScalar UltraScalar::zero(const FieldSpec& f, int absolute_precision) {
  check_field(f.kind, f.p);
  UltraScalar z;
  z.kind_ = f.kind;
  z.p_ = f.p;
  z.valuation_ = 0;
  z.zero_abs_ = std::min(absolute_precision, kExact);
  return z;
}

UltraScalar UltraScalar::one(const FieldSpec& f) {
  return uniformizer_power(f, 0);
}

UltraScalar UltraScalar::uniformizer_power(const FieldSpec& f, int e) {
  check_field(f.kind, f.p);
  if (f.precision < 1) throw PrecisionLoss("precision must be positive", 0, 1);
  Digits d(f.precision, 0);
  d[0] = 1;
  return from_digits(f.kind, f.p, e, d);
}

UltraScalar UltraScalar::from_integer(std::int64_t n, const FieldSpec& f) {
  return from_rational(n, 1, f);
}

UltraScalar UltraScalar::from_rational(std::int64_t num, std::int64_t den,
                                       const FieldSpec& f) {
  check_field(f.kind, f.p);
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  if (f.precision < 1) throw PrecisionLoss("precision must be positive", 0, 1);
  const int n = f.precision;
  if (f.kind == FieldKind::kLaurent) {
    std::int64_t a = num % f.p, b = den % f.p;
    if (b == 0) throw DivisionByZero("denominator vanishes in F_p");
    if (a == 0) return zero(f);
    Digits da = digits::from_int(a, n, f.p, false);
    Digits db = digits::from_int(b, n, f.p, false);
    return from_digits(f.kind, f.p, 0,
                       digits::mul(da, digits::inv(db, n, f.p, false), n, f.p, false));
  }
  if (num == 0) return zero(f);
  int v = 0;
  while (num % f.p == 0) { num /= f.p; ++v; }
  while (den % f.p == 0) { den /= f.p; --v; }
  Digits da = digits::from_int(num, n, f.p, true);
  Digits db = digits::from_int(den, n, f.p, true);
  return from_digits(f.kind, f.p, v,
                     digits::mul(da, digits::inv(db, n, f.p, true), n, f.p, true));
}

UltraScalar UltraScalar::from_digits(FieldKind kind, int p, int valuation,
                                     const Digits& d) {
  check_field(kind, p);
  UltraScalar x;
  x.kind_ = kind;
  x.p_ = p;
  for (auto c : d) {
    if (c < 0 || c >= p) throw FieldError("digit out of range: " + std::to_string(c));
  }
  std::size_t lead = 0;
  while (lead < d.size() && d[lead] == 0) ++lead;
  if (lead == d.size()) {
    x.valuation_ = 0;
    x.zero_abs_ = valuation + static_cast<int>(d.size());
    return x;
  }
  x.valuation_ = valuation + static_cast<int>(lead);
  x.zero_abs_ = 0;
  x.digits_.assign(d.begin() + static_cast<std::ptrdiff_t>(lead), d.end());
  return x;
}

int UltraScalar::absolute_precision() const {
  return is_zero() ? zero_abs_ : valuation_ + precision();
}

Norm UltraScalar::norm() const {
  return is_zero() ? Norm::zero(p_) : Norm::of_valuation(p_, valuation_);
}

void UltraScalar::require_same_field(const UltraScalar& o) const {
  if (!same_field(o)) {
    throw FieldError("operands from different fields: " +
                     std::string(field_kind_name(kind_)) + " " + std::to_string(p_) +
                     " vs " + std::string(field_kind_name(o.kind_)) + " " +
                     std::to_string(o.p_));
  }
}

UltraScalar UltraScalar::operator-() const {
  if (is_zero()) return *this;
  UltraScalar r = *this;
  r.digits_ = digits::neg(digits_, precision(), p_, carries());
  return r;
}

UltraScalar UltraScalar::capped_absolute(int a) const {
  if (is_zero()) {
    UltraScalar r = *this;
    r.zero_abs_ = std::min(zero_abs_, a);
    return r;
  }
  if (a <= valuation_) {
    UltraScalar r = *this;
    r.digits_.clear();
    r.valuation_ = 0;
    r.zero_abs_ = a;
    return r;
  }
  return truncated(a - valuation_);
}

UltraScalar UltraScalar::operator+(const UltraScalar& o) const {
  require_same_field(o);
  if (is_zero()) return o.capped_absolute(zero_abs_);
  if (o.is_zero()) return capped_absolute(o.zero_abs_);
  const int v = std::min(valuation_, o.valuation_);
  const int abs = std::min(absolute_precision(), o.absolute_precision());
  const int n = abs - v;
  Digits a(n, 0), b(n, 0);
  for (int i = 0; i < n; ++i) {
    int ia = v + i - valuation_, ib = v + i - o.valuation_;
    if (ia >= 0 && ia < precision()) a[i] = digits_[ia];
    if (ib >= 0 && ib < o.precision()) b[i] = o.digits_[ib];
  }
  return from_digits(kind_, p_, v, digits::add(a, b, n, p_, carries()));
}

UltraScalar UltraScalar::operator-(const UltraScalar& o) const { return *this + (-o); }

UltraScalar UltraScalar::operator*(const UltraScalar& o) const {
  require_same_field(o);
  if (is_zero() || o.is_zero()) {
    int a = is_zero() ? zero_abs_ : valuation_;
    int b = o.is_zero() ? o.zero_abs_ : o.valuation_;
    if (is_exact_zero() || o.is_exact_zero()) a = kExact;
    UltraScalar r = *this;
    r.digits_.clear();
    r.valuation_ = 0;
    r.zero_abs_ = sat_add(a, b);
    return r;
  }
  const int n = std::min(precision(), o.precision());
  UltraScalar r = *this;
  r.valuation_ = valuation_ + o.valuation_;
  r.digits_ = digits::mul(digits_, o.digits_, n, p_, carries());
  return r;
}

UltraScalar UltraScalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in " + std::to_string(p_) + "-adic field");
  UltraScalar r = *this;
  r.valuation_ = -valuation_;
  r.digits_ = digits::inv(digits_, precision(), p_, carries());
  return r;
}

UltraScalar UltraScalar::operator/(const UltraScalar& o) const {
  require_same_field(o);
  return *this * o.inverse();
}

UltraScalar UltraScalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  UltraScalar result = one(FieldSpec{kind_, p_, is_zero() ? 1 : precision()});
  UltraScalar base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool UltraScalar::operator==(const UltraScalar& o) const {
  return (*this - o).is_zero();
}

bool UltraScalar::indistinguishable_at(const UltraScalar& o, int k) const {
  UltraScalar d = *this - o;
  return d.is_zero() ? d.zero_abs_ >= k : d.valuation_ >= k;
}

UltraScalar UltraScalar::truncated(int k) const {
  if (is_zero()) return *this;
  if (k <= 0) return capped_absolute(valuation_);
  UltraScalar r = *this;
  if (k < precision()) r.digits_.resize(k);
  return r;
}

UltraScalar UltraScalar::padded(int k) const {
  if (is_zero()) {
    UltraScalar r = *this;
    if (zero_abs_ < kExact) r.zero_abs_ = std::max(zero_abs_, k);
    return r;
  }
  UltraScalar r = *this;
  if (k > precision()) r.digits_.resize(k, 0);
  return r;
}

std::int64_t UltraScalar::unit_residue(int m) const {
  if (is_zero()) throw ArithmeticError("unit part of zero");
  if (m > precision()) {
    throw PrecisionLoss("unit residue mod p^" + std::to_string(m) + " needs more digits",
                        precision(), m);
  }
  if (kind_ == FieldKind::kLaurent) {
    if (m != 1) throw FieldError("integer residues are only defined for Q_p");
    return digits_[0];
  }
  std::int64_t r = 0, pw = 1;
  for (int i = 0; i < m; ++i) {
    if (i > 0) {
      if (pw > (std::int64_t{1} << 62) / p_) throw ArithmeticError("residue overflow");
      pw *= p_;
    }
    r += digits_[i] * pw;
  }
  return r;
}

UltraScalar UltraScalar::sqrt() const {
  if (is_zero()) {
    UltraScalar r = *this;
    if (zero_abs_ < kExact) r.zero_abs_ = (zero_abs_ + 1) / 2;
    return r;
  }
  if (kind_ == FieldKind::kLaurent && p_ == 2) {
    throw FieldError("square roots in characteristic 2 are not supported");
  }
  if (valuation_ % 2 != 0) throw ArithmeticError("not a square: odd valuation");
  const int n = precision();
  const bool c = carries();
  UltraScalar r = *this;
  r.valuation_ = valuation_ / 2;
  if (p_ == 2) {
    if (n < 3) throw PrecisionLoss("2-adic square roots need 3 known digits", n, 3);
    if (digits_[1] != 0 || digits_[2] != 0) {
      throw ArithmeticError("not a square: unit part is not 1 mod 8");
    }
    Digits root(n, 0);
    root[0] = 1;
    for (int k = 3; k < n; ++k) {
      Digits sq = digits::mul(root, root, n, 2, true);
      Digits diff = digits::add(sq, digits::neg(digits_, n, 2, true), n, 2, true);
      if (diff[k] != 0) {
        Digits bump(n, 0);
        bump[k - 1] = 1;
        root = digits::add(root, bump, n, 2, true);
      }
    }
    root.resize(n - 1);
    r.digits_ = root;
    return r;
  }
  int r0 = 0;
  for (int cand = 1; cand < p_; ++cand) {
    if (static_cast<std::int64_t>(cand) * cand % p_ == digits_[0]) {
      r0 = cand;
      break;
    }
  }
  if (r0 == 0) throw ArithmeticError("not a square: residue is not a square mod p");
  Digits root(1, r0);
  int m = 1;
  while (m < n) {
    m = std::min(2 * m, n);
    Digits sq = digits::mul(root, root, m, p_, c);
    Digits f = digits::add(sq, digits::neg(digits_, m, p_, c), m, p_, c);
    Digits two_r = digits::add(root, root, m, p_, c);
    Digits step = digits::mul(f, digits::inv(two_r, m, p_, c), m, p_, c);
    root = digits::add(root, digits::neg(step, m, p_, c), m, p_, c);
  }
  root.resize(n, 0);
  r.digits_ = root;
  return r;
}

bool UltraScalar::is_square() const {
  try {
    (void)sqrt();
    return true;
  } catch (const PrecisionLoss&) {
    throw;
  } catch (const FieldError&) {
    throw;
  } catch (const ArithmeticError&) {
    return false;
  }
}

std::string UltraScalar::to_literal() const {
  if (p_ > 36) throw FieldError("literals support primes up to 36");
  std::string s = (kind_ == FieldKind::kPadic ? "p" : "t") + std::to_string(p_) + ":";
  if (is_zero()) {
    if (is_exact_zero()) return s + "0";
    return s + "0e" + std::to_string(zero_abs_);
  }
  s += digit_char(digits_[0]);
  if (digits_.size() > 1) {
    s += '.';
    for (std::size_t i = 1; i < digits_.size(); ++i) s += digit_char(digits_[i]);
  }
  return s + "e" + std::to_string(valuation_);
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("bad scalar literal: " + std::string(whole));
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    ++i;
  }
  if (i == s.size()) throw std::invalid_argument("bad scalar literal: " + std::string(whole));
  long long v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9' || v > 100000000) {
      throw std::invalid_argument("bad scalar literal: " + std::string(whole));
    }
    v = v * 10 + (s[i] - '0');
  }
  return static_cast<int>(negative ? -v : v);
}

}  // namespace

UltraScalar UltraScalar::parse_literal(std::string_view text) {
  const std::string whole(text);
  auto bad = [&] { return std::invalid_argument("bad scalar literal: " + whole); };
  if (text.size() < 4) throw bad();
  FieldKind kind;
  if (text[0] == 'p') {
    kind = FieldKind::kPadic;
  } else if (text[0] == 't') {
    kind = FieldKind::kLaurent;
  } else {
    throw bad();
  }
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw bad();
  const int p = parse_int(text.substr(1, colon - 1), text);
  check_field(kind, p);
  if (p > 36) throw FieldError("literals support primes up to 36");
  std::string_view body = text.substr(colon + 1);
  if (body == "0") return zero(FieldSpec{kind, p, 1});
  auto e = body.rfind('e');
  if (e == std::string_view::npos || e == 0) throw bad();
  const int exponent = parse_int(body.substr(e + 1), text);
  std::string_view mant = body.substr(0, e);
  if (mant == "0") return zero(FieldSpec{kind, p, 1}, exponent);
  Digits d;
  for (std::size_t i = 0; i < mant.size(); ++i) {
    if (i == 1 && mant[i] == '.') continue;
    int v = char_digit(mant[i]);
    if (v < 0 || v >= p) throw bad();
    d.push_back(v);
  }
  if (mant.size() > 1 && mant[1] != '.') throw bad();
  if (mant.size() == 2) throw bad();
  return from_digits(kind, p, exponent, d);
}

std::string UltraScalar::to_string() const {
  const std::string u = kind_ == FieldKind::kPadic ? std::to_string(p_) : "t";
  auto term = [&](int d, int e) {
    std::string s = std::to_string(d);
    if (e == 0) return s;
    std::string pw = e == 1 ? u : u + "^" + std::to_string(e);
    return d == 1 ? pw : s + "*" + pw;
  };
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < precision(); ++i) {
    if (digits_[i] == 0) continue;
    if (!first) os << " + ";
    os << term(digits_[i], valuation_ + i);
    first = false;
  }
  if (is_exact_zero()) return "0";
  const int abs = absolute_precision();
  if (!first) os << " + ";
  os << "O(" << u << "^" << abs << ")";
  return os.str();
}

std::optional<UltraScalar> hensel_sqrt(const UltraScalar& a) {
  if (!a.is_square()) return std::nullopt;
  return a.sqrt();
}

std::ostream& operator<<(std::ostream& os, const UltraScalar& x) {
  return os << x.to_string();
}

}  // namespace ultrawrap
