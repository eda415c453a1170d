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

#include "ultrawrap/cayley_dickson.hpp"

#include <optional>
#include <ostream>
#include <sstream>

namespace ultrawrap {

// ------------------------------------------------------------- CDParams

CDParams::CDParams(const FieldSpec& field, std::vector<UltraScalar> q)
    : field_(field), q_(std::move(q)) {
  check_field(field_.kind, field_.p);
  if (field_.kind == FieldKind::kLaurent && field_.p == 2) {
    throw FieldError("Cayley-Dickson algebras need characteristic != 2; F_2((t)) rejected");
  }
  if (q_.size() > 3) throw std::invalid_argument("level must be in [0, 3]");
  for (const auto& qj : q_) {
    if (qj.kind() != field_.kind || qj.p() != field_.p) {
      throw FieldError("doubling scalar from a different field");
    }
    if (qj.is_zero()) throw std::invalid_argument("doubling scalars must be nonzero");
  }
}

CDParamsPtr CDParams::make(const FieldSpec& field, std::vector<UltraScalar> q) {
  return std::make_shared<const CDParams>(field, std::move(q));
}

CDParamsPtr CDParams::make(const FieldSpec& field, const std::vector<std::int64_t>& q) {
  std::vector<UltraScalar> qs;
  for (auto v : q) qs.push_back(UltraScalar::from_integer(v, field));
  return make(field, std::move(qs));
}

UltraScalar CDParams::q_monomial(const std::array<int, 3>& e) const {
  UltraScalar r = UltraScalar::one(field_);
  for (int j = 0; j < 3; ++j) {
    if (e[j] == 0) continue;
    if (j >= level()) throw std::invalid_argument("monomial uses q beyond the level");
    r = r * q_[j].pow(e[j]);
  }
  return r;
}

UltraScalar CDParams::square_coefficient(int j) const {
  return q_monomial({j & 1, (j >> 1) & 1, (j >> 2) & 1});
}

CDParamsPtr CDParams::lower() const {
  if (level() == 0) throw std::invalid_argument("level 0 has no lower algebra");
  return make(field_, std::vector<UltraScalar>(q_.begin(), q_.end() - 1));
}

bool CDParams::operator==(const CDParams& o) const {
  if (field_.kind != o.field_.kind || field_.p != o.field_.p || q_.size() != o.q_.size()) {
    return false;
  }
  for (std::size_t j = 0; j < q_.size(); ++j) {
    if (!(q_[j] == o.q_[j])) return false;
  }
  return true;
}

std::string CDParams::to_string() const {
  std::ostringstream os;
  os << "A_" << level() << "(";
  for (int j = 0; j < level(); ++j) os << (j ? "," : "") << render_scalar(q_[j]);
  os << ") over " << field_.name();
  return os.str();
}

// ------------------------------------------------------- generator table

namespace {

struct Relation {
  int a, b, c, sigma;
  std::array<int, 3> m;
};

// u_a u_b = sigma * m * u_c.
constexpr Relation kRelations[] = {
    {1, 2, 3, +1, {0, 0, 0}}, {1, 4, 5, -1, {0, 0, 0}}, {2, 4, 6, -1, {0, 0, 0}},
    {1, 6, 7, -1, {0, 0, 0}}, {3, 4, 7, -1, {0, 0, 0}}, {2, 5, 7, +1, {0, 0, 0}},
    // u3 u5 = (u1 u2)(u4 u1) = u1 (u2 u4) u1 by the Moufang identity.
    {3, 5, 6, -1, {1, 0, 0}},
};

std::array<int, 3> bits(int j) { return {j & 1, (j >> 1) & 1, (j >> 2) & 1}; }

std::array<int, 3> quotient(std::array<int, 3> num, const std::array<int, 3>& den) {
  for (int i = 0; i < 3; ++i) {
    num[i] -= den[i];
    if (num[i] < 0) throw std::logic_error("generator table: non-monomial quotient");
  }
  return num;
}

GeneratorTable build_full_table() {
  GeneratorTable t(8, std::vector<GeneratorProduct>(8));
  std::vector<std::vector<bool>> filled(8, std::vector<bool>(8, false));
  auto put = [&](int i, int j, GeneratorProduct g) {
    if (filled[i][j] && !(t[i][j] == g)) {
      throw std::logic_error("generator table: inconsistent relations");
    }
    t[i][j] = g;
    filled[i][j] = true;
  };
  for (int i = 0; i < 8; ++i) {
    put(0, i, {1, {0, 0, 0}, i});
    put(i, 0, {1, {0, 0, 0}, i});
    if (i > 0) put(i, i, {-1, bits(i), 0});
  }
  for (const Relation& r : kRelations) {
    put(r.a, r.b, {r.sigma, r.m, r.c});
    put(r.b, r.a, {-r.sigma, r.m, r.c});
    const auto qa = quotient(bits(r.a), r.m), qb = quotient(bits(r.b), r.m);
    put(r.a, r.c, {-r.sigma, qa, r.b});
    put(r.c, r.a, {r.sigma, qa, r.b});
    put(r.c, r.b, {-r.sigma, qb, r.a});
    put(r.b, r.c, {r.sigma, qb, r.a});
  }
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      if (!filled[i][j]) throw std::logic_error("generator table: incomplete");
    }
  }
  return t;
}

const GeneratorTable& full_table() {
  static const GeneratorTable table = build_full_table();
  return table;
}

// Doubling product on natural coordinates.
using Coeffs = std::vector<UltraScalar>;

Coeffs natural_conj(const UltraScalar* a, int n) {
  Coeffs r(a, a + n);
  for (int i = 1; i < n; ++i) r[i] = -r[i];
  return r;
}

Coeffs natural_mul(const UltraScalar* a, const UltraScalar* b, int level,
                   const std::vector<UltraScalar>& q) {
  if (level == 0) return {a[0] * b[0]};
  const int h = 1 << (level - 1);
  const UltraScalar *a1 = a, *a2 = a + h, *b1 = b, *b2 = b + h;
  Coeffs a2c = natural_conj(a2, h), a1c = natural_conj(a1, h);
  Coeffs t1 = natural_mul(a1, b1, level - 1, q);
  Coeffs t2 = natural_mul(b2, a2c.data(), level - 1, q);
  Coeffs t3 = natural_mul(a1c.data(), b2, level - 1, q);
  Coeffs t4 = natural_mul(b1, a2, level - 1, q);
  const UltraScalar& d = q[level - 1];
  Coeffs out(2 * h);
  for (int i = 0; i < h; ++i) {
    out[i] = t1[i] - d * t2[i];
    out[h + i] = t3[i] + t4[i];
  }
  return out;
}

// Natural product e_i e_j in A_3 over Q_11 for the given q.
Coeffs natural_basis_product(int i, int j, const std::vector<UltraScalar>& q,
                             const FieldSpec& f) {
  Coeffs ei(8, UltraScalar::zero(f)), ej(8, UltraScalar::zero(f));
  ei[i] = UltraScalar::one(f);
  ej[j] = UltraScalar::one(f);
  return natural_mul(ei.data(), ej.data(), 3, q);
}

std::array<int, 8> calibrate_signs() {
  const FieldSpec f{FieldKind::kPadic, 11, 6};
  std::vector<UltraScalar> ones(3, UltraScalar::one(f));
  std::array<int, 8> s{1, 1, 1, 0, 1, 0, 0, 0};
  const auto& t = full_table();
  for (int k : {3, 5, 6, 7}) {
    const int h = k >= 4 ? 4 : 2;
    const int m = k - h;
    Coeffs prod = natural_basis_product(m, h, ones, f);
    int tau = prod[k] == UltraScalar::one(f) ? 1 : -1;
    s[k] = t[m][h].sign * s[m] * s[h] * tau;
  }
  // Full check with distinct q values: s_i s_j e_i e_j must equal u_i u_j.
  std::vector<UltraScalar> q = {UltraScalar::from_integer(2, f), UltraScalar::from_integer(3, f),
                                UltraScalar::from_integer(5, f)};
  CDParams params(f, q);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      Coeffs prod = natural_basis_product(i, j, q, f);
      const GeneratorProduct& g = t[i][j];
      UltraScalar want = g.coefficient(params);
      for (int k = 0; k < 8; ++k) {
        // Generator-basis coordinate k of u_i u_j is s_k * natural coordinate.
        UltraScalar got = prod[k];
        if (s[i] * s[j] * s[k] < 0) got = -got;
        UltraScalar expect = k == g.index ? want : UltraScalar::zero(f);
        if (!(got == expect)) {
          throw std::logic_error("doubling product disagrees with the generator table at u" +
                                 std::to_string(i) + "*u" + std::to_string(j));
        }
      }
    }
  }
  return s;
}

}  // namespace

const std::array<int, 8>& doubling_basis_signs() {
  static const std::array<int, 8> signs = calibrate_signs();
  return signs;
}

GeneratorTable generator_table(int level) {
  if (level < 0 || level > 3) throw std::invalid_argument("level must be in [0, 3]");
  const int n = 1 << level;
  GeneratorTable t(n);
  for (int i = 0; i < n; ++i) t[i].assign(full_table()[i].begin(), full_table()[i].begin() + n);
  return t;
}

UltraScalar GeneratorProduct::coefficient(const CDParams& params) const {
  UltraScalar c = params.q_monomial(q_exponents);
  return sign < 0 ? -c : c;
}

std::string GeneratorProduct::to_string() const {
  std::string s = sign < 0 ? "-" : "+";
  std::string mono;
  for (int j = 0; j < 3; ++j) {
    for (int e = 0; e < q_exponents[j]; ++e) mono += "q" + std::to_string(j + 1);
  }
  if (!mono.empty()) s += mono + "*";
  return s + "u" + std::to_string(index);
}

// ------------------------------------------------------------ CDElement

CDElement::CDElement(CDParamsPtr params, std::vector<UltraScalar> coeffs)
    : params_(std::move(params)), coeffs_(std::move(coeffs)) {
  if (!params_) throw std::invalid_argument("missing algebra parameters");
  if (static_cast<int>(coeffs_.size()) != params_->dimension()) {
    throw std::invalid_argument("coefficient vector has length " +
                                std::to_string(coeffs_.size()) + ", expected " +
                                std::to_string(params_->dimension()));
  }
  for (const auto& c : coeffs_) {
    if (c.kind() != params_->field().kind || c.p() != params_->field().p) {
      throw FieldError("coefficient from a different field");
    }
  }
}

CDElement CDElement::zero(CDParamsPtr params) {
  const int n = params->dimension();
  UltraScalar z = UltraScalar::zero(params->field());
  return CDElement(std::move(params), std::vector<UltraScalar>(n, z));
}

CDElement CDElement::one(CDParamsPtr params) {
  return scalar(params, UltraScalar::one(params->field()));
}

CDElement CDElement::scalar(CDParamsPtr params, const UltraScalar& c) {
  CDElement x = zero(std::move(params));
  x.coeffs_[0] = c;
  return x;
}

CDElement CDElement::generator(CDParamsPtr params, int j) {
  if (j < 0 || j >= params->dimension()) {
    throw std::invalid_argument("generator u" + std::to_string(j) + " outside A_" +
                                std::to_string(params->level()));
  }
  CDElement x = zero(params);
  x.coeffs_[j] = UltraScalar::one(params->field());
  return x;
}

void require_same_params(const CDElement& x, const CDElement& y) {
  if (x.params_ptr() == y.params_ptr()) return;
  if (!(x.params() == y.params())) {
    throw ParameterMismatch("elements of " + x.params().to_string() + " and " +
                            y.params().to_string());
  }
}

CDElement CDElement::operator+(const CDElement& o) const {
  require_same_params(*this, o);
  std::vector<UltraScalar> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] + o.coeffs_[i];
  return CDElement(params_, std::move(c));
}

CDElement CDElement::operator-(const CDElement& o) const { return *this + (-o); }

CDElement CDElement::operator-() const {
  std::vector<UltraScalar> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coeffs_[i];
  return CDElement(params_, std::move(c));
}

CDElement CDElement::operator*(const CDElement& o) const { return cd_mul(*this, o); }

CDElement CDElement::operator*(const UltraScalar& s) const {
  std::vector<UltraScalar> c(coeffs_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeffs_[i] * s;
  return CDElement(params_, std::move(c));
}

CDElement CDElement::operator/(const UltraScalar& s) const { return *this * s.inverse(); }

CDElement operator*(const UltraScalar& c, const CDElement& x) { return x * c; }

bool CDElement::operator==(const CDElement& o) const {
  require_same_params(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!(coeffs_[i] == o.coeffs_[i])) return false;
  }
  return true;
}

bool CDElement::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool CDElement::is_scalar() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero()) return false;
  }
  return true;
}

Norm CDElement::sup_norm() const {
  Norm m = Norm::zero(params_->field().p);
  for (const auto& c : coeffs_) m = max(m, c.norm());
  return m;
}

std::string CDElement::to_string() const {
  std::string s;
  for (int i = 0; i < dimension(); ++i) {
    const UltraScalar& c = coeffs_[i];
    if (c.is_zero()) continue;
    std::string r = render_scalar(c);
    bool neg = !r.empty() && r[0] == '-';
    if (neg) r = r.substr(1);
    std::string term;
    if (i == 0) {
      term = r;
    } else {
      term = (r == "1" ? "" : r + "*") + "u" + std::to_string(i);
    }
    if (s.empty()) {
      s = (neg ? "-" : "") + term;
    } else {
      s += (neg ? " - " : " + ") + term;
    }
  }
  return s.empty() ? "0" : s;
}

std::ostream& operator<<(std::ostream& os, const CDElement& x) { return os << x.to_string(); }

ZeroNormElement::ZeroNormElement(const CDElement& w)
    : ArithmeticError("zero divisor: n(" + w.to_string() + ") = 0"),
      witness_(std::make_shared<CDElement>(w)) {}

// ------------------------------------------------------------ operations

CDElement cd_mul(const CDElement& x, const CDElement& y) {
  require_same_params(x, y);
  const auto& s = doubling_basis_signs();
  const int n = x.dimension();
  std::vector<UltraScalar> a(x.coeffs()), b(y.coeffs());
  for (int i = 0; i < n; ++i) {
    if (s[i] < 0) {
      a[i] = -a[i];
      b[i] = -b[i];
    }
  }
  std::vector<UltraScalar> c = natural_mul(a.data(), b.data(), x.params().level(), x.params().q());
  for (int i = 0; i < n; ++i) {
    if (s[i] < 0) c[i] = -c[i];
  }
  return CDElement(x.params_ptr(), std::move(c));
}

CDElement table_mul(const CDElement& x, const CDElement& y) {
  require_same_params(x, y);
  (void)doubling_basis_signs();
  const CDParams& params = x.params();
  const int n = x.dimension();
  const GeneratorTable& t = full_table();
  std::vector<UltraScalar> c(n, UltraScalar::zero(params.field()));
  for (int i = 0; i < n; ++i) {
    if (x[i].is_exact_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j].is_exact_zero()) continue;
      const GeneratorProduct& g = t[i][j];
      c[g.index] += x[i] * y[j] * g.coefficient(params);
    }
  }
  return CDElement(x.params_ptr(), std::move(c));
}

CDElement conj(const CDElement& x) {
  std::vector<UltraScalar> c(x.coeffs());
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = -c[i];
  return CDElement(x.params_ptr(), std::move(c));
}

UltraScalar trace(const CDElement& x) { return x[0] + x[0]; }

UltraScalar norm_value(const CDElement& x) {
  if (x.params().level() == 0) return x[0] * x[0];
  auto [a1, a2] = halves(x);
  return norm_value(a1) + x.params().q().back() * norm_value(a2);
}

CDElement cd_inv(const CDElement& x) {
  UltraScalar n = norm_value(x);
  if (n.is_zero()) {
    if (x.is_zero()) throw DivisionByZero("inverse of zero");
    throw ZeroNormElement(x);
  }
  return conj(x) / n;
}

std::pair<CDElement, CDElement> halves(const CDElement& x) {
  CDParamsPtr low = x.params().lower();
  const auto& s = doubling_basis_signs();
  const int h = x.dimension() / 2;
  std::vector<UltraScalar> a1(x.coeffs().begin(), x.coeffs().begin() + h), a2(h);
  for (int i = 0; i < h; ++i) a2[i] = s[i] * s[h + i] < 0 ? -x[h + i] : x[h + i];
  return {CDElement(low, std::move(a1)), CDElement(std::move(low), std::move(a2))};
}

CDElement from_halves(CDParamsPtr params, const CDElement& a1, const CDElement& a2) {
  require_same_params(a1, a2);
  if (!(*params->lower() == a1.params())) {
    throw ParameterMismatch("halves do not belong to the lower algebra");
  }
  const auto& s = doubling_basis_signs();
  const int h = a1.dimension();
  std::vector<UltraScalar> c(2 * h);
  for (int i = 0; i < h; ++i) {
    c[i] = a1[i];
    c[h + i] = s[i] * s[h + i] < 0 ? -a2[i] : a2[i];
  }
  return CDElement(std::move(params), std::move(c));
}

CDElement embed(const CDElement& x, CDParamsPtr target) {
  const CDParams& src = x.params();
  if (target->level() < src.level() || target->field().p != src.field().p ||
      target->field().kind != src.field().kind) {
    throw ParameterMismatch("cannot embed " + src.to_string() + " into " + target->to_string());
  }
  for (int j = 0; j < src.level(); ++j) {
    if (!(src.q()[j] == target->q()[j])) {
      throw ParameterMismatch("cannot embed " + src.to_string() + " into " + target->to_string());
    }
  }
  std::vector<UltraScalar> c(target->dimension(), UltraScalar::zero(target->field()));
  for (int i = 0; i < x.dimension(); ++i) c[i] = x[i];
  return CDElement(std::move(target), std::move(c));
}

// ------------------------------------------------------ UAlgebraElement

UAlgebraElement::UAlgebraElement(UltraScalar a, UltraScalar b, UltraScalar alpha)
    : a_(std::move(a)), b_(std::move(b)), alpha_(std::move(alpha)) {
  if (!a_.same_field(b_) || !a_.same_field(alpha_)) throw FieldError("mixed fields");
  if (a_.kind() == FieldKind::kLaurent && a_.p() == 2) {
    throw FieldError("characteristic 2 is not supported");
  }
  const FieldSpec f{alpha_.kind(), alpha_.p(), std::max(1, alpha_.precision())};
  if ((UltraScalar::from_integer(4, f) * alpha_ + UltraScalar::one(f)).is_zero()) {
    throw std::invalid_argument("4*alpha + 1 must be nonzero");
  }
}

void UAlgebraElement::require_same_alpha(const UAlgebraElement& o) const {
  if (!(alpha_ == o.alpha_)) throw ParameterMismatch("different alpha");
}

UAlgebraElement UAlgebraElement::operator+(const UAlgebraElement& o) const {
  require_same_alpha(o);
  return UAlgebraElement(a_ + o.a_, b_ + o.b_, alpha_);
}

UAlgebraElement UAlgebraElement::operator*(const UAlgebraElement& o) const {
  require_same_alpha(o);
  // (a + b u)(c + d u) = (ac + alpha bd) + (ad + bc + bd) u.
  UltraScalar bd = b_ * o.b_;
  return UAlgebraElement(a_ * o.a_ + alpha_ * bd, a_ * o.b_ + b_ * o.a_ + bd, alpha_);
}

bool UAlgebraElement::operator==(const UAlgebraElement& o) const {
  return alpha_ == o.alpha_ && a_ == o.a_ && b_ == o.b_;
}

UAlgebraElement UAlgebraElement::conj() const {
  return UAlgebraElement(a_ + b_, -b_, alpha_);
}

UltraScalar UAlgebraElement::trace() const { return a_ + a_ + b_; }

UltraScalar UAlgebraElement::norm_value() const {
  return a_ * a_ + a_ * b_ - alpha_ * b_ * b_;
}

std::string UAlgebraElement::to_string() const {
  return render_scalar(a_) + " + " + render_scalar(b_) + "*u";
}

UAlgebraElement u_mul(const UAlgebraElement& x, const UAlgebraElement& y) { return x * y; }

// --------------------------------------------------------------- render

namespace {

std::optional<std::int64_t> small_integer(const UltraScalar& x, std::int64_t bound) {
  if (x.is_zero()) return 0;
  if (x.kind() == FieldKind::kLaurent) {
    if (x.valuation() != 0) return std::nullopt;
    for (int i = 1; i < x.precision(); ++i) {
      if (x.digits()[i] != 0) return std::nullopt;
    }
    std::int64_t d = x.digits()[0];
    return 2 * d > x.p() ? d - x.p() : d;
  }
  if (x.valuation() < 0) return std::nullopt;
  const int abs = x.absolute_precision();
  __int128 mod = 1, r = 0, pv = 1;
  for (int i = 0; i < abs; ++i) {
    mod *= x.p();
    if (mod > (static_cast<__int128>(1) << 100)) return std::nullopt;
  }
  for (int i = 0; i < x.valuation(); ++i) pv *= x.p();
  __int128 pw = pv;
  for (int i = 0; i < x.precision(); ++i) {
    r += pw * x.digits()[i];
    pw *= x.p();
  }
  // Only trust values well inside the known residue range.
  while (static_cast<__int128>(bound) * bound > mod) bound /= 2;
  if (r <= bound) return static_cast<std::int64_t>(r);
  if (mod - r <= bound) return -static_cast<std::int64_t>(mod - r);
  return std::nullopt;
}

}  // namespace

std::string render_scalar(const UltraScalar& x) {
  if (auto v = small_integer(x, 1000)) return std::to_string(*v);
  if (x.p() <= 36) return x.to_literal();
  return x.to_string();
}

}  // namespace ultrawrap
