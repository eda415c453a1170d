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

#include "ultrawrap/quadratic_forms.hpp"

#include <algorithm>
#include <sstream>

namespace ultrawrap {

DiagonalForm::DiagonalForm(FieldSpec f, std::vector<UltraScalar> c)
    : field(f), coeffs(std::move(c)) {
  for (const auto& x : coeffs) {
    if (x.kind() != field.kind || x.p() != field.p) throw FieldError("coefficient from another field");
    if (x.is_zero()) throw std::invalid_argument("diagonal form coefficients must be nonzero");
  }
}

DiagonalForm DiagonalForm::of_integers(const FieldSpec& f, const std::vector<std::int64_t>& c) {
  std::vector<UltraScalar> xs;
  for (auto v : c) xs.push_back(UltraScalar::from_integer(v, f));
  return DiagonalForm(f, std::move(xs));
}

UltraScalar DiagonalForm::evaluate(const std::vector<UltraScalar>& x) const {
  if (x.size() != coeffs.size()) throw std::invalid_argument("point has the wrong dimension");
  UltraScalar s = UltraScalar::zero(field);
  for (std::size_t j = 0; j < x.size(); ++j) s += coeffs[j] * x[j] * x[j];
  return s;
}

std::string DiagonalForm::to_string() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t j = 0; j < coeffs.size(); ++j) os << (j ? "," : "") << render_scalar(coeffs[j]);
  os << ">";
  return os.str();
}

DiagonalForm norm_form_of(const CDParams& params) {
  std::vector<UltraScalar> c;
  for (int j = 0; j < params.dimension(); ++j) c.push_back(params.square_coefficient(j));
  return DiagonalForm(params.field(), std::move(c));
}

int exact_search_depth(int p) { return p == 2 ? 4 : 3; }

namespace {

using i128 = __int128;

// The form rescaled by x_j = p^(-shift_j) y_j so that every coefficient has
// valuation 0 or 1, with coefficients reduced modulo p^M.
struct Reduced {
  int p = 0;
  int m = 0;
  int M = 0;
  int v2 = 0;
  i128 P = 1;
  std::vector<i128> c;
  std::vector<int> e;
  std::vector<int> shift;
};

Reduced reduce(const DiagonalForm& form, int M) {
  Reduced r;
  r.p = form.field.p;
  r.m = form.dimension();
  r.M = M;
  r.v2 = r.p == 2 ? 1 : 0;
  for (int i = 0; i < M; ++i) {
    r.P *= r.p;
    if (r.P > (static_cast<i128>(1) << 62)) {
      throw std::invalid_argument("search depth too large for p = " + std::to_string(r.p));
    }
  }
  for (const auto& cj : form.coeffs) {
    const int w = cj.valuation();
    const int s = w >= 0 ? w / 2 : -((-w + 1) / 2);
    const int e = w - 2 * s;
    i128 pe = e == 1 ? r.p : 1;
    r.c.push_back(pe * cj.unit_residue(M - e) % r.P);
    r.e.push_back(e);
    r.shift.push_back(s);
  }
  return r;
}

int valuation_mod(i128 x, const Reduced& r) {
  x %= r.P;
  if (x < 0) x += r.P;
  if (x == 0) return r.M;
  int v = 0;
  while (x % r.p == 0) {
    x /= r.p;
    ++v;
  }
  return v;
}

struct Found {
  std::vector<i128> y;
  int level;
  int index;
  int derivative_valuation;
  int residual_valuation;
};

class Searcher {
 public:
  Searcher(const Reduced& r, int limit) : r_(r), limit_(limit), y_(r.m, 0) {}

  bool run() {
    // Level 1: primitive residue vectors by increasing max residue; ties in
    // colex order (last coordinate most significant).
    for (int R = 1; R < r_.p; ++R) {
      std::vector<int> d(r_.m, 0);
      while (true) {
        if (*std::max_element(d.begin(), d.end()) == R) {
          for (int i = 0; i < r_.m; ++i) y_[i] = d[i];
          if (visit(1)) return true;
        }
        int i = 0;
        while (i < r_.m && d[i] == R) d[i++] = 0;
        if (i == r_.m) break;
        ++d[i];
      }
    }
    return false;
  }

  long long nodes() const { return nodes_; }
  const std::optional<Found>& found() const { return found_; }

 private:
  bool visit(int level) {
    ++nodes_;
    i128 F = 0;
    for (int i = 0; i < r_.m; ++i) F = (F + r_.c[i] * (y_[i] * y_[i] % r_.P)) % r_.P;
    const int vF = valuation_mod(F, r_);
    int best = -1, best_e = 0;
    for (int j = 0; j < r_.m; ++j) {
      if (y_[j] % r_.p == 0) continue;
      const int ep = r_.v2 + r_.e[j];
      if (vF > 2 * ep && (best < 0 || ep <= best_e)) {
        best = j;
        best_e = ep;
      }
    }
    if (best >= 0) {
      found_ = Found{y_, level, best, best_e, vF};
      return true;
    }
    if (level >= limit_ || vF < level) return false;
    i128 scale = 1;
    for (int i = 0; i < level; ++i) scale *= r_.p;
    std::vector<i128> base = y_;
    std::vector<int> d(r_.m, 0);
    while (true) {
      for (int i = 0; i < r_.m; ++i) y_[i] = base[i] + scale * d[i];
      if (visit(level + 1)) return true;
      int i = 0;
      while (i < r_.m && d[i] == r_.p - 1) d[i++] = 0;
      if (i == r_.m) break;
      ++d[i];
    }
    y_ = base;
    return false;
  }

  const Reduced& r_;
  int limit_;
  std::vector<i128> y_;
  long long nodes_ = 0;
  std::optional<Found> found_;
};

IsotropyWitness lift(const DiagonalForm& form, const Reduced& r, const Found& f) {
  const int p = r.p;
  const int W = form.field.precision + 4;
  const FieldSpec wf{FieldKind::kPadic, p, W};
  std::vector<UltraScalar> c, y;
  for (int i = 0; i < r.m; ++i) {
    c.push_back(form.coeffs[i] * UltraScalar::uniformizer_power(wf, -2 * r.shift[i]));
    y.push_back(UltraScalar::from_integer(static_cast<std::int64_t>(f.y[i]), wf));
  }
  const int j = f.index;
  for (int iter = 0;; ++iter) {
    UltraScalar F = UltraScalar::zero(wf);
    for (int i = 0; i < r.m; ++i) F += c[i] * y[i] * y[i];
    if (F.is_zero()) break;
    if (iter > 200) throw PrecisionLoss("Hensel lift did not settle", F.absolute_precision(), W);
    UltraScalar deriv = UltraScalar::from_integer(2, wf) * c[j] * y[j];
    y[j] = y[j] - F / deriv;
  }
  std::vector<UltraScalar> x;
  for (int i = 0; i < r.m; ++i) x.push_back(y[i] * UltraScalar::uniformizer_power(wf, -r.shift[i]));
  int vmin = UltraScalar::kExact;
  for (const auto& xi : x) vmin = std::min(vmin, xi.valuation());
  for (auto& xi : x) xi = xi * UltraScalar::uniformizer_power(wf, -vmin);
  int lead = 0;
  while (x[lead].valuation() != 0) ++lead;
  const UltraScalar inv = x[lead].inverse();
  for (auto& xi : x) xi = xi * inv;
  if (!form.evaluate(x).is_zero()) throw std::logic_error("lifted witness does not vanish");
  IsotropyWitness w;
  w.x = std::move(x);
  for (auto v : f.y) w.residue_point.push_back(static_cast<std::int64_t>(v));
  w.residue_level = f.level;
  w.hensel_index = f.index;
  w.derivative_valuation = f.derivative_valuation;
  w.residual_valuation = f.residual_valuation;
  return w;
}

}  // namespace

IsotropySearch isotropy_search(const DiagonalForm& form, int search_depth) {
  if (form.field.kind != FieldKind::kPadic) {
    throw FieldError("isotropy search is implemented over Q_p only");
  }
  if (search_depth < 1) throw std::invalid_argument("search depth must be positive");
  const int p = form.field.p;
  IsotropySearch out;
  out.requested_depth = search_depth;
  out.effective_depth = p == 2 ? std::max(search_depth, 4) : search_depth;
  out.exhaustive = out.effective_depth >= exact_search_depth(p);
  if (form.dimension() == 0) return out;
  const int v2 = p == 2 ? 1 : 0;
  const int M = std::max(out.effective_depth, 2 * (v2 + 1) + 1);
  Reduced r = reduce(form, M);
  for (int limit = 1; limit <= out.effective_depth; ++limit) {
    Searcher s(r, limit);
    const bool hit = s.run();
    out.nodes += s.nodes();
    if (hit) {
      out.witness = lift(form, r, *s.found());
      break;
    }
  }
  return out;
}

std::optional<IsotropyWitness> is_isotropic(const DiagonalForm& form, int search_depth) {
  return isotropy_search(form, search_depth).witness;
}

namespace {

int legendre(std::int64_t a, std::int64_t p) {
  a %= p;
  if (a < 0) a += p;
  std::int64_t r = 1, b = a;
  for (std::int64_t e = (p - 1) / 2; e > 0; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

int hilbert_symbol(const UltraScalar& a, const UltraScalar& b) {
  if (!a.same_field(b)) throw FieldError("Hilbert symbol of elements from different fields");
  if (a.kind() != FieldKind::kPadic) throw FieldError("Hilbert symbol is implemented over Q_p only");
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("Hilbert symbol needs nonzero arguments");
  const int p = a.p();
  const int alpha = a.valuation(), beta = b.valuation();
  if (p != 2) {
    const std::int64_t u = a.unit_residue(1), v = b.unit_residue(1);
    int s = ((static_cast<long long>(alpha) * beta * ((p - 1) / 2)) & 1) ? -1 : 1;
    if (beta & 1) s *= legendre(u, p);
    if (alpha & 1) s *= legendre(v, p);
    return s;
  }
  const std::int64_t u = a.unit_residue(3), v = b.unit_residue(3);
  auto eps = [](std::int64_t w) { return ((w - 1) / 2) & 1; };
  auto omega = [](std::int64_t w) { return ((w * w - 1) / 8) & 1; };
  const std::int64_t e = eps(u) * eps(v) + (alpha & 1) * omega(v) + (beta & 1) * omega(u);
  return (e & 1) ? -1 : 1;
}

DivisionVerdict has_division_property(const CDParamsPtr& params, int search_depth) {
  const int p = params->field().p;
  DivisionVerdict out;
  const int depth = search_depth <= 0 ? exact_search_depth(p) : search_depth;
  IsotropySearch s = isotropy_search(norm_form_of(*params), depth);
  out.exhaustive = s.exhaustive;
  out.depth = s.effective_depth;
  if (!s.witness) return out;
  CDElement b(params, s.witness->x);
  CDElement bc = conj(b);
  if (!cd_mul(b, bc).is_zero()) throw std::logic_error("witness pair does not multiply to zero");
  out.division = false;
  out.a = b;
  out.b = bc;
  out.witness = s.witness;
  return out;
}

}  // namespace ultrawrap
