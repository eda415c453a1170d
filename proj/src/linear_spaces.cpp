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

#include "ultrawrap/linear_spaces.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ultrawrap::linal {

// ------------------------------------------------------------ FiniteMap

FiniteMap::FiniteMap(int rows, std::vector<int> in_dims, std::vector<UltraScalar> entries)
    : rows_(rows), in_dims_(std::move(in_dims)), entries_(std::move(entries)) {
  if (rows_ < 1 || in_dims_.empty()) throw std::invalid_argument("map needs rows and an input");
  std::size_t size = rows_;
  for (int d : in_dims_) {
    if (d < 1) throw std::invalid_argument("input dimensions must be positive");
    size *= d;
  }
  if (entries_.size() != size) throw std::invalid_argument("entry count does not match the shape");
  for (const auto& e : entries_) {
    if (!e.same_field(entries_[0])) throw FieldError("entries from different fields");
  }
}

FiniteMap FiniteMap::matrix(int rows, int cols, std::vector<UltraScalar> entries) {
  return FiniteMap(rows, {cols}, std::move(entries));
}

FiniteMap FiniteMap::identity(const FieldSpec& f, int n) {
  std::vector<UltraScalar> e(static_cast<std::size_t>(n) * n, UltraScalar::zero(f));
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = UltraScalar::one(f);
  return matrix(n, n, std::move(e));
}

FiniteMap FiniteMap::zero(const FieldSpec& f, int rows, int cols) {
  return matrix(rows, cols, std::vector<UltraScalar>(static_cast<std::size_t>(rows) * cols, UltraScalar::zero(f)));
}

std::size_t FiniteMap::offset(int i, const std::vector<int>& js) const {
  if (static_cast<int>(js.size()) != arity()) throw std::invalid_argument("wrong number of indices");
  if (i < 0 || i >= rows_) throw std::out_of_range("row index");
  std::size_t off = i;
  for (int k = 0; k < arity(); ++k) {
    if (js[k] < 0 || js[k] >= in_dims_[k]) throw std::out_of_range("column index");
    off = off * in_dims_[k] + js[k];
  }
  return off;
}

const UltraScalar& FiniteMap::at(int i, const std::vector<int>& js) const {
  return entries_[offset(i, js)];
}

std::vector<UltraScalar> FiniteMap::apply(const std::vector<std::vector<UltraScalar>>& hs) const {
  if (static_cast<int>(hs.size()) != arity()) throw std::invalid_argument("wrong number of arguments");
  for (int k = 0; k < arity(); ++k) {
    if (static_cast<int>(hs[k].size()) != in_dims_[k]) throw std::invalid_argument("argument has the wrong dimension");
  }
  const FieldSpec f{entries_[0].kind(), entries_[0].p(), 1};
  std::vector<UltraScalar> out(rows_, UltraScalar::zero(f));
  std::size_t per_row = entries_.size() / rows_;
  std::vector<int> js(arity(), 0);
  for (int i = 0; i < rows_; ++i) {
    std::fill(js.begin(), js.end(), 0);
    for (std::size_t c = 0; c < per_row; ++c) {
      const UltraScalar& a = entries_[i * per_row + c];
      if (!a.is_exact_zero()) {
        UltraScalar term = a;
        for (int k = 0; k < arity(); ++k) term = term * hs[k][js[k]];
        out[i] += term;
      }
      for (int k = arity() - 1; k >= 0; --k) {
        if (++js[k] < in_dims_[k]) break;
        js[k] = 0;
      }
    }
  }
  return out;
}

FiniteMap FiniteMap::compose(const FiniteMap& inner) const {
  if (arity() != 1 || inner.arity() != 1) throw std::invalid_argument("composition needs matrices");
  if (cols() != inner.rows()) throw std::invalid_argument("shapes do not compose");
  const FieldSpec f{entries_[0].kind(), entries_[0].p(), 1};
  std::vector<UltraScalar> e;
  for (int i = 0; i < rows(); ++i) {
    for (int j = 0; j < inner.cols(); ++j) {
      UltraScalar s = UltraScalar::zero(f);
      for (int k = 0; k < cols(); ++k) s += at(i, k) * inner.at(k, j);
      e.push_back(s);
    }
  }
  return matrix(rows(), inner.cols(), std::move(e));
}

std::string FiniteMap::to_string() const {
  std::ostringstream os;
  const std::size_t per_row = entries_.size() / rows_;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t c = 0; c < per_row; ++c) os << (c ? ", " : "") << render_scalar(entries_[i * per_row + c]);
  }
  os << "]";
  return os.str();
}

Norm operator_norm(const FiniteMap& a) {
  Norm m = Norm::zero(a.entries()[0].p());
  for (const auto& e : a.entries()) m = max(m, e.norm());
  return m;
}

Norm sup_norm(const std::vector<UltraScalar>& x) {
  if (x.empty()) return Norm::zero(2);
  Norm m = Norm::zero(x[0].p());
  for (const auto& e : x) m = max(m, e.norm());
  return m;
}

Norm sup_norm(const std::vector<CDElement>& x) {
  if (x.empty()) return Norm::zero(2);
  Norm m = Norm::zero(x[0].params().field().p);
  for (const auto& e : x) m = max(m, e.sup_norm());
  return m;
}

// ----------------------------------------------------------- AlgebraMap

namespace {

std::vector<UltraScalar> realify(const std::vector<CDElement>& x) {
  std::vector<UltraScalar> r;
  for (const auto& e : x) r.insert(r.end(), e.coeffs().begin(), e.coeffs().end());
  return r;
}

std::vector<CDElement> unrealify(const CDParamsPtr& params, const std::vector<UltraScalar>& r) {
  const int D = params->dimension();
  std::vector<CDElement> x;
  for (std::size_t j = 0; j < r.size(); j += D) {
    x.emplace_back(params, std::vector<UltraScalar>(r.begin() + j, r.begin() + j + D));
  }
  return x;
}

std::vector<CDElement> zeros(const CDParamsPtr& params, int n) {
  return std::vector<CDElement>(n, CDElement::zero(params));
}

bool same(const std::vector<CDElement>& a, const std::vector<CDElement>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return false;
  }
  return true;
}

}  // namespace

AlgebraMap::AlgebraMap(CDParamsPtr params, int n_in, int n_out, FiniteMap realified)
    : params_(std::move(params)), n_in_(n_in), n_out_(n_out), real_(std::move(realified)) {
  const int D = params_->dimension();
  if (real_.arity() != 1 || real_.rows() != n_out * D || real_.cols() != n_in * D) {
    throw std::invalid_argument("realified matrix has the wrong shape");
  }
}

AlgebraMap AlgebraMap::from_function(
    CDParamsPtr params, int n_in, int n_out,
    const std::function<std::vector<CDElement>(const std::vector<CDElement>&)>& fn) {
  const int D = params->dimension();
  const int cols = n_in * D, rows = n_out * D;
  std::vector<std::vector<UltraScalar>> columns;
  for (int j = 0; j < n_in; ++j) {
    for (int k = 0; k < D; ++k) {
      std::vector<CDElement> x = zeros(params, n_in);
      x[j] = CDElement::generator(params, k);
      std::vector<CDElement> y = fn(x);
      if (static_cast<int>(y.size()) != n_out) throw std::invalid_argument("function has the wrong output size");
      columns.push_back(realify(y));
    }
  }
  std::vector<UltraScalar> e;
  e.reserve(static_cast<std::size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    for (int c = 0; c < cols; ++c) e.push_back(columns[c][i]);
  }
  return AlgebraMap(params, n_in, n_out, FiniteMap::matrix(rows, cols, std::move(e)));
}

AlgebraMap AlgebraMap::identity(CDParamsPtr params, int n) {
  return from_function(params, n, n, [](const std::vector<CDElement>& x) { return x; });
}

AlgebraMap AlgebraMap::left_mul(const CDElement& a, int n) {
  return from_function(a.params_ptr(), n, n, [a](const std::vector<CDElement>& x) {
    std::vector<CDElement> y;
    for (const auto& e : x) y.push_back(a * e);
    return y;
  });
}

AlgebraMap AlgebraMap::right_mul(const CDElement& c, int n) {
  return from_function(c.params_ptr(), n, n, [c](const std::vector<CDElement>& x) {
    std::vector<CDElement> y;
    for (const auto& e : x) y.push_back(e * c);
    return y;
  });
}

AlgebraMap AlgebraMap::from_left_matrix(CDParamsPtr params, int n_out, int n_in,
                                        const std::vector<CDElement>& a) {
  if (static_cast<int>(a.size()) != n_out * n_in) throw std::invalid_argument("matrix has the wrong size");
  return from_function(params, n_in, n_out, [&](const std::vector<CDElement>& x) {
    std::vector<CDElement> y = zeros(params, n_out);
    for (int i = 0; i < n_out; ++i) {
      for (int j = 0; j < n_in; ++j) y[i] = y[i] + a[i * n_in + j] * x[j];
    }
    return y;
  });
}

AlgebraMap AlgebraMap::conjugation(CDParamsPtr params, int n) {
  return from_function(params, n, n, [](const std::vector<CDElement>& x) {
    std::vector<CDElement> y;
    for (const auto& e : x) y.push_back(conj(e));
    return y;
  });
}

std::vector<CDElement> AlgebraMap::apply(const std::vector<CDElement>& x) const {
  if (static_cast<int>(x.size()) != n_in_) throw std::invalid_argument("argument has the wrong dimension");
  for (const auto& e : x) require_same_params(e, CDElement::zero(params_));
  return unrealify(params_, real_.apply(realify(x)));
}

AlgebraMap AlgebraMap::compose(const AlgebraMap& inner) const {
  if (!(*params_ == *inner.params_)) throw ParameterMismatch("maps over different algebras");
  if (inner.n_out_ != n_in_) throw std::invalid_argument("maps do not compose");
  return AlgebraMap(params_, inner.n_in_, n_out_, real_.compose(inner.real_));
}

std::string_view class_name(LinearityClass c) {
  switch (c) {
    case LinearityClass::kQ: return "K_q";
    case LinearityClass::kR: return "K_r";
    case LinearityClass::kL: return "K_l";
  }
  return "?";
}

std::vector<LinearityClass> LinearityReport::classes() const {
  std::vector<LinearityClass> c;
  if (kq) c.push_back(LinearityClass::kQ);
  if (kr) c.push_back(LinearityClass::kR);
  if (kl) c.push_back(LinearityClass::kL);
  return c;
}

std::vector<LinearityClass> LinearityReport::classes_everywhere() const {
  std::vector<LinearityClass> c;
  if (kq) c.push_back(LinearityClass::kQ);
  if (kr_everywhere) c.push_back(LinearityClass::kR);
  if (kl_everywhere) c.push_back(LinearityClass::kL);
  return c;
}

LinearityReport linearity_class(const AlgebraMap& a) {
  const CDParamsPtr& params = a.params();
  const int D = params->dimension();
  LinearityReport r;
  // kq: additive and K-linear by construction (a K-matrix).
  auto check = [&](bool everywhere, bool right, std::optional<LinearityWitness>& witness) {
    for (int j = 0; j < a.n_in(); ++j) {
      for (int k = 0; k < (everywhere ? D : 1); ++k) {
        std::vector<CDElement> x = zeros(params, a.n_in());
        x[j] = CDElement::generator(params, k);
        const std::vector<CDElement> ax = a.apply(x);
        for (int l = 0; l < D; ++l) {
          const CDElement b = CDElement::generator(params, l);
          std::vector<CDElement> xb;
          for (const auto& e : x) xb.push_back(right ? e * b : b * e);
          std::vector<CDElement> lhs = a.apply(xb), rhs;
          for (const auto& e : ax) rhs.push_back(right ? e * b : b * e);
          if (!same(lhs, rhs)) {
            witness = LinearityWitness{x, b, lhs, rhs};
            return false;
          }
        }
      }
    }
    return true;
  };
  r.kr = check(false, true, r.kr_witness);
  r.kl = check(false, false, r.kl_witness);
  r.kr_everywhere = check(true, true, r.kr_everywhere_witness);
  r.kl_everywhere = check(true, false, r.kl_everywhere_witness);
  return r;
}

// ----------------------------------------------------------- L1-L4

namespace {

using Vec = std::vector<CDElement>;

Vec add(const Vec& x, const Vec& y) {
  Vec r;
  for (std::size_t i = 0; i < x.size(); ++i) r.push_back(x[i] + y[i]);
  return r;
}
Vec neg(const Vec& x) {
  Vec r;
  for (const auto& e : x) r.push_back(-e);
  return r;
}
Vec lmul(const CDElement& a, const Vec& x) {
  Vec r;
  for (const auto& e : x) r.push_back(a * e);
  return r;
}
Vec rmul(const Vec& x, const CDElement& a) {
  Vec r;
  for (const auto& e : x) r.push_back(e * a);
  return r;
}
bool is_zero(const Vec& x) {
  for (const auto& e : x) {
    if (!e.is_zero()) return false;
  }
  return true;
}

std::string show(const Vec& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + x[i].to_string();
  return s + ")";
}

UltraScalar random_scalar(std::mt19937_64& rng, const FieldSpec& f) {
  std::uniform_int_distribution<int> digit(0, f.p - 1), coin(0, 7), val(0, 2);
  if (coin(rng) == 0) return UltraScalar::zero(f);
  UltraScalar::Digits d(f.precision);
  d[0] = std::uniform_int_distribution<int>(1, f.p - 1)(rng);
  for (int i = 1; i < f.precision; ++i) d[i] = digit(rng);
  return UltraScalar::from_digits(f.kind, f.p, val(rng), d);
}

CDElement random_element(std::mt19937_64& rng, const CDParamsPtr& params) {
  std::vector<UltraScalar> c;
  for (int i = 0; i < params->dimension(); ++i) c.push_back(random_scalar(rng, params->field()));
  return CDElement(params, std::move(c));
}

struct Recorder {
  AxiomResult& r;
  void operator()(bool ok, const std::string& what) {
    ++r.checks;
    if (!ok && r.holds) {
      r.holds = false;
      r.witness = what;
    }
  }
};

}  // namespace

bool ModuleReport::axioms_hold() const {
  for (const auto& a : axioms) {
    if (!a.holds) return false;
  }
  return true;
}

ModuleReport module_axioms_check(const CDParamsPtr& params, int n, int samples, std::uint64_t seed) {
  if (n < 1 || samples < 1) throw std::invalid_argument("need a positive dimension and sample count");
  std::mt19937_64 rng(seed);
  ModuleReport rep;
  for (const char* name : {"L1", "L2", "L3", "L4"}) rep.axioms.push_back(AxiomResult{name, true, 0, ""});
  rep.associative_everywhere.name = "associative";
  rep.commutative_action.name = "commutative";
  Recorder l1{rep.axioms[0]}, l2{rep.axioms[1]}, l3{rep.axioms[2]}, l4{rep.axioms[3]};
  Recorder assoc{rep.associative_everywhere}, comm{rep.commutative_action};
  const CDElement one = CDElement::one(params);
  for (int s = 0; s < samples; ++s) {
    Vec x, y, z, x0;
    for (int i = 0; i < n; ++i) {
      x.push_back(random_element(rng, params));
      y.push_back(random_element(rng, params));
      z.push_back(random_element(rng, params));
      x0.push_back(CDElement::scalar(params, random_scalar(rng, params->field())));
    }
    const CDElement a = random_element(rng, params), b = random_element(rng, params);
    const std::string tag = "x=" + show(x) + " a=" + a.to_string() + " b=" + b.to_string();

    l1(same(add(x, y), add(y, x)), "x+y != y+x at " + tag);
    l1(same(add(add(x, y), z), add(x, add(y, z))), "(x+y)+z != x+(y+z) at " + tag);
    l1(same(add(x, Vec(n, CDElement::zero(params))), x), "x+0 != x at " + tag);
    l1(is_zero(add(x, neg(x))), "x+(-x) != 0 at " + tag);

    l2(same(lmul(a, add(x, y)), add(lmul(a, x), lmul(a, y))), "a(x+y) != ax+ay at " + tag);
    l2(same(rmul(add(x, y), a), add(rmul(x, a), rmul(y, a))), "(x+y)a != xa+ya at " + tag);

    l3(same(lmul(a + b, x), add(lmul(a, x), lmul(b, x))), "(a+b)x != ax+bx at " + tag);
    l3(same(rmul(x, a + b), add(rmul(x, a), rmul(x, b))), "x(a+b) != xa+xb at " + tag);
    l3(same(lmul(one, x), x) && same(rmul(x, one), x), "1x != x at " + tag);

    const std::string tag0 = "x0=" + show(x0) + " a=" + a.to_string() + " b=" + b.to_string();
    l4(same(lmul(a * b, x0), lmul(a, lmul(b, x0))), "(ab)x0 != a(bx0) at " + tag0);
    l4(same(rmul(x0, a * b), rmul(rmul(x0, a), b)), "x0(ab) != (x0a)b at " + tag0);

    assoc(same(lmul(a * b, x), lmul(a, lmul(b, x))), "(ab)x != a(bx) at " + tag);
    assoc(same(rmul(x, a * b), rmul(rmul(x, a), b)), "x(ab) != (xa)b at " + tag);
    comm(same(lmul(a, x), rmul(x, a)), "ax != xa at " + tag);
  }
  return rep;
}

}  // namespace ultrawrap::linal
