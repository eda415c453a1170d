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

// Difference quotients of functions f: U -> Y with U a ball in K and Y
// either K (UltraScalar) or an algebra A_r (CDElement).
//
//   Phi^1 f(x; v; t)            = [f(x + t v) - f(x)] / t
//   Phi^n f(x; v_1..v_n; t_1..t_n) = Phi^1 of Phi^(n-1) f in x, along v_n, t_n
//   f^[n]                       = (f^[n-1])^[1], differencing every argument
//
// f^[n] acts on flat points of length 2^(n+1) - 1 laid out as
// (X_{n-1}, V_{n-1}, tau). Polynomials are handled symbolically; every other
// kind is evaluated numerically and extended to t = 0 by probing t = p^m.

#ifndef ULTRAWRAP_CALCULUS_HPP_
#define ULTRAWRAP_CALCULUS_HPP_

#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "ultrawrap/cayley_dickson.hpp"
#include "ultrawrap/padic.hpp"

namespace ultrawrap::calc {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonConvergent : public ArithmeticError {
 public:
  using ArithmeticError::ArithmeticError;
};

// {x : v(x - center) >= radius}, or the whole field.
struct Ball {
  std::optional<UltraScalar> center;
  int radius = 0;

  static Ball whole() { return Ball{}; }
  static Ball around(const UltraScalar& c, int radius) { return Ball{c, radius}; }
  bool contains(const UltraScalar& x) const;
};

// Digits of x below p^depth, as an exact value. Needs x known mod p^depth.
UltraScalar truncate(const UltraScalar& x, int depth);

// ------------------------------------------------------------ values

namespace value {

inline UltraScalar scaled(const UltraScalar& y, const UltraScalar& c) { return y * c; }
inline CDElement scaled(const CDElement& y, const UltraScalar& c) { return y * c; }
inline UltraScalar divided(const UltraScalar& y, const UltraScalar& c) { return y / c; }
inline CDElement divided(const CDElement& y, const UltraScalar& c) { return y / c; }
inline bool is_zero(const UltraScalar& y) { return y.is_zero(); }
inline bool is_zero(const CDElement& y) { return y.is_zero(); }
inline bool agree(const UltraScalar& a, const UltraScalar& b, int k) {
  return a.indistinguishable_at(b, k);
}
inline bool agree(const CDElement& a, const CDElement& b, int k) {
  for (int i = 0; i < a.dimension(); ++i) {
    if (!a[i].indistinguishable_at(b[i], k)) return false;
  }
  return true;
}
// Certified valuation of a - b (absolute precision when it is zero).
inline int difference_valuation(const UltraScalar& a, const UltraScalar& b) {
  UltraScalar d = a - b;
  return d.is_zero() ? d.absolute_precision() : d.valuation();
}
inline int difference_valuation(const CDElement& a, const CDElement& b) {
  int v = UltraScalar::kExact;
  for (int i = 0; i < a.dimension(); ++i) v = std::min(v, difference_valuation(a[i], b[i]));
  return v;
}
inline int absolute_precision(const UltraScalar& y) { return y.absolute_precision(); }
inline int absolute_precision(const CDElement& y) {
  int a = UltraScalar::kExact;
  for (int i = 0; i < y.dimension(); ++i) a = std::min(a, y[i].absolute_precision());
  return a;
}
inline FieldSpec field_of(const UltraScalar& y) {
  return FieldSpec{y.kind(), y.p(), 64};
}
inline FieldSpec field_of(const CDElement& y) {
  FieldSpec f = y.params().field();
  f.precision = 64;
  return f;
}
template <class Y>
Y times_integer(const Y& y, std::int64_t n) {
  return scaled(y, UltraScalar::from_integer(n, field_of(y)));
}
// Treats the stored digits as exact and extends them to k digits.
inline UltraScalar padded(const UltraScalar& y, int k) { return y.padded(k); }
inline CDElement padded(const CDElement& y, int k) {
  std::vector<UltraScalar> c;
  for (const auto& a : y.coeffs()) c.push_back(a.padded(k));
  return CDElement(y.params_ptr(), std::move(c));
}
inline std::string render(const UltraScalar& y) { return y.to_string(); }
inline std::string render(const CDElement& y) { return y.to_string(); }

}  // namespace value

// ----------------------------------------------------------- functions

enum class FnKind { kPolynomial, kLocallyConstant, kBlackBox };

// Only callables K -> Y are accepted; a function into another set (for
// example x -> |x| as a real number) does not satisfy this.
template <class F, class Y>
concept FieldValued = std::is_invocable_v<const F&, const UltraScalar&> &&
                      std::same_as<std::remove_cvref_t<std::invoke_result_t<const F&, const UltraScalar&>>, Y>;

template <class Y>
class ScalarFn {
 public:
  // f(x) = sum coeffs[k] x^k.
  static ScalarFn polynomial(std::vector<Y> coeffs, Ball domain = Ball::whole(),
                             std::string name = "polynomial") {
    if (coeffs.empty()) throw std::invalid_argument("polynomial needs coefficients");
    ScalarFn f(FnKind::kPolynomial, std::move(domain), std::move(name));
    f.coeffs_ = std::move(coeffs);
    return f;
  }

  // f(x) = g(truncate(x, depth)): constant on balls of radius p^-depth.
  // The digits g returns are taken as exact and padded to the input's.
  template <class G>
    requires FieldValued<G, Y>
  static ScalarFn locally_constant(int depth, G g, Ball domain = Ball::whole(),
                                   std::string name = "locally-constant") {
    ScalarFn f(FnKind::kLocallyConstant, std::move(domain), std::move(name));
    f.depth_ = depth;
    f.eval_ = [depth, g = std::move(g)](const UltraScalar& x) {
      return value::padded(g(truncate(x, depth)), std::max(1, x.precision()));
    };
    return f;
  }

  template <class G>
    requires FieldValued<G, Y>
  static ScalarFn black_box(G g, Ball domain = Ball::whole(), std::string name = "black-box") {
    ScalarFn f(FnKind::kBlackBox, std::move(domain), std::move(name));
    f.eval_ = std::move(g);
    return f;
  }

  FnKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Ball& domain() const { return domain_; }
  const std::vector<Y>& coefficients() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int depth() const { return depth_; }

  Y operator()(const UltraScalar& x) const {
    if (!domain_.contains(x)) throw DomainError("point outside the domain ball");
    ++*evaluations_;
    if (kind_ == FnKind::kPolynomial) {
      Y r = coeffs_.back();
      for (int k = degree() - 1; k >= 0; --k) r = value::scaled(r, x) + coeffs_[k];
      return r;
    }
    return eval_(x);
  }

  long long evaluations() const { return *evaluations_; }
  void reset_evaluations() const { *evaluations_ = 0; }

 private:
  ScalarFn(FnKind kind, Ball domain, std::string name)
      : kind_(kind), domain_(std::move(domain)), name_(std::move(name)) {}

  FnKind kind_;
  Ball domain_;
  std::string name_;
  std::vector<Y> coeffs_;
  int depth_ = 0;
  std::function<Y(const UltraScalar&)> eval_;
  std::shared_ptr<long long> evaluations_ = std::make_shared<long long>(0);
};

// --------------------------------------------------- symbolic quotients

// Multivariate polynomial with coefficients in Y.
template <class Y>
class MPoly {
 public:
  using Exponents = std::vector<int>;

  explicit MPoly(int variables) : variables_(variables) {}

  int variables() const { return variables_; }
  const std::map<Exponents, Y>& terms() const { return terms_; }

  void add(const Exponents& e, const Y& c) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second = it->second + c;
    }
  }

  // Value at the given point; variables listed in `zeroed` are set to 0.
  Y evaluate(const std::vector<UltraScalar>& point, const std::vector<bool>& zeroed = {}) const {
    if (static_cast<int>(point.size()) != variables_) throw std::invalid_argument("wrong arity");
    std::optional<Y> sum;
    for (const auto& [e, c] : terms_) {
      bool vanishes = false;
      for (int i = 0; i < variables_ && !zeroed.empty(); ++i) vanishes |= zeroed[i] && e[i] > 0;
      if (vanishes) continue;
      Y term = c;
      for (int i = 0; i < variables_; ++i) {
        if (e[i] > 0 && !(i < static_cast<int>(zeroed.size()) && zeroed[i])) {
          term = value::scaled(term, point[i].pow(e[i]));
        }
      }
      sum = sum ? *sum + term : term;
    }
    if (!sum) return value::times_integer(terms_.begin()->second, 0);
    return *sum;
  }

 private:
  int variables_;
  std::map<Exponents, Y> terms_;
};

inline std::int64_t binomial(int n, int k) {
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Phi^n of sum a_k x^k over variables (x, v_1..v_n, t_1..t_n).
template <class Y>
MPoly<Y> phi_symbolic(const std::vector<Y>& coeffs, int n) {
  const int nv = 1 + 2 * n;
  MPoly<Y> p(nv);
  for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
    std::vector<int> e(nv, 0);
    e[0] = k;
    p.add(e, coeffs[k]);
  }
  for (int j = 1; j <= n; ++j) {
    MPoly<Y> next(nv);
    for (const auto& [e, c] : p.terms()) {
      const int k = e[0];
      for (int i = 1; i <= k; ++i) {
        std::vector<int> e2 = e;
        e2[0] = k - i;
        e2[j] += i;
        e2[n + j] += i - 1;
        next.add(e2, value::times_integer(c, binomial(k, i)));
      }
    }
    if (next.terms().empty()) next.add(std::vector<int>(nv, 0), value::times_integer(coeffs[0], 0));
    p = std::move(next);
  }
  return p;
}

// f^[n] of sum a_k x^k over flat points of length 2^(n+1) - 1.
template <class Y>
MPoly<Y> upsilon_symbolic(const std::vector<Y>& coeffs, int n) {
  MPoly<Y> p(1);
  for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) p.add({k}, coeffs[k]);
  for (int level = 1; level <= n; ++level) {
    const int L = p.variables();
    MPoly<Y> next(2 * L + 1);
    for (const auto& [e, c] : p.terms()) {
      std::vector<int> j(L, 0);
      while (true) {
        int i = 0;
        while (i < L && j[i] == e[i]) j[i++] = 0;
        if (i == L) break;
        ++j[i];
        std::vector<int> e2(2 * L + 1, 0);
        std::int64_t mult = 1;
        int total = 0;
        for (int a = 0; a < L; ++a) {
          e2[a] = e[a] - j[a];
          e2[L + a] = j[a];
          total += j[a];
          mult *= binomial(e[a], j[a]);
        }
        e2[2 * L] = total - 1;
        next.add(e2, value::times_integer(c, mult));
      }
    }
    if (next.terms().empty()) {
      next.add(std::vector<int>(2 * L + 1, 0), value::times_integer(coeffs[0], 0));
    }
    p = std::move(next);
  }
  return p;
}

// ------------------------------------------------------ numeric quotients

struct QuotientPoint {
  UltraScalar x;
  std::vector<UltraScalar> v;
  std::vector<UltraScalar> t;
  int order() const { return static_cast<int>(v.size()); }
};

// Throws DomainError unless every t_j is nonzero and the chain
// x, x + t_1 v_1, ..., x + t_1 v_1 + ... + t_n v_n lies in the ball.
void validate(const QuotientPoint& q, const Ball& domain);

template <class Y>
Y phi_numeric(const ScalarFn<Y>& f, const UltraScalar& x, const std::vector<UltraScalar>& v,
              const std::vector<UltraScalar>& t, int n) {
  if (n == 0) return f(x);
  if (t[n - 1].is_zero()) throw DomainError("increment t is zero");
  Y a = phi_numeric(f, x + t[n - 1] * v[n - 1], v, t, n - 1);
  Y b = phi_numeric(f, x, v, t, n - 1);
  return value::divided(a - b, t[n - 1]);
}

template <class Y>
Y phi_n(const ScalarFn<Y>& f, const QuotientPoint& q) {
  if (q.v.size() != q.t.size() || q.v.empty()) throw std::invalid_argument("bad quotient point");
  validate(q, f.domain());
  if (f.kind() == FnKind::kPolynomial) {
    std::vector<UltraScalar> point{q.x};
    point.insert(point.end(), q.v.begin(), q.v.end());
    point.insert(point.end(), q.t.begin(), q.t.end());
    return phi_symbolic(f.coefficients(), q.order()).evaluate(point);
  }
  return phi_numeric(f, q.x, q.v, q.t, q.order());
}

template <class Y>
Y phi1(const ScalarFn<Y>& f, const UltraScalar& x, const UltraScalar& v, const UltraScalar& t) {
  return phi_n(f, QuotientPoint{x, {v}, {t}});
}

inline int flat_length(int n) { return (1 << (n + 1)) - 1; }

// Positions of the increment slots of a flat point of order n.
std::vector<int> increment_slots(int n);

template <class Y>
Y upsilon_numeric(const ScalarFn<Y>& f, const std::vector<UltraScalar>& X, int n) {
  if (n == 0) return f(X[0]);
  const int L = flat_length(n - 1);
  const UltraScalar& tau = X[2 * L];
  if (tau.is_zero()) throw DomainError("increment slot is zero");
  std::vector<UltraScalar> base(X.begin(), X.begin() + L), shifted(L);
  for (int i = 0; i < L; ++i) shifted[i] = X[i] + tau * X[L + i];
  return value::divided(upsilon_numeric(f, shifted, n - 1) - upsilon_numeric(f, base, n - 1), tau);
}

template <class Y>
Y upsilon_n(const ScalarFn<Y>& f, const std::vector<UltraScalar>& X, int n) {
  if (n < 1 || static_cast<int>(X.size()) != flat_length(n)) {
    throw std::invalid_argument("flat point has the wrong length");
  }
  if (f.kind() == FnKind::kPolynomial) {
    // Still enforce the increment slots of every level.
    std::vector<int> slots = increment_slots(n);
    for (int s : slots) {
      if (X[s].is_zero()) throw DomainError("increment slot is zero");
    }
    return upsilon_symbolic(f.coefficients(), n).evaluate(X);
  }
  return upsilon_numeric(f, X, n);
}

// ------------------------------------------------------ extension at 0

struct ExtensionOptions {
  int m0 = 1;
  int m1 = -1;      // default: target + 2
  int target = -1;  // default: precision - 2
};

template <class Y>
struct ExtensionReport {
  bool converged = false;
  bool exact = false;  // symbolic, no probing
  std::optional<Y> limit;
  int target = 0;
  // All probes with m >= cutoff agree with the limit to valuation >= s.
  int stabilization = 0;
  int cutoff = 0;
  std::vector<int> schedule;
  std::vector<Y> probes;
};

namespace detail {

inline int default_target(int precision, const ExtensionOptions& o) {
  return o.target >= 0 ? o.target : std::max(1, precision - 2);
}

template <class Y>
void settle(ExtensionReport<Y>& r) {
  if (r.probes.empty()) return;
  const Y& last = r.probes.back();
  std::size_t start = r.probes.size() - 1;
  int s = UltraScalar::kExact;
  while (start > 0) {
    const int v = value::difference_valuation(r.probes[start - 1], last);
    if (v < r.target) break;
    --start;
    s = std::min(s, v);
  }
  r.limit = last;
  // Two equal neighbours can be a coincidence; ask for three.
  if (r.probes.size() - start >= 3) {
    r.converged = true;
    r.cutoff = r.schedule[start];
    r.stabilization = s;
  }
}

// Runs probe(W, m) for m = m0..m1 at working precision W and settles. The
// precision is raised when the probes carry too few digits for the target.
template <class Y, class Probe>
void run_probes(ExtensionReport<Y>& r, int m0, int m1, int base, int extra, const Probe& probe) {
  for (int attempt = 0; attempt < 4; ++attempt, extra *= 2) {
    r.probes.clear();
    r.schedule.clear();
    const int W = base + extra;
    for (int m = m0; m <= m1; ++m) {
      try {
        r.probes.push_back(probe(W, m));
        r.schedule.push_back(m);
      } catch (const DomainError&) {
        // Increment too large for the domain ball; smaller ones follow.
      }
    }
    settle(r);
    if (r.converged || r.probes.empty() ||
        value::absolute_precision(r.probes.back()) >= r.target + 2) {
      return;
    }
  }
}

// Default last exponent: the target plus room for negative valuations.
inline int default_m1(int target, int n, const std::vector<UltraScalar>& pts) {
  int spread = 0;
  for (const auto& c : pts) {
    if (!c.is_zero()) spread = std::max(spread, -c.valuation());
  }
  return target + 2 + (n + 1) * spread;
}

inline int working_precision(const UltraScalar& x, const std::vector<UltraScalar>& vs, int extra) {
  int w = std::max(1, x.precision());
  for (const auto& v : vs) w = std::max(w, v.precision());
  return w + extra;
}

}  // namespace detail

// Probes Phi^n f(x; vs; p^m, ..., p^m) for m = m0..m1.
template <class Y>
ExtensionReport<Y> extend_at_zero(const ScalarFn<Y>& f, const UltraScalar& x,
                                  const std::vector<UltraScalar>& vs,
                                  ExtensionOptions o = {}) {
  const int n = static_cast<int>(vs.size());
  if (n < 1) throw std::invalid_argument("order must be positive");
  ExtensionReport<Y> r;
  r.target = detail::default_target(detail::working_precision(x, vs, 0), o);
  if (f.kind() == FnKind::kPolynomial) {
    std::vector<UltraScalar> point{x};
    point.insert(point.end(), vs.begin(), vs.end());
    std::vector<bool> zeroed(1 + 2 * n, false);
    for (int j = 0; j < n; ++j) {
      point.push_back(UltraScalar::one(FieldSpec{x.kind(), x.p(), 1}));
      zeroed[1 + n + j] = true;
    }
    r.limit = phi_symbolic(f.coefficients(), n).evaluate(point, zeroed);
    r.converged = true;
    r.exact = true;
    r.stabilization = UltraScalar::kExact;
    return r;
  }
  std::vector<UltraScalar> pts{x};
  pts.insert(pts.end(), vs.begin(), vs.end());
  const int m1 = o.m1 >= 0 ? o.m1 : detail::default_m1(r.target, n, pts);
  detail::run_probes(r, o.m0, m1, detail::working_precision(x, vs, 0), n * m1 + 2,
                     [&](int W, int m) {
                       const FieldSpec wf{x.kind(), x.p(), W};
                       std::vector<UltraScalar> vw;
                       for (const auto& v : vs) vw.push_back(v.padded(W));
                       std::vector<UltraScalar> t(n, UltraScalar::uniformizer_power(wf, m));
                       return phi_numeric(f, x.padded(W), vw, t, n);
                     });
  return r;
}

// Probes f^[n] with every increment slot set to p^m.
template <class Y>
ExtensionReport<Y> extend_upsilon_at_zero(const ScalarFn<Y>& f, std::vector<UltraScalar> X, int n,
                                          ExtensionOptions o = {}) {
  if (n < 1 || static_cast<int>(X.size()) != flat_length(n)) {
    throw std::invalid_argument("flat point has the wrong length");
  }
  const std::vector<int> slots = increment_slots(n);
  ExtensionReport<Y> r;
  int base_prec = 1;
  for (const auto& c : X) base_prec = std::max(base_prec, c.precision());
  r.target = detail::default_target(base_prec, o);
  if (f.kind() == FnKind::kPolynomial) {
    std::vector<bool> zeroed(X.size(), false);
    for (int s : slots) {
      zeroed[s] = true;
      X[s] = UltraScalar::one(FieldSpec{X[0].kind(), X[0].p(), 1});
    }
    r.limit = upsilon_symbolic(f.coefficients(), n).evaluate(X, zeroed);
    r.converged = true;
    r.exact = true;
    r.stabilization = UltraScalar::kExact;
    return r;
  }
  const int m1 = o.m1 >= 0 ? o.m1 : detail::default_m1(r.target, n, X);
  detail::run_probes(r, o.m0, m1, base_prec, n * m1 + 2, [&](int W, int m) {
    const FieldSpec wf{X[0].kind(), X[0].p(), W};
    std::vector<UltraScalar> Xw(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) Xw[i] = X[i].padded(W);
    for (int s : slots) Xw[s] = UltraScalar::uniformizer_power(wf, m);
    return upsilon_numeric(f, Xw, n);
  });
  return r;
}

// d^n f(x).(v_1..v_n) = n! * limit of Phi^n f at t = 0.
template <class Y>
Y differential_n(const ScalarFn<Y>& f, const UltraScalar& x, const std::vector<UltraScalar>& vs,
                 ExtensionOptions o = {}) {
  ExtensionReport<Y> r = extend_at_zero(f, x, vs, o);
  if (!r.converged) {
    throw NonConvergent("difference quotient of order " + std::to_string(vs.size()) +
                        " does not settle at the probed increments");
  }
  std::int64_t fact = 1;
  for (std::size_t k = 2; k <= vs.size(); ++k) fact *= static_cast<std::int64_t>(k);
  return value::times_integer(*r.limit, fact);
}

// ----------------------------------------------------------- class check

enum class Flavor { kPartial, kFull };  // C^n via Phi, C^[n] via f^[n]
enum class Verdict { kMember, kNonMember, kInconclusive };

std::string_view verdict_name(Verdict v);

struct SampleSpec {
  int count = 6;
  std::uint64_t seed = 1;
  int precision = 8;
  int vmin = 0;  // valuation range of sampled points and directions
  int vmax = 2;
  long long budget = 2'000'000;  // function evaluations
  // A black box whose sampled quotients all settle is reported as
  // inconclusive unless this is set.
  bool trust_samples = false;
};

struct ClassWitness {
  int order = 0;
  std::vector<UltraScalar> point;  // x then directions, or a flat point
};

struct ClassVerdict {
  Verdict verdict = Verdict::kInconclusive;
  bool exact = false;
  std::optional<ClassWitness> witness;
  std::string reason;
};

namespace detail {

inline UltraScalar sample_scalar(std::mt19937_64& rng, const FieldSpec& f, int vmin, int vmax) {
  UltraScalar::Digits d(f.precision);
  d[0] = std::uniform_int_distribution<int>(1, f.p - 1)(rng);
  for (int i = 1; i < f.precision; ++i) d[i] = std::uniform_int_distribution<int>(0, f.p - 1)(rng);
  return UltraScalar::from_digits(f.kind, f.p, std::uniform_int_distribution<int>(vmin, vmax)(rng), d);
}

inline UltraScalar sample_point(std::mt19937_64& rng, const FieldSpec& f, const Ball& ball,
                                const SampleSpec& spec) {
  if (!ball.center) return sample_scalar(rng, f, spec.vmin, spec.vmax);
  return *ball.center + sample_scalar(rng, f, ball.radius, ball.radius + 2);
}

}  // namespace detail

// Desk-scale membership in C^n (Phi flavor) or C^[n] (f^[n] flavor): every
// order k = 1..n must extend to t = 0 at every sampled point. Polynomials
// are members exactly; locally constant functions are probed and must
// extend to 0.
template <class Y>
ClassVerdict class_check(const ScalarFn<Y>& f, int n, Flavor flavor, const FieldSpec& field,
                         SampleSpec spec = {}, ExtensionOptions o = {}) {
  ClassVerdict out;
  if (f.kind() == FnKind::kPolynomial) {
    out.verdict = Verdict::kMember;
    out.exact = true;
    out.reason = "closed-form quotients are polynomial in the increments";
    return out;
  }
  std::mt19937_64 rng(spec.seed);
  FieldSpec sf = field;
  sf.precision = spec.precision;
  f.reset_evaluations();
  try {
    for (int sample = 0; sample < spec.count; ++sample) {
      for (int k = 1; k <= n; ++k) {
        std::vector<UltraScalar> point;
        ExtensionReport<Y> r;
        if (flavor == Flavor::kPartial) {
          UltraScalar x = detail::sample_point(rng, sf, f.domain(), spec);
          std::vector<UltraScalar> vs;
          for (int j = 0; j < k; ++j) vs.push_back(detail::sample_scalar(rng, sf, spec.vmin, spec.vmax));
          point.push_back(x);
          point.insert(point.end(), vs.begin(), vs.end());
          r = extend_at_zero(f, x, vs, o);
        } else {
          std::vector<UltraScalar> X(flat_length(k));
          X[0] = detail::sample_point(rng, sf, f.domain(), spec);
          for (int i = 1; i < flat_length(k); ++i) X[i] = detail::sample_scalar(rng, sf, spec.vmin, spec.vmax);
          point = X;
          r = extend_upsilon_at_zero(f, X, k, o);
        }
        if (f.evaluations() > spec.budget) {
          out.verdict = Verdict::kInconclusive;
          out.reason = "evaluation budget exhausted";
          return out;
        }
        if (!r.converged) {
          out.verdict = Verdict::kNonMember;
          out.witness = ClassWitness{k, point};
          out.reason = "order " + std::to_string(k) + " quotient does not settle";
          return out;
        }
        if (f.kind() == FnKind::kLocallyConstant && !value::is_zero(*r.limit)) {
          throw std::logic_error("locally constant function with nonzero extension");
        }
      }
    }
  } catch (const PrecisionLoss& e) {
    out.verdict = Verdict::kInconclusive;
    out.reason = std::string("precision exhausted: ") + e.what();
    return out;
  }
  if (f.kind() == FnKind::kBlackBox && !spec.trust_samples) {
    out.verdict = Verdict::kInconclusive;
    out.reason = "all sampled quotients settle; samples cannot certify a black box";
    return out;
  }
  out.verdict = Verdict::kMember;
  out.exact = f.kind() == FnKind::kLocallyConstant;
  out.reason = out.exact ? "quotients vanish once |t v| is below the locality radius"
                         : "all sampled quotients settle";
  return out;
}

// ---------------------------------------------------------------- corpus

// "locally-constant:L" (x -> digits of x below p^L), "indicator:L"
// (x -> 1 if v(x) >= L else 0), "digit-halving" (sum d_i p^i -> sum d_i
// p^floor(i/2) on the integers; continuous, not differentiable), "x^k".
ScalarFn<UltraScalar> corpus_function(const std::string& name, const FieldSpec& field);

}  // namespace ultrawrap::calc

#endif  // ULTRAWRAP_CALCULUS_HPP_
