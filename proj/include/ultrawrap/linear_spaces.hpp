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

// Finitely supported sup-normed vectors over K or A_r, multilinear maps
// given by finite tensors, module axiom checks for A_r^n and the
// K_q / K_r / K_l linearity classifier.
//
// A_r^n is the direct sum 0X u_0 + ... + (2^r-1)X u_{2^r-1} with 0X = K^n
// (vectors with scalar entries). Its sup norm is the sup over all K
// coordinates, so a K-linear map A_r^n -> A_r^m is a K-matrix of size
// m 2^r x n 2^r (its realification) and its operator norm is exact.

#ifndef ULTRAWRAP_LINEAR_SPACES_HPP_
#define ULTRAWRAP_LINEAR_SPACES_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ultrawrap/cayley_dickson.hpp"
#include "ultrawrap/padic.hpp"

namespace ultrawrap::linal {

namespace detail {
inline Norm entry_norm(const UltraScalar& x) { return x.norm(); }
inline Norm entry_norm(const CDElement& x) { return x.sup_norm(); }
inline bool entry_is_zero(const UltraScalar& x) { return x.is_zero(); }
inline bool entry_is_zero(const CDElement& x) { return x.is_zero(); }
}  // namespace detail

// Sparse vector in c_0(gamma, V) with gamma the integers. Zero entries are
// not stored.
template <class V>
class C0Vector {
 public:
  explicit C0Vector(int p) : p_(p) {}
  C0Vector(int p, const std::vector<V>& dense) : p_(p) {
    for (std::size_t j = 0; j < dense.size(); ++j) set(static_cast<long>(j), dense[j]);
  }

  int p() const { return p_; }
  const std::map<long, V>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }

  void set(long j, const V& x) {
    if (detail::entry_is_zero(x)) {
      entries_.erase(j);
    } else {
      entries_.insert_or_assign(j, x);
    }
  }
  std::optional<V> get(long j) const {
    auto it = entries_.find(j);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  // max_j |x_j| with |x_j| = max over coordinates for A_r entries.
  Norm sup_norm() const {
    Norm m = Norm::zero(p_);
    for (const auto& [j, x] : entries_) m = max(m, detail::entry_norm(x));
    return m;
  }

  C0Vector operator+(const C0Vector& o) const {
    C0Vector r = *this;
    for (const auto& [j, x] : o.entries_) {
      auto it = r.entries_.find(j);
      r.set(j, it == r.entries_.end() ? x : it->second + x);
    }
    return r;
  }
  C0Vector operator-() const {
    C0Vector r(p_);
    for (const auto& [j, x] : entries_) r.set(j, -x);
    return r;
  }
  C0Vector operator-(const C0Vector& o) const { return *this + (-o); }
  C0Vector scaled(const UltraScalar& c) const {
    C0Vector r(p_);
    for (const auto& [j, x] : entries_) r.set(j, x * c);
    return r;
  }
  bool is_zero() const { return entries_.empty(); }
  bool operator==(const C0Vector& o) const { return (*this - o).is_zero(); }

 private:
  int p_;
  std::map<long, V> entries_;
};

// Multilinear map A.(h_1, ..., h_n) = sum a[i, j_1..j_n] h_1[j_1] ... h_n[j_n]
// from (K^d_1 x ... x K^d_n) to K^m; arity 1 is a matrix.
class FiniteMap {
 public:
  FiniteMap(int rows, std::vector<int> in_dims, std::vector<UltraScalar> entries);
  static FiniteMap matrix(int rows, int cols, std::vector<UltraScalar> entries);
  static FiniteMap identity(const FieldSpec& f, int n);
  static FiniteMap zero(const FieldSpec& f, int rows, int cols);

  int rows() const { return rows_; }
  int arity() const { return static_cast<int>(in_dims_.size()); }
  const std::vector<int>& in_dims() const { return in_dims_; }
  int cols() const { return in_dims_.at(0); }
  const std::vector<UltraScalar>& entries() const { return entries_; }
  // Entry a[i, j_1..j_n].
  const UltraScalar& at(int i, const std::vector<int>& js) const;
  const UltraScalar& at(int i, int j) const { return at(i, std::vector<int>{j}); }

  std::vector<UltraScalar> apply(const std::vector<std::vector<UltraScalar>>& hs) const;
  std::vector<UltraScalar> apply(const std::vector<UltraScalar>& h) const {
    return apply(std::vector<std::vector<UltraScalar>>{h});
  }

  // A B for matrices.
  FiniteMap compose(const FiniteMap& inner) const;
  std::string to_string() const;

 private:
  std::size_t offset(int i, const std::vector<int>& js) const;
  int rows_;
  std::vector<int> in_dims_;
  std::vector<UltraScalar> entries_;
};

// sup ||A.(h_1..h_n)|| / (||h_1|| ... ||h_n||) = max entry norm, for
// sup-normed spaces (attained on unit basis vectors).
Norm operator_norm(const FiniteMap& a);
Norm sup_norm(const std::vector<UltraScalar>& x);
Norm sup_norm(const std::vector<CDElement>& x);

// ------------------------------------------------------ A_r-module maps

// K-linear map A_r^n_in -> A_r^n_out stored as its realification.
class AlgebraMap {
 public:
  AlgebraMap(CDParamsPtr params, int n_in, int n_out, FiniteMap realified);

  // Realifies a K-linear function by evaluating it on the K basis.
  static AlgebraMap from_function(
      CDParamsPtr params, int n_in, int n_out,
      const std::function<std::vector<CDElement>(const std::vector<CDElement>&)>& fn);
  static AlgebraMap identity(CDParamsPtr params, int n);
  // x -> (a x_j)_j and x -> (x_j c)_j.
  static AlgebraMap left_mul(const CDElement& a, int n);
  static AlgebraMap right_mul(const CDElement& c, int n);
  // x -> (sum_j a_ij x_j)_i.
  static AlgebraMap from_left_matrix(CDParamsPtr params, int n_out, int n_in,
                                     const std::vector<CDElement>& a);
  // x -> (conj x_j)_j.
  static AlgebraMap conjugation(CDParamsPtr params, int n);

  const CDParamsPtr& params() const { return params_; }
  int n_in() const { return n_in_; }
  int n_out() const { return n_out_; }
  const FiniteMap& realified() const { return real_; }

  std::vector<CDElement> apply(const std::vector<CDElement>& x) const;
  AlgebraMap compose(const AlgebraMap& inner) const;
  Norm norm() const { return operator_norm(real_); }

 private:
  CDParamsPtr params_;
  int n_in_, n_out_;
  FiniteMap real_;
};

enum class LinearityClass { kQ, kR, kL };
std::string_view class_name(LinearityClass c);

struct LinearityWitness {
  std::vector<CDElement> x;  // argument
  CDElement b;               // scalar from A_r
  std::vector<CDElement> lhs, rhs;
};

struct LinearityReport {
  // Membership by the defining identities on 0X.
  bool kq = true;
  bool kr = false;
  bool kl = false;
  // The same identities required on all of X.
  bool kr_everywhere = false;
  bool kl_everywhere = false;
  std::optional<LinearityWitness> kr_witness, kl_witness;
  std::optional<LinearityWitness> kr_everywhere_witness, kl_everywhere_witness;

  std::vector<LinearityClass> classes() const;
  std::vector<LinearityClass> classes_everywhere() const;
};

// Exact: both sides of each identity are K-bilinear in (x, b), so checking
// x over the K basis of 0X (or X) and b over the generators decides it.
LinearityReport linearity_class(const AlgebraMap& a);

// ---------------------------------------------------------- L1-L4 report

struct AxiomResult {
  std::string name;
  bool holds = true;
  long long checks = 0;
  std::string witness;  // first failing sample
};

struct ModuleReport {
  std::vector<AxiomResult> axioms;  // L1, L2, L3, L4
  // Extras: associativity (ab)x = a(bx) and x(ab) = (xa)b off 0X, and
  // ax = xa.
  AxiomResult associative_everywhere;
  AxiomResult commutative_action;

  bool axioms_hold() const;
};

// Samples x, y in A_r^n, x0 in 0X and a, b in A_r.
ModuleReport module_axioms_check(const CDParamsPtr& params, int n, int samples, std::uint64_t seed);

}  // namespace ultrawrap::linal

#endif  // ULTRAWRAP_LINEAR_SPACES_HPP_
