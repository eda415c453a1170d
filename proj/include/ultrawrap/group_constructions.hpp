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

// Finite magmas with a G1-G5 axiom audit, reduced words in the free group
// on a and b, Grothendieck completion of commutative cancellative monoids
// and the skew product W~ = (W x B) x (W x B) with its rewriting relation.

#ifndef ULTRAWRAP_GROUP_CONSTRUCTIONS_HPP_
#define ULTRAWRAP_GROUP_CONSTRUCTIONS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ultrawrap {

// ------------------------------------------------------------ FiniteMagma

class FiniteMagma;
using MagmaPtr = std::shared_ptr<const FiniteMagma>;

class FiniteMagma {
 public:
  // table[i][j] = index of element i * element j. A claimed unit or
  // inverse table is verified and rejected with invalid_argument if false.
  FiniteMagma(std::vector<std::string> names, std::vector<std::vector<int>> table,
              std::optional<int> unit = std::nullopt,
              std::optional<std::vector<int>> inverse = std::nullopt);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::vector<int>>& table() const { return table_; }
  int mul(int i, int j) const { return table_[i][j]; }
  int index_of(const std::string& name) const;

  // Claimed or detected two-sided unit.
  std::optional<int> unit() const { return unit_; }
  int unit_or_throw() const;
  // Two-sided inverse of i if one exists.
  std::optional<int> inverse(int i) const;
  int inverse_or_throw(int i) const;
  bool has_inverses() const;

  // Cyclic Z/n, symmetric group S_n (n <= 5, permutations in lex order)
  // and the signed generators {+-u_0..+-u_{2^r-1}} of A_r with all q_j = 1.
  static MagmaPtr cyclic(int n);
  static MagmaPtr symmetric(int n);
  static MagmaPtr signed_generators(int level);
  static MagmaPtr quaternion_units() { return signed_generators(2); }
  static MagmaPtr direct_product(const FiniteMagma& a, const FiniteMagma& b);

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> table_;
  std::optional<int> unit_;
  std::vector<int> inverse_;  // -1 where no two-sided inverse exists
};

struct AxiomWitness {
  std::vector<int> elements;
  std::string detail;
};

struct AxiomCheck {
  std::string name;
  bool holds = true;
  std::optional<AxiomWitness> witness;
};

struct MagmaAudit {
  // G1 closure, G2 unit, G3 inverses, G4 weak associativity
  // ((ab)b = a(bb), b(ba) = (bb)a, (ab)b^-1 = a, b^-1(ba) = a), G5
  // associativity.
  std::array<AxiomCheck, 5> g;
  bool alternative() const { return g[0].holds && g[1].holds && g[2].holds && g[3].holds; }
  bool group() const { return alternative() && g[4].holds; }
  std::string to_string(const FiniteMagma& m) const;
};

class CapExceeded : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive audit; the first failing tuple in index order is the witness.
MagmaAudit audit_axioms(const FiniteMagma& m, int cap = 256);

// Quotient of m by the smallest congruence that makes it commutative and
// associative; returns the class index of each element. For a group this
// is the abelianization map.
std::vector<int> abelianization(const FiniteMagma& m);

// --------------------------------------------------------- free group B

class ReducedWord {
 public:
  // Generator 0 = a, 1 = b.
  struct Syllable {
    int gen;
    long exp;
    friend bool operator==(const Syllable&, const Syllable&) = default;
    friend auto operator<=>(const Syllable&, const Syllable&) = default;
  };

  ReducedWord() = default;
  static ReducedWord a() { return generator(0); }
  static ReducedWord b() { return generator(1); }
  static ReducedWord generator(int gen, long exp = 1);
  // Words such as "e", "a", "b^-1 a b a^-1", "a^2b".
  static ReducedWord parse(const std::string& s);

  const std::vector<Syllable>& syllables() const { return s_; }
  bool is_identity() const { return s_.empty(); }
  // Number of letters (sum of |exp|).
  long length() const;
  long exponent_sum(int gen) const;

  ReducedWord operator*(const ReducedWord& o) const;
  ReducedWord inverse() const;
  std::string to_string() const;
  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
  friend auto operator<=>(const ReducedWord&, const ReducedWord&) = default;

 private:
  friend ReducedWord free_reduce(const std::vector<Syllable>& w);
  std::vector<Syllable> s_;
};

// Cancels adjacent inverse letters and merges equal generators.
ReducedWord free_reduce(const std::vector<ReducedWord::Syllable>& w);

// ------------------------------------------------------- skew product W~

// g1 w1 (x) g2 w2 with g_i indices into W and w_i in B.
struct SkewElement {
  int g1 = 0;
  ReducedWord w1;
  int g2 = 0;
  ReducedWord w2;
  friend bool operator==(const SkewElement&, const SkewElement&) = default;
  friend auto operator<=>(const SkewElement&, const SkewElement&) = default;
};

class SkewProduct {
 public:
  // W must have a unit.
  explicit SkewProduct(MagmaPtr w);

  const MagmaPtr& w() const { return w_; }
  int e() const { return e_; }
  SkewElement identity() const { return {e_, {}, e_, {}}; }
  SkewElement make(int g1, ReducedWord w1, int g2, ReducedWord w2) const;
  // theta(g) = g e_B (x) e e_B.
  SkewElement theta(int g) const { return make(g, {}, e_, {}); }

  // ((g1 g3)(a1 a3)) (x) ((g4 g2)((a1^-1 a4 a1) a2)).
  SkewElement mul(const SkewElement& x, const SkewElement& y) const;
  // g1^-1 a1^-1 (x) g2^-1 (a1 a2^-1 a1^-1), a two-sided inverse for mul.
  SkewElement inverse(const SkewElement& x) const;

  // Generators of the relation: L(g1, g2) = g1g2 a (x) g2 b and
  // R(g1) = g1 e_B (x) e e_B with L ~ R.
  SkewElement relation_lhs(int g1, int g2) const;
  SkewElement relation_rhs(int g1) const;

  // c with c * l = x, and c with l * c = x. Need inverses in W.
  SkewElement right_divide(const SkewElement& x, const SkewElement& l) const;
  SkewElement left_divide(const SkewElement& l, const SkewElement& x) const;

  // (class of g1 g2^-1 in W_ab, sigma_b(w1), sigma_a(w2),
  // sigma_a(w1) - sigma_b(w2)); preserved by every rewrite step.
  std::array<long, 4> invariant(const SkewElement& x) const;

  std::string to_string(const SkewElement& x) const;

 private:
  MagmaPtr w_;
  int e_;
  std::vector<int> ab_;
};

enum class EquivVerdict { kEquivalent, kDistinct, kUnknown };
std::string_view verdict_name(EquivVerdict v);

struct EquivResult {
  EquivVerdict verdict = EquivVerdict::kUnknown;
  // Rewrite path from x to y when equivalent.
  std::vector<SkewElement> path;
  long long expanded = 0;
  std::array<long, 4> invariant_x{}, invariant_y{};
};

// Bidirectional best-first search, shortest words first. One step replaces x = c * L by c * R
// (or L * c by R * c) and back, for every relation pair; `budget` bounds
// the number of expanded states. Every step is checked to preserve the
// invariant (logic_error otherwise).
EquivResult skew_equiv(const SkewProduct& s, const SkewElement& x, const SkewElement& y,
                       long long budget = 10000);

// W x W with (g1, g2)(g3, g4) = (g1 g3, g4 g2), element (g, h) at index
// g * |W| + h, named "(g,h)".
MagmaPtr quotient_group_on_trivial_words(const FiniteMagma& w);

// ---------------------------------------------------- Grothendieck group

class NonCancellative : public std::invalid_argument {
 public:
  NonCancellative(const std::string& what, std::vector<std::string> witness)
      : std::invalid_argument(what), witness_(std::move(witness)) {}
  // (a, b, c) with a + c = b + c and a != b.
  const std::vector<std::string>& witness() const { return witness_; }

 private:
  std::vector<std::string> witness_;
};

class NonCommutative : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A commutative monoid given by a finite sample of its carrier and its
// operation; the operation may leave the sample (e.g. truncated (N, +)).
template <class T>
struct PresentedMonoid {
  std::vector<T> carrier;
  T zero;
  std::function<T(const T&, const T&)> op;
  std::function<std::string(const T&)> name;
};

PresentedMonoid<int> as_monoid(const MagmaPtr& m);
PresentedMonoid<long long> truncated_naturals(long long n);

template <class T>
struct FormalDifference {
  std::vector<T> plus, minus;
};

template <class T>
class GrothendieckGroup {
 public:
  using Diff = FormalDifference<T>;

  // Verifies commutativity and cancellation exhaustively on the carrier.
  explicit GrothendieckGroup(PresentedMonoid<T> m) : m_(std::move(m)) {
    const auto& c = m_.carrier;
    for (const T& x : c) {
      for (const T& y : c) {
        if (!(m_.op(x, y) == m_.op(y, x))) {
          throw NonCommutative("monoid is not commutative at (" + m_.name(x) + ", " +
                               m_.name(y) + ")");
        }
      }
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      for (std::size_t j = 0; j < c.size(); ++j) {
        if (c[i] == c[j]) continue;
        for (const T& z : c) {
          if (m_.op(c[i], z) == m_.op(c[j], z)) {
            throw NonCancellative("monoid is not cancellative: " + m_.name(c[i]) + " + " +
                                      m_.name(z) + " = " + m_.name(c[j]) + " + " + m_.name(z),
                                  {m_.name(c[i]), m_.name(c[j]), m_.name(z)});
          }
        }
      }
    }
  }

  const PresentedMonoid<T>& monoid() const { return m_; }
  Diff zero() const { return {}; }
  Diff eta(const T& x) const { return {{x}, {m_.zero}}; }
  Diff difference(const T& x, const T& y) const { return {{x}, {y}}; }
  Diff add(const Diff& x, const Diff& y) const {
    Diff r = x;
    r.plus.insert(r.plus.end(), y.plus.begin(), y.plus.end());
    r.minus.insert(r.minus.end(), y.minus.begin(), y.minus.end());
    return r;
  }
  Diff negate(const Diff& x) const { return {x.minus, x.plus}; }
  T sum(const std::vector<T>& xs) const {
    T s = m_.zero;
    for (const T& x : xs) s = m_.op(s, x);
    return s;
  }
  // (m1, n1) = (m2, n2) iff m1 + n2 = m2 + n1.
  bool equal(const Diff& x, const Diff& y) const {
    return m_.op(sum(x.plus), sum(y.minus)) == m_.op(sum(y.plus), sum(x.minus));
  }
  std::string to_string(const Diff& x) const {
    return "[" + m_.name(sum(x.plus)) + "] - [" + m_.name(sum(x.minus)) + "]";
  }
  // eta(x) = eta(y) implies x = y, checked over the carrier.
  bool eta_injective() const {
    const auto& c = m_.carrier;
    for (const T& x : c) {
      for (const T& y : c) {
        if (equal(eta(x), eta(y)) && !(x == y)) return false;
      }
    }
    return true;
  }

 private:
  PresentedMonoid<T> m_;
};

}  // namespace ultrawrap

#endif  // ULTRAWRAP_GROUP_CONSTRUCTIONS_HPP_
