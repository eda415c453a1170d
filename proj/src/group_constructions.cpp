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

#include "ultrawrap/group_constructions.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>

#include "ultrawrap/cayley_dickson.hpp"

namespace ultrawrap {

// ------------------------------------------------------------ FiniteMagma

FiniteMagma::FiniteMagma(std::vector<std::string> names, std::vector<std::vector<int>> table,
                         std::optional<int> unit, std::optional<std::vector<int>> inverse)
    : names_(std::move(names)), table_(std::move(table)) {
  const int n = size();
  if (n == 0) throw std::invalid_argument("magma needs at least one element");
  if (static_cast<int>(table_.size()) != n) throw std::invalid_argument("table has wrong row count");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("table is not square");
    for (int x : row) {
      if (x < 0 || x >= n) throw std::invalid_argument("table entry out of range");
    }
  }
  auto is_unit = [&](int u) {
    for (int i = 0; i < n; ++i) {
      if (table_[u][i] != i || table_[i][u] != i) return false;
    }
    return true;
  };
  if (unit) {
    if (*unit < 0 || *unit >= n || !is_unit(*unit)) {
      throw std::invalid_argument("claimed unit is not a two-sided unit");
    }
    unit_ = unit;
  } else {
    for (int u = 0; u < n; ++u) {
      if (is_unit(u)) {
        unit_ = u;
        break;
      }
    }
  }
  inverse_.assign(n, -1);
  if (inverse) {
    if (!unit_) throw std::invalid_argument("inverse table without a unit");
    if (static_cast<int>(inverse->size()) != n) throw std::invalid_argument("inverse table has wrong size");
    for (int i = 0; i < n; ++i) {
      const int j = (*inverse)[i];
      if (j < 0 || j >= n || table_[i][j] != *unit_ || table_[j][i] != *unit_) {
        throw std::invalid_argument("claimed inverse of " + names_[i] + " is wrong");
      }
    }
    inverse_ = *inverse;
  } else if (unit_) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (table_[i][j] == *unit_ && table_[j][i] == *unit_) {
          inverse_[i] = j;
          break;
        }
      }
    }
  }
}

int FiniteMagma::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("unknown element: " + name);
  return static_cast<int>(it - names_.begin());
}

int FiniteMagma::unit_or_throw() const {
  if (!unit_) throw std::invalid_argument("magma has no unit");
  return *unit_;
}

std::optional<int> FiniteMagma::inverse(int i) const {
  if (inverse_.at(i) < 0) return std::nullopt;
  return inverse_[i];
}

int FiniteMagma::inverse_or_throw(int i) const {
  if (inverse_.at(i) < 0) throw std::invalid_argument(names_[i] + " has no inverse");
  return inverse_[i];
}

bool FiniteMagma::has_inverses() const {
  return std::all_of(inverse_.begin(), inverse_.end(), [](int j) { return j >= 0; });
}

MagmaPtr FiniteMagma::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group needs n >= 1");
  std::vector<std::string> names;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (int j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  }
  return std::make_shared<FiniteMagma>(std::move(names), std::move(t), 0);
}

MagmaPtr FiniteMagma::symmetric(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("symmetric group needs 1 <= n <= 5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, int> index;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    index[perms[i]] = static_cast<int>(i);
    std::string s;
    for (int x : perms[i]) s += static_cast<char>('0' + x);
    names.push_back(s);
  }
  const int m = static_cast<int>(perms.size());
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      // (s t)(x) = s(t(x)).
      std::vector<int> c(n);
      for (int x = 0; x < n; ++x) c[x] = perms[i][perms[j][x]];
      t[i][j] = index.at(c);
    }
  }
  return std::make_shared<FiniteMagma>(std::move(names), std::move(t), 0);
}

MagmaPtr FiniteMagma::signed_generators(int level) {
  const GeneratorTable g = generator_table(level);
  const int d = static_cast<int>(g.size());
  std::vector<std::string> names;
  for (int s = 0; s < 2; ++s) {
    for (int i = 0; i < d; ++i) names.push_back((s == 0 ? "+u" : "-u") + std::to_string(i));
  }
  std::vector<std::vector<int>> t(2 * d, std::vector<int>(2 * d));
  for (int x = 0; x < 2 * d; ++x) {
    for (int y = 0; y < 2 * d; ++y) {
      const GeneratorProduct& gp = g[x % d][y % d];
      const int sign = (x < d ? 1 : -1) * (y < d ? 1 : -1) * gp.sign;
      t[x][y] = gp.index + (sign > 0 ? 0 : d);
    }
  }
  return std::make_shared<FiniteMagma>(std::move(names), std::move(t), 0);
}

MagmaPtr FiniteMagma::direct_product(const FiniteMagma& a, const FiniteMagma& b) {
  const int na = a.size(), nb = b.size();
  std::vector<std::string> names;
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int i = 0; i < na * nb; ++i) {
    names.push_back("(" + a.name(i / nb) + "," + b.name(i % nb) + ")");
    for (int j = 0; j < na * nb; ++j) {
      t[i][j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
    }
  }
  return std::make_shared<FiniteMagma>(std::move(names), std::move(t));
}

std::string MagmaAudit::to_string(const FiniteMagma& m) const {
  std::ostringstream os;
  for (const auto& c : g) {
    os << c.name << ": " << (c.holds ? "holds" : "fails");
    if (c.witness) {
      os << " at (";
      for (std::size_t i = 0; i < c.witness->elements.size(); ++i) {
        os << (i ? ", " : "") << m.name(c.witness->elements[i]);
      }
      os << ")";
      if (!c.witness->detail.empty()) os << ": " << c.witness->detail;
    }
    os << "\n";
  }
  return os.str();
}

MagmaAudit audit_axioms(const FiniteMagma& m, int cap) {
  const int n = m.size();
  if (n > cap) {
    throw CapExceeded("magma has " + std::to_string(n) + " elements, cap is " + std::to_string(cap));
  }
  MagmaAudit r;
  r.g[0].name = "G1";
  r.g[1].name = "G2";
  r.g[2].name = "G3";
  r.g[3].name = "G4";
  r.g[4].name = "G5";
  // The table is total by construction.
  r.g[0].holds = true;
  if (!m.unit()) {
    r.g[1].holds = false;
    r.g[1].witness = AxiomWitness{{}, "no two-sided unit"};
  }
  if (m.unit()) {
    for (int i = 0; i < n; ++i) {
      if (!m.inverse(i)) {
        r.g[2].holds = false;
        r.g[2].witness = AxiomWitness{{i}, "no two-sided inverse"};
        break;
      }
    }
  } else {
    r.g[2].holds = false;
    r.g[2].witness = AxiomWitness{{}, "inverses need a unit"};
  }
  auto fail4 = [&](int a, int b, const std::string& law) {
    if (r.g[3].holds) {
      r.g[3].holds = false;
      r.g[3].witness = AxiomWitness{{a, b}, law};
    }
  };
  for (int a = 0; a < n && r.g[3].holds; ++a) {
    for (int b = 0; b < n && r.g[3].holds; ++b) {
      const int bb = m.mul(b, b);
      if (m.mul(m.mul(a, b), b) != m.mul(a, bb)) fail4(a, b, "(ab)b != a(bb)");
      if (m.mul(b, m.mul(b, a)) != m.mul(bb, a)) fail4(a, b, "b(ba) != (bb)a");
      if (auto bi = m.inverse(b)) {
        if (m.mul(m.mul(a, b), *bi) != a) fail4(a, b, "(ab)b^-1 != a");
        if (m.mul(*bi, m.mul(b, a)) != a) fail4(a, b, "b^-1(ba) != a");
      }
    }
  }
  for (int a = 0; a < n && r.g[4].holds; ++a) {
    for (int b = 0; b < n && r.g[4].holds; ++b) {
      const int ab = m.mul(a, b);
      for (int c = 0; c < n; ++c) {
        const int lhs = m.mul(ab, c), rhs = m.mul(a, m.mul(b, c));
        if (lhs != rhs) {
          r.g[4].holds = false;
          r.g[4].witness =
              AxiomWitness{{a, b, c}, "(ab)c = " + m.name(lhs) + " != a(bc) = " + m.name(rhs)};
          break;
        }
      }
    }
  }
  if (r.g[1].holds && r.g[2].holds && r.g[4].holds && !r.g[3].holds) {
    throw std::logic_error("audit found an associative group violating G4");
  }
  return r;
}

std::vector<int> abelianization(const FiniteMagma& m) {
  const int n = m.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool changed = false;
  auto unite = [&](int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    parent[std::max(x, y)] = std::min(x, y);
    changed = true;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      unite(m.mul(a, b), m.mul(b, a));
      for (int c = 0; c < n; ++c) unite(m.mul(m.mul(a, b), c), m.mul(a, m.mul(b, c)));
    }
  }
  do {
    changed = false;
    for (int i = 0; i < n; ++i) {
      const int r = find(i);
      if (r == i) continue;
      for (int c = 0; c < n; ++c) {
        unite(m.mul(i, c), m.mul(r, c));
        unite(m.mul(c, i), m.mul(c, r));
      }
    }
  } while (changed);
  std::vector<int> label(n, -1), out(n);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (label[r] < 0) label[r] = next++;
    out[i] = label[r];
  }
  return out;
}

// --------------------------------------------------------- free group B

ReducedWord free_reduce(const std::vector<ReducedWord::Syllable>& w) {
  ReducedWord r;
  for (const auto& s : w) {
    if (s.gen != 0 && s.gen != 1) throw std::invalid_argument("generator must be a or b");
    if (s.exp == 0) continue;
    if (!r.s_.empty() && r.s_.back().gen == s.gen) {
      r.s_.back().exp += s.exp;
      if (r.s_.back().exp == 0) r.s_.pop_back();
    } else {
      r.s_.push_back(s);
    }
  }
  return r;
}

ReducedWord ReducedWord::generator(int gen, long exp) { return free_reduce({{gen, exp}}); }

ReducedWord ReducedWord::parse(const std::string& s) {
  std::vector<Syllable> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    if (c == 'e') {
      ++i;
      continue;
    }
    if (c != 'a' && c != 'b') throw std::invalid_argument("bad word: " + s);
    long exp = 1;
    ++i;
    if (i < s.size() && s[i] == '^') {
      ++i;
      const char* b = s.data() + i;
      const char* e = s.data() + s.size();
      auto [ptr, ec] = std::from_chars(b, e, exp);
      if (ec != std::errc() || ptr == b) throw std::invalid_argument("bad exponent in word: " + s);
      i = static_cast<std::size_t>(ptr - s.data());
    }
    out.push_back({c == 'a' ? 0 : 1, exp});
  }
  return free_reduce(out);
}

long ReducedWord::length() const {
  long n = 0;
  for (const auto& x : s_) n += std::labs(x.exp);
  return n;
}

long ReducedWord::exponent_sum(int gen) const {
  long n = 0;
  for (const auto& x : s_) {
    if (x.gen == gen) n += x.exp;
  }
  return n;
}

ReducedWord ReducedWord::operator*(const ReducedWord& o) const {
  std::vector<Syllable> w = s_;
  w.insert(w.end(), o.s_.begin(), o.s_.end());
  return free_reduce(w);
}

ReducedWord ReducedWord::inverse() const {
  std::vector<Syllable> w(s_.rbegin(), s_.rend());
  for (auto& x : w) x.exp = -x.exp;
  return free_reduce(w);
}

std::string ReducedWord::to_string() const {
  if (s_.empty()) return "e";
  std::string r;
  for (const auto& x : s_) {
    r += x.gen == 0 ? 'a' : 'b';
    if (x.exp != 1) r += "^" + std::to_string(x.exp);
  }
  return r;
}

// ------------------------------------------------------- skew product W~

SkewProduct::SkewProduct(MagmaPtr w) : w_(std::move(w)) {
  if (!w_) throw std::invalid_argument("null magma");
  e_ = w_->unit_or_throw();
  ab_ = abelianization(*w_);
}

SkewElement SkewProduct::make(int g1, ReducedWord w1, int g2, ReducedWord w2) const {
  if (g1 < 0 || g1 >= w_->size() || g2 < 0 || g2 >= w_->size()) {
    throw std::invalid_argument("element index outside W");
  }
  return {g1, std::move(w1), g2, std::move(w2)};
}

SkewElement SkewProduct::mul(const SkewElement& x, const SkewElement& y) const {
  const ReducedWord a1i = x.w1.inverse();
  return {w_->mul(x.g1, y.g1), x.w1 * y.w1, w_->mul(y.g2, x.g2), ((a1i * y.w2) * x.w1) * x.w2};
}

SkewElement SkewProduct::inverse(const SkewElement& x) const {
  return {w_->inverse_or_throw(x.g1), x.w1.inverse(), w_->inverse_or_throw(x.g2),
          (x.w1 * x.w2.inverse()) * x.w1.inverse()};
}

SkewElement SkewProduct::relation_lhs(int g1, int g2) const {
  return make(w_->mul(g1, g2), ReducedWord::a(), g2, ReducedWord::b());
}

SkewElement SkewProduct::relation_rhs(int g1) const { return make(g1, {}, e_, {}); }

SkewElement SkewProduct::right_divide(const SkewElement& x, const SkewElement& l) const {
  // c * l = ((h1 k1), (b1 beta1)) (x) ((k2 h2), (b1^-1 beta2 b1) b2).
  const int h1 = w_->mul(x.g1, w_->inverse_or_throw(l.g1));
  const ReducedWord b1 = x.w1 * l.w1.inverse();
  const int h2 = w_->mul(w_->inverse_or_throw(l.g2), x.g2);
  const ReducedWord b2 = ((b1.inverse() * l.w2) * b1).inverse() * x.w2;
  return {h1, b1, h2, b2};
}

SkewElement SkewProduct::left_divide(const SkewElement& l, const SkewElement& x) const {
  // l * c = ((k1 h1), (beta1 b1)) (x) ((h2 k2), (beta1^-1 b2 beta1) beta2).
  const int h1 = w_->mul(w_->inverse_or_throw(l.g1), x.g1);
  const ReducedWord b1 = l.w1.inverse() * x.w1;
  const int h2 = w_->mul(x.g2, w_->inverse_or_throw(l.g2));
  const ReducedWord b2 = (l.w1 * (x.w2 * l.w2.inverse())) * l.w1.inverse();
  return {h1, b1, h2, b2};
}

std::array<long, 4> SkewProduct::invariant(const SkewElement& x) const {
  return {ab_[w_->mul(x.g1, w_->inverse_or_throw(x.g2))], x.w1.exponent_sum(1),
          x.w2.exponent_sum(0), x.w1.exponent_sum(0) - x.w2.exponent_sum(1)};
}

std::string SkewProduct::to_string(const SkewElement& x) const {
  return "(" + w_->name(x.g1) + "*" + x.w1.to_string() + " (x) " + w_->name(x.g2) + "*" +
         x.w2.to_string() + ")";
}

std::string_view verdict_name(EquivVerdict v) {
  switch (v) {
    case EquivVerdict::kEquivalent: return "equivalent";
    case EquivVerdict::kDistinct: return "distinct";
    case EquivVerdict::kUnknown: return "unknown";
  }
  return "?";
}

namespace {

std::vector<SkewElement> rewrite_neighbors(const SkewProduct& s, const SkewElement& z) {
  const int n = s.w()->size();
  std::vector<SkewElement> out;
  out.reserve(4 * static_cast<std::size_t>(n) * n);
  for (int g1 = 0; g1 < n; ++g1) {
    const SkewElement r = s.relation_rhs(g1);
    const SkewElement cr = s.right_divide(z, r);
    const SkewElement rc = s.left_divide(r, z);
    for (int g2 = 0; g2 < n; ++g2) {
      const SkewElement l = s.relation_lhs(g1, g2);
      out.push_back(s.mul(s.right_divide(z, l), r));
      out.push_back(s.mul(r, s.left_divide(l, z)));
      out.push_back(s.mul(cr, l));
      out.push_back(s.mul(l, rc));
    }
  }
  return out;
}

}  // namespace

EquivResult skew_equiv(const SkewProduct& s, const SkewElement& x, const SkewElement& y,
                       long long budget) {
  EquivResult res;
  res.invariant_x = s.invariant(x);
  res.invariant_y = s.invariant(y);
  if (res.invariant_x != res.invariant_y) {
    res.verdict = EquivVerdict::kDistinct;
    return res;
  }
  if (x == y) {
    res.verdict = EquivVerdict::kEquivalent;
    res.path = {x};
    return res;
  }
  // parent maps for the two searches; the root maps to itself. Each side
  // expands its shortest open state first (ties broken by insertion order).
  using Entry = std::tuple<long, long long, SkewElement>;
  auto weight = [](const SkewElement& z) { return z.w1.length() + z.w2.length(); };
  std::array<std::map<SkewElement, SkewElement>, 2> parent;
  std::array<std::priority_queue<Entry, std::vector<Entry>, std::greater<>>, 2> open;
  long long tick = 0;
  parent[0].emplace(x, x);
  parent[1].emplace(y, y);
  open[0].emplace(weight(x), tick++, x);
  open[1].emplace(weight(y), tick++, y);
  auto trace = [&](int side, SkewElement z) {
    std::vector<SkewElement> p{z};
    while (!(parent[side].at(z) == z)) {
      z = parent[side].at(z);
      p.push_back(z);
    }
    return p;
  };
  int side = 0;
  while (!open[0].empty() && !open[1].empty()) {
    if (res.expanded >= budget) return res;
    ++res.expanded;
    const SkewElement z = std::get<2>(open[side].top());
    open[side].pop();
    for (SkewElement& nb : rewrite_neighbors(s, z)) {
      if (s.invariant(nb) != res.invariant_x) {
        throw std::logic_error("rewrite step changed the invariant");
      }
      if (parent[side].count(nb)) continue;
      parent[side].emplace(nb, z);
      if (parent[1 - side].count(nb)) {
        std::vector<SkewElement> a = trace(0, nb), b = trace(1, nb);
        std::reverse(a.begin(), a.end());
        a.insert(a.end(), b.begin() + 1, b.end());
        res.path = std::move(a);
        res.verdict = EquivVerdict::kEquivalent;
        return res;
      }
      open[side].emplace(weight(nb), tick++, std::move(nb));
    }
    side = 1 - side;
  }
  return res;
}

MagmaPtr quotient_group_on_trivial_words(const FiniteMagma& w) {
  const int n = w.size();
  std::vector<std::string> names;
  std::vector<std::vector<int>> t(n * n, std::vector<int>(n * n));
  for (int i = 0; i < n * n; ++i) {
    const int g1 = i / n, g2 = i % n;
    names.push_back("(" + w.name(g1) + "," + w.name(g2) + ")");
    for (int j = 0; j < n * n; ++j) {
      const int g3 = j / n, g4 = j % n;
      t[i][j] = w.mul(g1, g3) * n + w.mul(g4, g2);
    }
  }
  std::optional<int> unit;
  if (w.unit()) unit = *w.unit() * n + *w.unit();
  return std::make_shared<FiniteMagma>(std::move(names), std::move(t), unit);
}

// ---------------------------------------------------- Grothendieck group

PresentedMonoid<int> as_monoid(const MagmaPtr& m) {
  PresentedMonoid<int> r;
  for (int i = 0; i < m->size(); ++i) r.carrier.push_back(i);
  r.zero = m->unit_or_throw();
  r.op = [m](const int& x, const int& y) { return m->mul(x, y); };
  r.name = [m](const int& x) { return m->name(x); };
  return r;
}

PresentedMonoid<long long> truncated_naturals(long long n) {
  PresentedMonoid<long long> r;
  for (long long i = 0; i <= n; ++i) r.carrier.push_back(i);
  r.zero = 0;
  r.op = [](const long long& x, const long long& y) { return x + y; };
  r.name = [](const long long& x) { return std::to_string(x); };
  return r;
}

}  // namespace ultrawrap
