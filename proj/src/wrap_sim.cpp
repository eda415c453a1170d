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

#include "ultrawrap/wrap_sim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ultrawrap::wrap {

namespace {

constexpr long kMaxLeaves = 1L << 24;

long ipow(long p, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > kMaxLeaves / p) throw std::invalid_argument("grid too large");
    r *= p;
  }
  return r;
}

}  // namespace

// ------------------------------------------------------------- BallGrid

BallGrid::BallGrid(int p, int depth, std::vector<int> marked, bool hat)
    : p_(p), d_(depth), hat_(hat), marked_(std::move(marked)) {
  if (p < 2 || p > 36) throw std::invalid_argument("grid needs 2 <= p <= 36");
  if (depth < 0) throw std::invalid_argument("grid depth must be >= 0");
  leaves_ = ipow(p, depth);
  if (marked_.empty()) throw std::invalid_argument("grid needs k >= 1 marked leaves");
  if (hat_ && marked_.size() % 2 != 0) throw std::invalid_argument("hat grid needs 2k marked leaves");
  const long need = hat_ ? static_cast<long>(marked_.size()) : 2L * static_cast<long>(marked_.size());
  if (leaves_ <= need) throw std::invalid_argument("grid needs p^d > 2k");
  std::set<int> seen;
  for (int m : marked_) {
    if (m < 0 || m >= leaves_) throw std::invalid_argument("marked leaf outside the grid");
    if (!seen.insert(m).second) throw std::invalid_argument("marked leaves must be distinct");
  }
}

BallGrid BallGrid::standard(int p, int depth, int k, bool hat) {
  if (k < 1) throw std::invalid_argument("grid needs k >= 1 marked leaves");
  std::vector<int> m(hat ? 2 * k : k);
  std::iota(m.begin(), m.end(), 0);
  return BallGrid(p, depth, std::move(m), hat);
}

std::string BallGrid::address(long leaf) const {
  if (leaf < 0 || leaf >= leaves_) throw std::out_of_range("leaf index");
  static const char* kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string s(d_, '0');
  for (int i = d_ - 1; i >= 0; --i) {
    s[i] = kDigits[leaf % p_];
    leaf /= p_;
  }
  return s;
}

long BallGrid::leaf_index(const std::string& a) const {
  if (static_cast<int>(a.size()) != d_) throw std::invalid_argument("address has wrong length: " + a);
  long x = 0;
  for (char c : a) {
    int v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    if (c >= 'a' && c <= 'z') v = c - 'a' + 10;
    if (v < 0 || v >= p_) throw std::invalid_argument("bad address digit in " + a);
    x = x * p_ + v;
  }
  return x;
}

int BallGrid::distance(long x, long y) const {
  int up = 0;
  while (x != y) {
    x /= p_;
    y /= p_;
    ++up;
  }
  return up;
}

long BallGrid::ancestor(long leaf, int level) const { return leaf / ipow(p_, d_ - level); }
long BallGrid::nodes_at(int level) const { return ipow(p_, level); }

// --------------------------------------------------------------- GridMap

GridMap::GridMap(BallGrid grid, int targets, std::vector<int> values, int rho)
    : grid_(std::move(grid)), n_(targets), rho_(rho), values_(std::move(values)) {
  if (n_ < 1) throw std::invalid_argument("target set needs at least the base point");
  if (rho_ < 0) throw std::invalid_argument("flatness radius must be >= 0");
  if (static_cast<long>(values_.size()) != grid_.leaves()) {
    throw std::invalid_argument("map needs one value per leaf");
  }
  for (int v : values_) {
    if (v < 0 || v >= n_) throw std::invalid_argument("value outside the target set");
  }
  const long ball = ipow(grid_.p(), std::min(rho_, grid_.depth()));
  for (int m : grid_.marked()) {
    const long start = (m / ball) * ball;
    for (long x = start; x < start + ball; ++x) {
      if (values_[x] != 0) {
        throw std::invalid_argument("map is not flat near marked leaf " + grid_.address(m) +
                                    " (leaf " + grid_.address(x) + ")");
      }
    }
  }
}

GridMap GridMap::constant(const BallGrid& grid, int targets, int rho) {
  return GridMap(grid, targets, std::vector<int>(grid.leaves(), 0), rho);
}

bool GridMap::is_constant() const {
  return std::all_of(values_.begin(), values_.end(), [](int v) { return v == 0; });
}

std::vector<GridMap> enumerate_flat_maps(const BallGrid& grid, int targets, int rho) {
  const GridMap w0 = GridMap::constant(grid, targets, rho);
  const long ball = ipow(grid.p(), std::min(rho, grid.depth()));
  std::vector<bool> flat(grid.leaves(), false);
  for (int m : grid.marked()) {
    for (long x = (m / ball) * ball; x < (m / ball) * ball + ball; ++x) flat[x] = true;
  }
  std::vector<long> free;
  for (long x = 0; x < grid.leaves(); ++x) {
    if (!flat[x]) free.push_back(x);
  }
  double count = std::pow(static_cast<double>(targets), static_cast<double>(free.size()));
  if (count > 1e6) throw CapExceeded("more than 10^6 flat maps");
  std::vector<GridMap> out;
  std::vector<int> digits(free.size(), 0);
  while (true) {
    std::vector<int> v(grid.leaves(), 0);
    for (std::size_t i = 0; i < free.size(); ++i) v[free[i]] = digits[i];
    out.emplace_back(grid, targets, std::move(v), rho);
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == targets) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

// --------------------------------------------------------- automorphisms

namespace {

// Marked leaves below each node, per level.
std::vector<std::vector<int>> marked_counts(const BallGrid& g) {
  std::vector<std::vector<int>> c(g.depth() + 1);
  for (int l = 0; l <= g.depth(); ++l) {
    c[l].assign(g.nodes_at(l), 0);
    for (int m : g.marked()) ++c[l][g.ancestor(m, l)];
  }
  return c;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

// Slot permutations of the children of one node: marked children stay.
std::vector<std::vector<int>> slot_permutations(int p, const std::vector<bool>& fixed) {
  std::vector<int> free;
  for (int j = 0; j < p; ++j) {
    if (!fixed[j]) free.push_back(j);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> img = free;
  do {
    std::vector<int> pi(p);
    std::iota(pi.begin(), pi.end(), 0);
    for (std::size_t i = 0; i < free.size(); ++i) pi[free[i]] = img[i];
    out.push_back(pi);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// Local automorphisms of the subtree at (level, node) as offset maps.
std::vector<std::vector<long>> local_automorphisms(const BallGrid& g,
                                                   const std::vector<std::vector<int>>& mc,
                                                   int level, long node) {
  if (level == g.depth()) return {{0}};
  const int p = g.p();
  const long size = ipow(p, g.depth() - level - 1);
  std::vector<bool> fixed(p);
  std::vector<std::vector<std::vector<long>>> child(p);
  for (int j = 0; j < p; ++j) {
    fixed[j] = mc[level + 1][node * p + j] > 0;
    child[j] = local_automorphisms(g, mc, level + 1, node * p + j);
  }
  std::vector<std::vector<long>> out;
  for (const auto& pi : slot_permutations(p, fixed)) {
    std::vector<std::size_t> choice(p, 0);
    while (true) {
      std::vector<long> perm(size * p);
      for (int j = 0; j < p; ++j) {
        const auto& c = child[j][choice[j]];
        for (long o = 0; o < size; ++o) perm[j * size + o] = pi[j] * size + c[o];
      }
      out.push_back(std::move(perm));
      int j = 0;
      while (j < p && ++choice[j] == child[j].size()) choice[j++] = 0;
      if (j == p) break;
    }
  }
  return out;
}

}  // namespace

std::uint64_t automorphism_order(const BallGrid& g) {
  const auto mc = marked_counts(g);
  std::uint64_t order = 1;
  for (int l = 0; l < g.depth(); ++l) {
    for (long i = 0; i < g.nodes_at(l); ++i) {
      int free = 0;
      for (int j = 0; j < g.p(); ++j) free += mc[l + 1][i * g.p() + j] == 0;
      for (int f = 2; f <= free; ++f) order = sat_mul(order, static_cast<std::uint64_t>(f));
    }
  }
  return order;
}

std::vector<LeafPerm> automorphisms(const BallGrid& g, std::uint64_t cap) {
  const std::uint64_t order = automorphism_order(g);
  if (order > cap) {
    throw CapExceeded("automorphism group has " + std::to_string(order) + " elements, cap is " +
                      std::to_string(cap) + "; use generators");
  }
  return local_automorphisms(g, marked_counts(g), 0, 0);
}

std::vector<LeafPerm> automorphism_generators(const BallGrid& g) {
  const auto mc = marked_counts(g);
  std::vector<LeafPerm> out;
  const int p = g.p();
  for (int l = 0; l < g.depth(); ++l) {
    const long size = ipow(p, g.depth() - l - 1);
    for (long i = 0; i < g.nodes_at(l); ++i) {
      std::vector<int> free;
      for (int j = 0; j < p; ++j) {
        if (mc[l + 1][i * p + j] == 0) free.push_back(j);
      }
      for (std::size_t t = 0; t + 1 < free.size(); ++t) {
        LeafPerm perm(g.leaves());
        std::iota(perm.begin(), perm.end(), 0L);
        const long base = i * size * p;
        for (long o = 0; o < size; ++o) {
          std::swap(perm[base + free[t] * size + o], perm[base + free[t + 1] * size + o]);
        }
        out.push_back(std::move(perm));
      }
    }
  }
  return out;
}

GridMap act(const LeafPerm& phi, const GridMap& f) {
  if (static_cast<long>(phi.size()) != f.grid().leaves()) throw std::invalid_argument("permutation size");
  std::vector<int> v(f.values().size());
  for (long x = 0; x < f.grid().leaves(); ++x) v[phi[x]] = f.at(x);
  return GridMap(f.grid(), f.targets(), std::move(v), f.rho());
}

namespace {

struct Block {
  std::vector<int> values;
  std::vector<long> leaves;  // original leaf at each canonical position
};

Block lexmin_block(const GridMap& f, const std::vector<std::vector<int>>& mc, int level, long node) {
  const BallGrid& g = f.grid();
  if (level == g.depth()) return {{f.at(node)}, {node}};
  const int p = g.p();
  std::vector<Block> child(p);
  std::vector<int> free_slots, free_children;
  for (int j = 0; j < p; ++j) {
    child[j] = lexmin_block(f, mc, level + 1, node * p + j);
    if (mc[level + 1][node * p + j] == 0) {
      free_slots.push_back(j);
      free_children.push_back(j);
    }
  }
  std::stable_sort(free_children.begin(), free_children.end(),
                   [&](int a, int b) { return child[a].values < child[b].values; });
  std::vector<int> at_slot(p);
  std::iota(at_slot.begin(), at_slot.end(), 0);
  for (std::size_t t = 0; t < free_slots.size(); ++t) at_slot[free_slots[t]] = free_children[t];
  Block out;
  for (int j = 0; j < p; ++j) {
    const Block& c = child[at_slot[j]];
    out.values.insert(out.values.end(), c.values.begin(), c.values.end());
    out.leaves.insert(out.leaves.end(), c.leaves.begin(), c.leaves.end());
  }
  return out;
}

}  // namespace

Canonical lexmin(const GridMap& f) {
  Block b = lexmin_block(f, marked_counts(f.grid()), 0, 0);
  Canonical c;
  c.values = std::move(b.values);
  c.certificate.assign(f.grid().leaves(), 0);
  for (long j = 0; j < f.grid().leaves(); ++j) c.certificate[b.leaves[j]] = j;
  return c;
}

std::vector<int> lexmin_by_enumeration(const GridMap& f, std::uint64_t cap) {
  std::vector<int> best = f.values();
  for (const LeafPerm& phi : automorphisms(f.grid(), cap)) {
    std::vector<int> v(f.values().size());
    for (long x = 0; x < f.grid().leaves(); ++x) v[phi[x]] = f.at(x);
    best = std::min(best, v);
  }
  return best;
}

// ----------------------------------------------------- lifting and wedge

GridMap lift(const GridMap& f, int levels) {
  if (levels < 0) throw std::invalid_argument("lift by a negative number of levels");
  const BallGrid& g = f.grid();
  const long s = ipow(g.p(), levels);
  std::vector<int> marked;
  for (int m : g.marked()) marked.push_back(static_cast<int>(m * s));
  BallGrid lg(g.p(), g.depth() + levels, std::move(marked), g.hat());
  std::vector<int> v(lg.leaves());
  for (long x = 0; x < lg.leaves(); ++x) v[x] = f.at(x / s);
  return GridMap(std::move(lg), f.targets(), std::move(v), f.rho());
}

Wedge wedge(const GridMap& f, const GridMap& g) {
  if (f.targets() != g.targets()) throw std::invalid_argument("wedge of maps with different targets");
  if (f.grid().p() != g.grid().p() || f.grid().k() != g.grid().k() ||
      f.grid().hat() != g.grid().hat()) {
    throw std::invalid_argument("wedge needs the same p, k and grid model");
  }
  if (f.rho() != g.rho()) throw std::invalid_argument("wedge needs the same flatness radius");
  return {f, g};
}

std::string_view kappa_name(Kappa k) {
  switch (k) {
    case Kappa::kInsert: return "insert";
    case Kappa::kInsertDeep: return "insert-deep";
  }
  return "?";
}

namespace {

// Depth of the inserted block and the offset of the copy inside it.
int insert_levels(const GridMap& g, Kappa kappa) {
  return g.grid().depth() + (kappa == Kappa::kInsertDeep ? 1 : 0);
}

}  // namespace

GridMap chi_star(const Wedge& h, Kappa kappa) {
  const GridMap& f = h.first;
  const GridMap& g = h.second;
  const BallGrid& fg = f.grid();
  const int levels = insert_levels(g, kappa);
  const long block = ipow(fg.p(), levels);
  const long gl = g.grid().leaves();
  std::vector<int> marked;
  std::vector<int> slot(fg.leaves(), -1);
  for (std::size_t q = 0; q < fg.marked().size(); ++q) {
    slot[fg.marked()[q]] = static_cast<int>(q);
    marked.push_back(static_cast<int>(fg.marked()[q] * block + g.grid().marked()[q]));
  }
  BallGrid out(fg.p(), fg.depth() + levels, std::move(marked), fg.hat());
  std::vector<int> v(out.leaves(), 0);
  for (long x = 0; x < out.leaves(); ++x) {
    const long top = x / block, y = x % block;
    if (slot[top] < 0) {
      v[x] = f.at(top);
    } else if (y < gl) {
      // Below s (kInsert) or below s0 (kInsertDeep, first digit 0).
      v[x] = g.at(y);
    }
  }
  return GridMap(std::move(out), f.targets(), std::move(v), f.rho());
}

GridMap compose_maps(const GridMap& f, const GridMap& g, Kappa kappa) {
  return chi_star(wedge(f, g), kappa);
}

// ---------------------------------------------------------------- classes

namespace {

struct KeyBuilder {
  const GridMap& f;
  std::vector<std::vector<int>> mc;
  ClassKey types;

  // Reduced form of an unmarked subtree.
  std::string form(int level, long node) const {
    const BallGrid& g = f.grid();
    if (level == g.depth()) return std::to_string(f.at(node));
    std::vector<std::string> c;
    for (int j = 0; j < g.p(); ++j) c.push_back(form(level + 1, node * g.p() + j));
    const bool same = std::all_of(c.begin(), c.end(), [&](const std::string& s) { return s == c[0]; });
    if (same && c[0].find('(') == std::string::npos) return c[0];
    std::sort(c.begin(), c.end());
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + c[i];
    return s + ")";
  }

  void skeleton(int level, long node) {
    const BallGrid& g = f.grid();
    if (level == g.depth()) return;
    std::vector<std::string> off;
    int branches = 0;
    for (int j = 0; j < g.p(); ++j) {
      const long c = node * g.p() + j;
      if (mc[level + 1][c] > 0) {
        ++branches;
        skeleton(level + 1, c);
      } else {
        off.push_back(form(level + 1, c));
      }
    }
    const bool trivial = branches == 1 && std::all_of(off.begin(), off.end(),
                                                      [](const std::string& s) { return s == "0"; });
    if (trivial) return;
    std::sort(off.begin(), off.end());
    std::string t = branches == 1 ? "[" : "s" + std::to_string(branches) + "[";
    for (std::size_t i = 0; i < off.size(); ++i) t += (i ? "," : "") + off[i];
    types.push_back(t + "]");
  }
};

}  // namespace

ClassKey class_key(const GridMap& f) {
  KeyBuilder b{f, marked_counts(f.grid()), {}};
  b.skeleton(0, 0);
  std::sort(b.types.begin(), b.types.end());
  return b.types;
}

std::string key_to_string(const ClassKey& key) {
  if (key.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < key.size(); ++i) s += (i ? " + " : "") + key[i];
  return s;
}

WrapClass canonicalize(const GridMap& f) {
  Canonical c = lexmin(f);
  return {class_key(f), GridMap(f.grid(), f.targets(), std::move(c.values), f.rho()),
          std::move(c.certificate)};
}

WrapClass compose(const GridMap& f, const GridMap& g, Kappa kappa) {
  return canonicalize(compose_maps(f, g, kappa));
}

bool same_orbit(const GridMap& f, const GridMap& g) {
  return f.grid() == g.grid() && lexmin(f).values == lexmin(g).values;
}

// ------------------------------------------------------------- transport

namespace {

long edge_offset(const BallGrid& g, int level) {
  long off = 0;
  for (int l = 1; l < level; ++l) off += g.nodes_at(l);
  return off;
}

std::pair<int, long> edge_position(const BallGrid& g, long edge) {
  for (int l = 1; l <= g.depth(); ++l) {
    if (edge < g.nodes_at(l)) return {l, edge};
    edge -= g.nodes_at(l);
  }
  throw std::out_of_range("edge index");
}

}  // namespace

TransportMap TransportMap::trivial(const GridMap& base, MagmaPtr group) {
  if (!group) throw std::invalid_argument("null structure group");
  if (base.grid().hat()) throw std::invalid_argument("base map must live on the plain grid");
  BallGrid hat = BallGrid::standard(base.grid().p(), base.grid().depth(), base.grid().k(), true);
  std::vector<std::vector<int>> labels;
  const int e = group->unit_or_throw();
  for (int l = 1; l <= hat.depth(); ++l) labels.emplace_back(hat.nodes_at(l), e);
  return {base, std::move(group), std::move(hat), std::move(labels)};
}

int TransportMap::transport(long leaf) const {
  int v = group->unit_or_throw();
  for (int l = 1; l <= hat.depth(); ++l) v = group->mul(v, labels[l - 1][hat.ancestor(leaf, l)]);
  return v;
}

std::vector<int> TransportMap::endpoints() const {
  std::vector<int> out;
  for (int m : hat.marked()) out.push_back(transport(m));
  return out;
}

long TransportMap::edge_count() const { return edge_offset(hat, hat.depth() + 1); }

int& TransportMap::label(long edge) {
  auto [l, i] = edge_position(hat, edge);
  return labels[l - 1][i];
}

int TransportMap::label(long edge) const {
  auto [l, i] = edge_position(hat, edge);
  return labels[l - 1][i];
}

std::vector<int> holonomy(const TransportMap& t) {
  if (!t.hat.hat()) throw std::invalid_argument("holonomy needs a hat grid");
  const std::vector<int> g = t.endpoints();
  const int k = t.hat.k();
  std::vector<int> h;
  for (int q = 0; q < k; ++q) h.push_back(t.group->mul(t.group->inverse_or_throw(g[q]), g[q + k]));
  return h;
}

TransportMap right_translate(const TransportMap& t, int z) {
  TransportMap r = t;
  if (t.hat.depth() == 0) throw std::invalid_argument("translation needs depth >= 1");
  for (int& x : r.labels.back()) x = t.group->mul(x, z);
  return r;
}

TransportMap left_translate(const TransportMap& t, int z) {
  TransportMap r = t;
  if (t.hat.depth() == 0) throw std::invalid_argument("translation needs depth >= 1");
  for (int& x : r.labels.front()) x = t.group->mul(z, x);
  return r;
}

TransportMap act_on_labels(const LeafPerm& phi, const TransportMap& t) {
  const BallGrid& g = t.hat;
  if (static_cast<long>(phi.size()) != g.leaves()) throw std::invalid_argument("permutation size");
  for (int m : g.marked()) {
    if (phi[m] != m) throw std::invalid_argument("automorphism moves a marked leaf");
  }
  TransportMap r = t;
  for (int l = 1; l <= g.depth(); ++l) {
    const long span = g.leaves() / g.nodes_at(l);
    for (long i = 0; i < g.nodes_at(l); ++i) {
      r.labels[l - 1][g.ancestor(phi[i * span], l)] = t.labels[l - 1][i];
    }
  }
  return r;
}

TransportMap compose_transport(const TransportMap& f, const TransportMap& g, Kappa kappa) {
  if (f.group != g.group && !(f.group->table() == g.group->table())) {
    throw std::invalid_argument("transport maps over different groups");
  }
  const FiniteMagma& G = *f.group;
  const GridMap base = compose_maps(f.base, g.base, kappa);
  const BallGrid& fh = f.hat;
  const int levels = g.hat.depth() + (kappa == Kappa::kInsertDeep ? 1 : 0);
  const int shift = kappa == Kappa::kInsertDeep ? 1 : 0;  // extra edge level above the copy
  const long block = ipow(fh.p(), levels);
  std::vector<int> marked, slot(fh.leaves(), -1);
  for (std::size_t q = 0; q < fh.marked().size(); ++q) {
    slot[fh.marked()[q]] = static_cast<int>(q);
    marked.push_back(static_cast<int>(fh.marked()[q] * block + g.hat.marked()[q]));
  }
  BallGrid hat(fh.p(), fh.depth() + levels, std::move(marked), true);
  const std::vector<int> ge = g.endpoints();
  const int e = G.unit_or_throw();
  std::vector<std::vector<int>> labels(hat.depth());
  for (int l = 1; l <= hat.depth(); ++l) {
    labels[l - 1].assign(hat.nodes_at(l), e);
    if (l <= fh.depth()) {
      labels[l - 1] = f.labels[l - 1];
      continue;
    }
    const int r = l - fh.depth();  // level inside the inserted block
    const long width = ipow(fh.p(), r);
    for (long i = 0; i < hat.nodes_at(l); ++i) {
      const int q = slot[i / width];
      if (q < 0 || r <= shift) continue;
      const long j = i % width;
      const int rg = r - shift;
      const long gw = ipow(fh.p(), rg);
      if (j >= gw) continue;  // kInsertDeep: outside the copy below s0
      int lab = g.labels[rg - 1][j];
      if (rg == 1) lab = G.mul(G.inverse_or_throw(ge[hat.pairing(q)]), lab);
      labels[l - 1][i] = lab;
    }
  }
  return {base, f.group, std::move(hat), std::move(labels)};
}

TransportClass transport_class(const TransportMap& t) { return {class_key(t.base), holonomy(t)}; }

std::vector<TransportMap> enumerate_labelings(const TransportMap& t, const std::vector<long>& edges) {
  const int n = t.group->size();
  double count = std::pow(static_cast<double>(n), static_cast<double>(edges.size()));
  if (count > 1e6) throw CapExceeded("more than 10^6 labelings");
  std::vector<TransportMap> out;
  std::vector<int> digits(edges.size(), 0);
  while (true) {
    TransportMap r = t;
    for (std::size_t i = 0; i < edges.size(); ++i) r.label(edges[i]) = digits[i];
    out.push_back(std::move(r));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == n) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

std::vector<long> marked_path_edges(const BallGrid& hat) {
  std::set<long> e;
  for (int m : hat.marked()) {
    for (int l = 1; l <= hat.depth(); ++l) e.insert(edge_offset(hat, l) + hat.ancestor(m, l));
  }
  return {e.begin(), e.end()};
}

// -------------------------------------------------------------- reports

bool DeskAudit::all_hold() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawCheck& c) { return c.holds; });
}

std::string DeskAudit::to_string() const {
  std::ostringstream os;
  os << maps << " maps, " << classes << " classes\n";
  for (const auto& c : laws) {
    os << c.name << ": " << (c.holds ? "holds" : "fails") << " (" << c.checks << " checks)";
    if (!c.witness.empty()) os << " witness " << c.witness;
    os << "\n";
  }
  return os.str();
}

namespace {

std::string values_string(const GridMap& f) {
  std::string s;
  for (int v : f.values()) s += std::to_string(v);
  return s;
}

void record(LawCheck& c, bool ok, const std::function<std::string()>& witness) {
  ++c.checks;
  if (!ok && c.holds) {
    c.holds = false;
    c.witness = witness();
  }
}

}  // namespace

DeskAudit audit_desk_monoid(int p, int depth, int targets, int k, int rho) {
  const BallGrid grid = BallGrid::standard(p, depth, k);
  const std::vector<GridMap> maps = enumerate_flat_maps(grid, targets, rho);
  const GridMap w0 = GridMap::constant(grid, targets, rho);
  const int n = static_cast<int>(maps.size());
  DeskAudit a;
  a.maps = n;
  std::map<ClassKey, int> ids;
  auto id = [&](const GridMap& f) { return ids.emplace(class_key(f), static_cast<int>(ids.size())).first->second; };
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = id(maps[i]);
  a.classes = static_cast<long long>(ids.size());
  std::vector<std::vector<GridMap>> comp(n);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      comp[i].push_back(compose_maps(maps[i], maps[j]));
      table[i][j] = id(comp[i][j]);
    }
  }
  auto pair_name = [&](int i, int j) { return values_string(maps[i]) + "," + values_string(maps[j]); };

  LawCheck canon{"canonical form", true, 0, ""}, unit{"unit", true, 0, ""},
      cancel{"cancellation", true, 0, ""}, alt{"alternativity", true, 0, ""},
      assoc{"associativity", true, 0, ""}, comm{"commutativity", true, 0, ""},
      well{"well-defined on classes", true, 0, ""}, kap{"kappa independence", true, 0, ""};

  const std::uint64_t order = automorphism_order(grid);
  const std::vector<LeafPerm> autos = order <= 64 ? automorphisms(grid) : automorphism_generators(grid);
  for (int i = 0; i < n; ++i) {
    const Canonical c = lexmin(maps[i]);
    const GridMap rep(grid, targets, c.values, rho);
    record(canon, act(c.certificate, maps[i]) == rep && lexmin(rep).values == rep.values() &&
                      (order > (1u << 14) || lexmin_by_enumeration(maps[i]) == c.values),
           [&] { return values_string(maps[i]); });
    for (const LeafPerm& phi : autos) {
      record(canon, lexmin(act(phi, maps[i])).values == c.values, [&] { return values_string(maps[i]); });
    }
  }
  for (int i = 0; i < n; ++i) {
    const GridMap& f = maps[i];
    record(unit, id(compose_maps(w0, f)) == cls[i] && id(compose_maps(f, w0)) == cls[i],
           [&] { return values_string(f); });
    // f o w0 is the depth-lifted f exactly.
    record(unit, same_orbit(compose_maps(f, w0), lift(f, depth)), [&] { return values_string(f); });
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      record(comm, table[i][j] == table[j][i], [&] { return pair_name(i, j); });
      record(kap, id(compose_maps(maps[i], maps[j], Kappa::kInsertDeep)) == table[i][j],
             [&] { return pair_name(i, j); });
      for (const LeafPerm& phi : autos) {
        record(well, id(compose_maps(act(phi, maps[i]), maps[j])) == table[i][j] &&
                         id(compose_maps(maps[i], act(phi, maps[j]))) == table[i][j],
               [&] { return pair_name(i, j); });
      }
      // (ff)g = f(fg) and (gf)f = g(ff).
      record(alt, id(compose_maps(comp[i][i], maps[j])) == id(compose_maps(maps[i], comp[i][j])) &&
                      id(compose_maps(comp[j][i], maps[i])) == id(compose_maps(maps[j], comp[i][i])),
             [&] { return pair_name(i, j); });
      for (int h = 0; h < n; ++h) {
        if (cls[i] != cls[h]) {
          record(cancel, table[i][j] != table[h][j] && table[j][i] != table[j][h],
                 [&] { return pair_name(i, h) + " | " + values_string(maps[j]); });
        } else {
          ++cancel.checks;
        }
      }
    }
  }
  // Associativity on all triples up to 4096, else on a fixed sample.
  std::mt19937_64 rng(7);
  const long long triples = static_cast<long long>(n) * n * n;
  const long long count = std::min<long long>(triples, 4096);
  for (long long t = 0; t < count; ++t) {
    long long code = triples <= 4096 ? t : static_cast<long long>(rng() % triples);
    const int i = static_cast<int>(code / (n * n)), j = static_cast<int>((code / n) % n),
              h = static_cast<int>(code % n);
    record(assoc, id(compose_maps(comp[i][j], maps[h])) == id(compose_maps(maps[i], comp[j][h])),
           [&] { return pair_name(i, j) + "," + values_string(maps[h]); });
  }
  a.laws = {canon, unit, cancel, alt, assoc, comm, well, kap};
  return a;
}

DeskAudit audit_transport(const std::vector<TransportMap>& sample) {
  DeskAudit a;
  if (sample.empty()) return a;
  const MagmaPtr& G = sample[0].group;
  const int n = static_cast<int>(sample.size());
  a.maps = n;
  std::map<TransportClass, int> ids;
  auto id = [&](const TransportClass& c) { return ids.emplace(c, static_cast<int>(ids.size())).first->second; };
  std::vector<TransportClass> tc(n);
  std::vector<int> cls(n);
  std::vector<std::vector<int>> hol(n);
  for (int i = 0; i < n; ++i) {
    tc[i] = transport_class(sample[i]);
    cls[i] = id(tc[i]);
    hol[i] = tc[i].holonomy;
  }
  a.classes = static_cast<long long>(ids.size());
  // Base classes of composites, computed once per base pair.
  std::map<std::pair<std::vector<int>, std::vector<int>>, ClassKey> base_keys;
  auto base_key = [&](const GridMap& f, const GridMap& g) -> const ClassKey& {
    auto key = std::make_pair(f.values(), g.values());
    auto it = base_keys.find(key);
    if (it == base_keys.end()) it = base_keys.emplace(key, class_key(compose_maps(f, g))).first;
    return it->second;
  };
  auto name = [&](int i) {
    std::string s = values_string(sample[i].base) + "/";
    for (const auto& row : sample[i].labels) {
      for (int x : row) s += G->name(x) + " ";
    }
    return s;
  };
  LawCheck morph{"holonomy morphism", true, 0, ""}, comm{"commutativity", true, 0, ""},
      cancel{"cancellation", true, 0, ""}, well{"well-defined on classes", true, 0, ""},
      inv{"holonomy invariance", true, 0, ""}, unit{"unit", true, 0, ""};
  const int k = sample[0].hat.k();
  auto product = [&](const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> r(k);
    for (int q = 0; q < k; ++q) r[q] = G->mul(x[q], y[q]);
    return r;
  };
  std::map<int, int> rep;  // class id -> first sample index
  for (int i = 0; i < n; ++i) rep.emplace(cls[i], i);
  const int nc = static_cast<int>(ids.size());
  std::vector<std::vector<int>> table(nc, std::vector<int>(nc, -1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const TransportMap c = compose_transport(sample[i], sample[j]);
      const std::vector<int> h = holonomy(c);
      record(morph, h == product(hol[i], hol[j]), [&] { return name(i) + "| " + name(j); });
      const int cij = id(TransportClass{base_key(sample[i].base, sample[j].base), h});
      int& slot = table[cls[i]][cls[j]];
      if (slot < 0) {
        slot = cij;
      } else {
        record(well, slot == cij, [&] { return name(i) + "| " + name(j); });
      }
    }
  }
  for (int x = 0; x < nc; ++x) {
    for (int y = 0; y < nc; ++y) {
      record(comm, table[x][y] == table[y][x],
             [&] { return name(rep.at(x)) + "| " + name(rep.at(y)); });
      for (int z = 0; z < nc; ++z) {
        if (x == z) continue;
        record(cancel, table[x][y] != table[z][y] && table[y][x] != table[y][z],
               [&] { return name(rep.at(x)) + "| " + name(rep.at(z)); });
      }
    }
  }
  const std::vector<LeafPerm> hat_autos = automorphism_order(sample[0].hat) <= 64
                                              ? automorphisms(sample[0].hat)
                                              : automorphism_generators(sample[0].hat);
  for (int i = 0; i < n; ++i) {
    for (int z = 0; z < G->size(); ++z) {
      // Right translation conjugates; left translation leaves h fixed.
      std::vector<int> conj(k);
      for (int q = 0; q < k; ++q) conj[q] = G->mul(G->mul(G->inverse_or_throw(z), hol[i][q]), z);
      record(inv, holonomy(right_translate(sample[i], z)) == conj &&
                      holonomy(left_translate(sample[i], z)) == hol[i],
             [&] { return name(i); });
    }
    for (const LeafPerm& phi : hat_autos) {
      record(inv, holonomy(act_on_labels(phi, sample[i])) == hol[i], [&] { return name(i); });
    }
    const TransportMap u = TransportMap::trivial(
        GridMap::constant(sample[i].base.grid(), sample[i].base.targets(), sample[i].base.rho()), G);
    record(unit, transport_class(compose_transport(u, sample[i])) == tc[i] &&
                     transport_class(compose_transport(sample[i], u)) == tc[i],
           [&] { return name(i); });
  }
  a.laws = {morph, comm, cancel, well, inv, unit};
  return a;
}

namespace {

struct ClassElem {
  TransportClass cls;
  TransportMap rep;
  bool operator==(const ClassElem& o) const { return cls == o.cls; }
};

std::string class_name(const ClassElem& c, const FiniteMagma& g) {
  std::string s = key_to_string(c.cls.key) + " | h=";
  for (std::size_t q = 0; q < c.cls.holonomy.size(); ++q) s += (q ? "," : "") + g.name(c.cls.holonomy[q]);
  return s;
}

bool is_commutative(const FiniteMagma& g) {
  for (int x = 0; x < g.size(); ++x) {
    for (int y = 0; y < g.size(); ++y) {
      if (g.mul(x, y) != g.mul(y, x)) return false;
    }
  }
  return true;
}

}  // namespace

WrapGroupReport wrap_group(const std::vector<TransportMap>& sample) {
  WrapGroupReport r;
  if (sample.empty()) throw std::invalid_argument("empty sample");
  const MagmaPtr G = sample[0].group;
  const int k = sample[0].hat.k();
  // Holonomy image: the subgroup of G^k generated by the sample.
  std::set<std::vector<int>> image;
  for (const auto& t : sample) image.insert(holonomy(t));
  image.insert(std::vector<int>(k, G->unit_or_throw()));
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::vector<int>> cur(image.begin(), image.end());
    for (const auto& x : cur) {
      for (const auto& y : cur) {
        std::vector<int> z(k);
        for (int q = 0; q < k; ++q) z[q] = G->mul(x[q], y[q]);
        grew = image.insert(z).second || grew;
      }
    }
  }
  r.holonomy_image = static_cast<long long>(image.size());
  r.holonomy_image_group = std::all_of(image.begin(), image.end(), [&](const std::vector<int>& x) {
    std::vector<int> xi(k);
    for (int q = 0; q < k; ++q) xi[q] = G->inverse_or_throw(x[q]);
    return image.count(xi) > 0;
  });

  std::vector<ClassElem> carrier;
  for (const auto& t : sample) {
    ClassElem c{transport_class(t), t};
    if (std::find(carrier.begin(), carrier.end(), c) == carrier.end()) carrier.push_back(std::move(c));
  }
  r.monoid_elements = static_cast<long long>(carrier.size());
  const GridMap& b0 = sample[0].base;
  const TransportMap unit = TransportMap::trivial(GridMap::constant(b0.grid(), b0.targets(), b0.rho()), G);
  PresentedMonoid<ClassElem> m{
      carrier, ClassElem{transport_class(unit), unit},
      [](const ClassElem& x, const ClassElem& y) {
        TransportMap c = compose_transport(x.rep, y.rep);
        return ClassElem{transport_class(c), std::move(c)};
      },
      [G](const ClassElem& x) { return class_name(x, *G); }};

  if (is_commutative(*G)) {
    const GrothendieckGroup<ClassElem> gg(m);
    r.commutative_group = true;
    r.eta_injective = gg.eta_injective();
    bool ok = true;
    std::vector<FormalDifference<ClassElem>> diffs;
    for (const auto& x : carrier) {
      for (const auto& y : carrier) diffs.push_back(gg.difference(x, y));
    }
    for (const auto& d : diffs) {
      ok = ok && gg.equal(gg.add(d, gg.negate(d)), gg.zero()) && gg.equal(gg.add(d, gg.zero()), d);
      ++r.group_checks;
    }
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100 && !diffs.empty(); ++t) {
      const auto& x = diffs[rng() % diffs.size()];
      const auto& y = diffs[rng() % diffs.size()];
      const auto& z = diffs[rng() % diffs.size()];
      ok = ok && gg.equal(gg.add(gg.add(x, y), z), gg.add(x, gg.add(y, z))) &&
           gg.equal(gg.add(x, y), gg.add(y, x));
      ++r.group_checks;
    }
    r.group_axioms = ok;
    r.detail = "Grothendieck completion of " + std::to_string(carrier.size()) + " classes";
  } else {
    std::mt19937_64 rng(9);
    bool ok = true;
    for (int t = 0; t < 200; ++t) {
      const auto& x = carrier[rng() % carrier.size()];
      const auto& y = carrier[rng() % carrier.size()];
      const auto& z = carrier[rng() % carrier.size()];
      ok = ok && m.op(m.op(x, y), z) == m.op(x, m.op(y, z));
    }
    r.sampled_associativity = ok;
    r.detail = "non-commutative structure group: holonomy image of order " + std::to_string(image.size());
  }
  return r;
}

}  // namespace ultrawrap::wrap
