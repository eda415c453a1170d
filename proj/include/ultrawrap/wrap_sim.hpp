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

// Finite model of wrap monoids. The domain is the leaf set of a depth-d
// p-ary ball tree with marked leaves; maps send leaves to a pointed set
// N = {0 = y0, 1, ..., n-1} and are flat (equal to y0) near the marked
// leaves. Composition inserts a copy of the second map into the flat ball
// below each marked leaf of the first. Classes identify maps related by
// tree automorphisms fixing the marked leaves, by depth lifting and by
// permuting the annuli around the marked leaf.

#ifndef ULTRAWRAP_WRAP_SIM_HPP_
#define ULTRAWRAP_WRAP_SIM_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ultrawrap/group_constructions.hpp"

namespace ultrawrap::wrap {

class BallGrid {
 public:
  // Marked leaves as indices (base-p addresses read as integers). A hat
  // grid has 2k marked leaves; marked q and q + k are paired.
  BallGrid(int p, int depth, std::vector<int> marked, bool hat = false);
  // Marked leaves are the first k (or 2k) leaves in address order.
  static BallGrid standard(int p, int depth, int k, bool hat = false);

  int p() const { return p_; }
  int depth() const { return d_; }
  bool hat() const { return hat_; }
  int k() const { return hat_ ? static_cast<int>(marked_.size()) / 2 : static_cast<int>(marked_.size()); }
  long leaves() const { return leaves_; }
  const std::vector<int>& marked() const { return marked_; }
  // Xi: index of the base marked point a hat marked leaf is paired with.
  int pairing(int q) const { return hat_ ? q % k() : q; }

  std::string address(long leaf) const;
  long leaf_index(const std::string& address) const;
  // Levels up to the common ancestor: d - |common prefix|.
  int distance(long x, long y) const;
  // Nodes at level l are 0..p^l - 1; node of a leaf at level l.
  long ancestor(long leaf, int level) const;
  long nodes_at(int level) const;

  friend bool operator==(const BallGrid&, const BallGrid&) = default;

 private:
  int p_, d_;
  bool hat_;
  long leaves_;
  std::vector<int> marked_;
};

class GridMap {
 public:
  // Every leaf within distance rho of a marked leaf must map to y0 = 0.
  GridMap(BallGrid grid, int targets, std::vector<int> values, int rho = 1);
  // The constant map w0.
  static GridMap constant(const BallGrid& grid, int targets, int rho = 1);

  const BallGrid& grid() const { return grid_; }
  int targets() const { return n_; }
  int rho() const { return rho_; }
  const std::vector<int>& values() const { return values_; }
  int at(long leaf) const { return values_[leaf]; }
  bool is_constant() const;

  friend bool operator==(const GridMap&, const GridMap&) = default;

 private:
  BallGrid grid_;
  int n_;
  int rho_;
  std::vector<int> values_;
};

// All flat maps on the grid (n^free leaves of them).
std::vector<GridMap> enumerate_flat_maps(const BallGrid& grid, int targets, int rho = 1);

// ----------------------------------------------------------- automorphisms

// Leaf permutation: leaf x goes to perm[x].
using LeafPerm = std::vector<long>;

// Order of the group of tree automorphisms fixing every marked leaf.
std::uint64_t automorphism_order(const BallGrid& grid);
// Full listing; CapExceeded when the order exceeds cap.
std::vector<LeafPerm> automorphisms(const BallGrid& grid, std::uint64_t cap = 1u << 16);
// Generators: swaps of adjacent movable children at every node.
std::vector<LeafPerm> automorphism_generators(const BallGrid& grid);
// (phi f)(phi(x)) = f(x).
GridMap act(const LeafPerm& phi, const GridMap& f);

// Lexicographic minimum of the orbit with an automorphism reaching it.
struct Canonical {
  std::vector<int> values;
  LeafPerm certificate;
};
Canonical lexmin(const GridMap& f);
// The same by enumerating the whole group.
std::vector<int> lexmin_by_enumeration(const GridMap& f, std::uint64_t cap = 1u << 16);

// ----------------------------------------------------- lifting and wedge

// Each leaf x becomes p^levels leaves x y with value f(x); marked s -> s0..0.
GridMap lift(const GridMap& f, int levels = 1);

// Disjoint union of the two grids with the marked leaves identified.
struct Wedge {
  GridMap first, second;
  long leaves() const { return first.grid().leaves() + second.grid().leaves(); }
  const GridMap& restrict_to(int copy) const { return copy == 1 ? first : second; }
};
Wedge wedge(const GridMap& f, const GridMap& g);

// The leaf bijection realizing the pinch map. kInsert puts the second copy
// in the ball of radius d_g below each marked leaf of the first copy (depth
// d_f + d_g); kInsertDeep puts it one level further down, below s0.
enum class Kappa { kInsert, kInsertDeep };
std::string_view kappa_name(Kappa k);

GridMap chi_star(const Wedge& h, Kappa kappa = Kappa::kInsert);
GridMap compose_maps(const GridMap& f, const GridMap& g, Kappa kappa = Kappa::kInsert);

// ---------------------------------------------------------------- classes

// Sorted node types of the non-trivial skeleton nodes. A node type lists
// the reduced forms of the children off the skeleton (and the number of
// skeleton children when it branches). Reduced forms collapse a node whose
// children are equal leaves, so lifting does not change them.
using ClassKey = std::vector<std::string>;
ClassKey class_key(const GridMap& f);
std::string key_to_string(const ClassKey& key);

struct WrapClass {
  ClassKey key;
  GridMap representative;  // lexicographic minimum of the orbit
  LeafPerm certificate;    // automorphism taking the input to it
  bool operator==(const WrapClass& o) const { return key == o.key; }
};
WrapClass canonicalize(const GridMap& f);
WrapClass compose(const GridMap& f, const GridMap& g, Kappa kappa = Kappa::kInsert);
bool same_orbit(const GridMap& f, const GridMap& g);

// ------------------------------------------------------------- transport

// Trivial bundle N x G over the hat tree. labels[l - 1][i] labels the edge
// into node i at level l; the transport value at a leaf is the ordered
// product of labels along its root path.
struct TransportMap {
  GridMap base;
  MagmaPtr group;
  BallGrid hat;
  std::vector<std::vector<int>> labels;

  // Identity labels over hat = BallGrid::standard(p, d, k, true).
  static TransportMap trivial(const GridMap& base, MagmaPtr group);
  int transport(long leaf) const;
  // g_q for the 2k hat marked leaves.
  std::vector<int> endpoints() const;
  long edge_count() const;
  int& label(long edge);
  int label(long edge) const;
};

// h_q = g_q^-1 g_{q+k}.
std::vector<int> holonomy(const TransportMap& t);
// Every transport value multiplied on the right (or left) by z.
TransportMap right_translate(const TransportMap& t, int z);
TransportMap left_translate(const TransportMap& t, int z);
// Automorphism of the hat tree fixing its marked leaves, applied to labels.
TransportMap act_on_labels(const LeafPerm& phi, const TransportMap& t);

// Base maps compose as above. Labels: the first map's on top, below each
// hat marked leaf q a copy of the second's with its top edges multiplied on
// the left by (g_q')^-1, g_q' the second map's endpoint paired with q; all
// other new edges carry e. Then h(f o g) = h(f) h(g).
TransportMap compose_transport(const TransportMap& f, const TransportMap& g,
                               Kappa kappa = Kappa::kInsert);

struct TransportClass {
  ClassKey key;
  std::vector<int> holonomy;
  friend bool operator==(const TransportClass&, const TransportClass&) = default;
  friend auto operator<=>(const TransportClass&, const TransportClass&) = default;
};
TransportClass transport_class(const TransportMap& t);

// All labelings that use the given edges (others e); edges are numbered
// level by level, top first.
std::vector<TransportMap> enumerate_labelings(const TransportMap& t, const std::vector<long>& edges);
// Edges on the root paths to the hat marked leaves.
std::vector<long> marked_path_edges(const BallGrid& hat);

// -------------------------------------------------------------- reports

struct LawCheck {
  std::string name;
  bool holds = true;
  long long checks = 0;
  std::string witness;
};

struct DeskAudit {
  long long maps = 0;
  long long classes = 0;
  std::vector<LawCheck> laws;
  bool all_hold() const;
  std::string to_string() const;
};

// Unit, cancellation, alternativity, associativity, commutativity,
// well-definedness on orbit mates and kappa independence, exhaustively on
// all flat maps of the standard grid.
DeskAudit audit_desk_monoid(int p, int depth, int targets, int k = 1, int rho = 1);

// Transport classes over all flat maps x the given labelings: commutativity,
// cancellation, the holonomy morphism and holonomy invariance.
DeskAudit audit_transport(const std::vector<TransportMap>& sample);

struct WrapGroupReport {
  bool commutative_group = false;
  long long monoid_elements = 0;
  long long group_checks = 0;
  bool group_axioms = false;
  bool eta_injective = false;
  // Holonomy image as a subgroup of G^k (always filled).
  long long holonomy_image = 0;
  bool holonomy_image_group = false;
  std::optional<bool> sampled_associativity;
  std::string detail;
};

// Class monoid of the sample under compose. Commutative G: Grothendieck
// completion with group axioms checked on differences of the carrier.
// Otherwise the holonomy image subgroup, plus associativity on the sample.
WrapGroupReport wrap_group(const std::vector<TransportMap>& sample);

}  // namespace ultrawrap::wrap

#endif  // ULTRAWRAP_WRAP_SIM_HPP_
