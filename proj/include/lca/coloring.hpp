// Copyright 2025 The lca-advice Authors
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

// Vertex coloring with advice: the Delta-coloring pipeline (clustered
// O(Delta^2) coloring, Linial reduction, list coloring, Delta+1 -> Delta
// through relays and recoloring paths) and the uniform 1-bit 3-coloring
// schema with its parity decoder.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lca/schema.hpp"

namespace lca {

// Every named constant of the coloring schemas with its active value.
// Distances are hop counts; thresholds are node or edge counts.
struct ColoringConstants {
  std::string profile = "desk";
  int delta = 2;
  int alpha = 2;

  // O(Delta^2) coloring: ruling-set spacing of the clustering (100 a^2 log D).
  long cluster_radius = 8;
  // Cluster degree from which a cluster is high-degree (D^(10 a)).
  double high_degree = 1e18;
  // Internal volume below which a high-degree cluster is broken (D^(9a-2)).
  double broken_volume = 0;
  // Largest degree bucket; the initial palette is sum_{i <= max_bucket} D^i.
  int max_bucket = 8;
  // Bound on a cluster's radius after the re-partition, checked by the encoder.
  long cluster_reach = 32;

  // Delta+1 -> Delta: uncolored roots are pairwise >= far_distance apart
  // (2c log_D n; 0 = ceil(2 log2 n / log2 D)).
  long far_distance = 0;
  // Spacing of relay layers ((2a + 22) log D).
  long relay_spacing = 8;
  // Spacing of the 11-markers on recoloring paths (2a + 10).
  long marker_spacing = 14;
  // Longest recoloring path (0 = (far_distance - 2) / 2).
  long plan_radius = 0;

  // 3-coloring.
  long small_diameter = 0;     // 4000 D^9
  long ruling_spacing = 0;     // 2000 D^9
  long group_radius = 0;       // 600 D^9
  long group_candidates = 0;   // 12 D^6
  long candidate_spacing = 0;  // 50 D^3
  long path_reach = 0;         // 20 D^3
  long read_radius = 0;        // 30 D^3
  long search_radius = 0;      // 3000 D^9
  // Resampling budget per variable.
  long resample_factor = 10;
  // Exhaustive fallback for at most this many variables.
  int exhaustive_limit = 12;
};

// Literal constants (saturated at 2^62).
ColoringConstants paper_coloring_constants(int delta, int alpha);
// Desk-scale profile: the same roles with constants linear in Delta, chosen
// so that the worst-case separation arguments still hold.
ColoringConstants desk_coloring_constants(int delta, int alpha = 2);

// Effective far distance and plan radius for an n-node graph.
long effective_far_distance(const ColoringConstants& k, int n);
long effective_plan_radius(const ColoringConstants& k, int n);

// ---------------------------------------------------------------- Linial

// Palette after full reduction: q^2 for the smallest prime q > 2 Delta.
long linial_target(int delta);

struct LinialStep {
  int d = 0;    // polynomial degree
  long q = 0;   // field size
  long palette_in = 0;
  long palette_out = 0;
};

// The reduction schedule from a palette of size k (empty when k is
// already within the target).
std::vector<LinialStep> linial_schedule(long k, int delta);

// One round: color c (1-based) maps to a polynomial of degree d over F_q;
// a node takes the first point (x, p(x)) no neighbor's polynomial hits.
std::vector<long> linial_round(const Graph& g, const std::vector<long>& colors, const LinialStep& s);

// Iterates linial_round along linial_schedule(k, delta). Colors must be
// proper and in 1..k. rounds, when given, receives every intermediate
// coloring.
std::vector<long> linial_reduce(const Graph& g, const std::vector<long>& colors, long k, int delta,
                                std::vector<std::vector<long>>* rounds = nullptr);

// ---------------------------------------------------------- list coloring

// (deg+1)-list coloring by a sweep over the classes of a proper base
// coloring in ascending order; a node takes the smallest list color not
// used by an already colored neighbor. Lists must have size >= deg + 1.
std::vector<int> list_coloring(const Graph& g, const std::vector<long>& base,
                               const std::vector<std::vector<int>>& lists);

// ------------------------------------------------------ O(Delta^2) stage

struct ColorCluster {
  int center = -1;
  std::vector<int> members;
  long degree = 0;
  int bucket = 1;
  long color = 0;  // 1-based in the initial palette
  long index = 0;  // 0-based color within the bucket, written on the holders
  bool broken = false;
  // Color-bit holders, ascending ID.
  std::vector<int> holders;
};

struct InitialClustering {
  std::vector<int> ruling;     // I
  std::vector<int> survivors;  // I'
  std::vector<ColorCluster> clusters;
  std::vector<int> cluster_of;
  std::vector<int> broken_repaired;  // centers of broken clusters that survived
};

// Palette offset of a bucket: sum_{j < i} Delta^j over j >= 1.
long bucket_offset(int delta, int bucket);
// Bucket of a cluster degree: smallest i >= 1 with degree < Delta^i.
int bucket_of(int delta, long degree);
// Colors of the initial stage before the Linial step (cluster palette times
// Delta + 1 in-cluster colors).
long initial_palette(const ColoringConstants& k);

// Encoder side: clustering, refinement, re-partition, cluster colors and
// holders. Throws InfeasibleError naming the failing inequality.
InitialClustering build_initial_clustering(const Graph& g, const ColoringConstants& k);
Advice initial_coloring_advice(const Graph& g, const InitialClustering& c);

// Decoder on a whole graph. pre_linial, when given, receives the clustered
// coloring before the reduction.
std::vector<long> initial_coloring_decode(const Graph& g, const Advice& a, const ColoringConstants& k,
                                          std::vector<long>* pre_linial = nullptr);

// Output node value: a color in 1..linial_target(delta).
Schema initial_coloring_schema(const ColoringConstants& k);

// No-advice Delta+1 coloring from the O(Delta^2) coloring (input 0).
Schema list_coloring_schema(const ColoringConstants& k);

// ------------------------------------------------- Delta+1 -> Delta stage

// Partial colorings use 0 for uncolored.
struct RootReduction {
  std::vector<int> coloring;  // partial Delta-coloring
  std::vector<int> ruling;    // R
  std::vector<int> roots;     // the nodes left uncolored (a subset of R)
  std::vector<int> relays;
  std::vector<int> relay_layer;  // parallel to relays
  std::vector<int> relay_color;  // final colors, parallel to relays
  long far = 0;
};

// Decoder-side knowledge read from advice: the roots R, the relays, and the
// color every relay holds once its layer is processed (indexed by node).
struct RelayAdvice {
  std::vector<int> roots;
  std::vector<int> relays;
  std::vector<int> relay_color;
};

// The deterministic process shared by encoder and decoder: uncolor the
// color Delta+1, pick R, chain uncolored nodes to the nearest relay or root
// and recolor leaf to root with list coloring, then push every uncolored
// relay to its parent relay along a shortest path. With `given` the roots,
// relays and relay picks come from advice and are checked.
RootReduction reduce_to_roots(const Graph& g, const std::vector<int>& degree, const std::vector<int>& coloring,
                              const std::vector<long>& base, const ColoringConstants& k, int n_total,
                              const RelayAdvice* given = nullptr);

Advice reduce_to_roots_advice(const Graph& g, const std::vector<int>& degree, const RootReduction& r,
                              const ColoringConstants& k);

// Inputs: 0 = Delta+1 coloring, 1 = O(Delta^2) base coloring. Output: the
// partial Delta-coloring (0 = uncolored).
Schema reduce_to_roots_schema(const ColoringConstants& k);

struct RecolorPlan {
  int root = -1;  // the uncolored node
  // root = path[0], ..., path.back() = target.
  std::vector<int> path;
  // New color of every path node.
  std::vector<int> colors;
};

// For every uncolored node: the nearest target (degree < delta or two
// same-colored neighbors off the path) within `radius`, the path to it
// built from canonical segments between 11-marker positions, and the
// sequential recoloring along it. The combined application is verified
// proper before returning.
std::vector<RecolorPlan> find_recolor_plan(const Graph& g, const std::vector<int>& degree,
                                           const std::vector<int>& partial, int delta, long radius,
                                           long marker_spacing);

// Partial coloring with the plans applied.
std::vector<int> apply_recolor_plans(const std::vector<int>& partial, const std::vector<RecolorPlan>& plans);

// Canonical shortest path from a to b: from b, repeatedly step to the
// smallest-ID neighbor one closer to a.
std::vector<int> canonical_path(const Graph& g, int a, int b, long limit);

// Input 0: partial Delta-coloring. Markers 111 on targets, 11 every
// marker_spacing hops on recoloring paths, 1 on the next path node.
Schema fix_root_colors_schema(const ColoringConstants& k);

// Slots: 0 initial, 1 list coloring (deps 0), 2 reduce-to-roots (deps 1, 0),
// 3 fix-root-colors (deps 2).
std::vector<Schema> delta_coloring_parts(const ColoringConstants& k);
DependencyDag delta_coloring_dag();
Schema delta_schema(const ColoringConstants& k, const ComposeOptions& opt);

// ------------------------------------------------------------ 3-coloring

// Recolors a proper coloring into a greedy one (a node of color i has
// neighbors of every smaller color) by repeatedly lowering colors.
std::vector<int> make_greedy(const Graph& g, std::vector<int> colors);

struct ThreeColorGroup {
  int component = -1;
  int ruling = -1;        // r
  int chosen = -1;        // v_{r,C}
  std::vector<int> s;     // S_v
  std::vector<int> s2;    // S'_v
  std::vector<int> ones;  // nodes of the group with bit 1
};

struct ThreeColorEncoding {
  Advice advice;
  std::vector<int> greedy;
  // Component of G_{2,3} per node (-1 for color 1), and whether it is large.
  std::vector<int> component;
  std::vector<char> large;
  std::vector<ThreeColorGroup> groups;
  // Names of the separation inequalities verified on this instance.
  std::vector<std::string> checks;
  int variables = 0;
  long resample_rounds = 0;
  bool used_exhaustive = false;
};

// Lemma-style selection for node v of component `comp_nodes` (distances in
// the component): a node with two color-1 neighbors, else an adjacent pair
// with no common color-1 neighbor, both within `reach` of v; nodes outside
// `allowed` (when non-empty) are skipped. Empty when none exists.
std::vector<int> single_or_double(const Graph& g, const std::vector<int>& colors, const std::vector<char>& in_comp,
                                  int v, int reach, const std::vector<char>& allowed = {});

// Encoder; `proper` is any proper 3-coloring (solved when empty).
ThreeColorEncoding three_color_encode(const Graph& g, const std::vector<int>& proper, const ColoringConstants& k,
                                      std::uint64_t seed);

// Decoder on a whole graph; colors in {1, 2, 3}.
std::vector<int> three_color_decode_graph(const Graph& g, const Advice& a, const ColoringConstants& k);

int three_color_decoder_radius(const ColoringConstants& k);

// Uniform 1-bit schema; encode uses given[0].node as the proper coloring
// when present.
Schema three_coloring_schema(const ColoringConstants& k, std::uint64_t seed);

}  // namespace lca
