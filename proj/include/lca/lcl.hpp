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

// Locally checkable labelings and the one-bit schema for graphs of
// sub-exponential growth: clusters found through a distance coloring, the
// cluster color written on a path from the center, border labels written on
// an independent set, and exact search inside every cluster.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lca/schema.hpp"

namespace lca {

// Labels live in Solutions: out[v].node is v's node label (when
// node_alphabet > 0) and out[v].edge[j] the label of v's half of its j-th
// edge (when edge_alphabet > 0). -1 marks an unassigned label.
struct LclProblem {
  std::string name;
  int node_alphabet = 0;
  int edge_alphabet = 0;
  // Checkability radius.
  int radius = 1;
  // Node labels in the order exact search tries them (ascending when empty).
  std::vector<int> search_order;
  // Checker at node v; reads labels of nodes within `radius` of v only.
  // With partial = true unassigned labels may occur and the checker
  // rejects only when no extension can be accepted.
  std::function<bool(const Graph&, const Solution&, int v, bool partial)> check;
};

LclProblem coloring_lcl(int k);
// Node label 1 = in the set.
LclProblem mis_lcl();
// Half-edge label 1 = the edge leaves this endpoint; every node of degree
// >= 3 has an outgoing edge.
LclProblem sinkless_orientation_lcl();
// Node labels with radius 1: accepted (own label, sorted neighbor labels).
LclProblem truth_table_lcl(const std::string& name, int node_alphabet,
                           const std::vector<std::pair<int, std::vector<int>>>& accept);

// Nodes whose checker rejects a complete labeling.
std::vector<int> lcl_violations(const Graph& g, const LclProblem& p, const Solution& s);

// Bits per label: ceil(log2 |alphabet|), at least 1.
int label_bits(int alphabet);

// Exact search for labels of `free_nodes` given `fixed` (other labels set,
// free labels ignored). Nodes are visited in BFS order over the free nodes
// (roots and neighbors by ascending ID), labels in alphabet order; every
// checker touching the assigned node is consulted after each assignment.
// Returns nullopt when no labeling exists; throws search_exhausted past
// step_cap assignments.
std::optional<Solution> exact_search(const Graph& g, const LclProblem& p, const Solution& fixed,
                                     const std::vector<int>& free_nodes, long step_cap);
// Whole-graph labeling with everything free.
std::optional<Solution> solve_lcl(const Graph& g, const LclProblem& p, long step_cap);

struct LclConstants {
  int r = 1;
  // Degree bound of the family.
  int delta = 2;
  double c = 0.0;
  int x0 = 1;
  int x = 4;
  // Bound on the number of distance-5x colors.
  double palette_bound = 0.0;
  long search_cap = 5000000;
  // When > 0 the encoder rejects advice with a larger fraction of 1s.
  double sparsity_eps = 0.0;
  int y() const { return x / 2; }
};

// c = log2(1 + 1/delta^r)/(3r), x = max(4r, x0), palette bound 2^(5cx).
LclConstants make_lcl_constants(int r, int delta, int x0);

// Smallest x0 with ball_size(x) <= 2^(c x) for every x >= x0, for a ball
// size function of an infinite family (scanned up to max_x).
int family_x0(const std::function<double(int)>& ball_size, double c, int max_x = 10000000);

// Radius-limited BFS inside the nodes with alive[v] (all nodes when empty).
std::vector<int> residual_bfs(const Graph& g, const std::vector<char>& alive, int src, int limit);

// Smallest alpha in [x, 2x] with |N<=alpha(v)| >= delta^r |N=alpha+r(v)| in
// the residual graph; throws constants_infeasible when none exists.
int find_alpha(const Graph& g, const std::vector<char>& alive, int v, const LclConstants& k);

struct Cluster {
  int center = -1;
  int color = 0;
  int alpha = 0;
  std::vector<int> members;
  // Color path v_1..v_y, v_j at residual distance j-1 from the center.
  std::vector<int> path;
  // Residual sphere at distance alpha + r.
  std::vector<int> border;
  // Nodes whose labels are carried by the payload, ascending ID.
  std::vector<int> fixed;
  // Independent payload holders in N<=alpha, ascending ID.
  std::vector<int> payload;
};

struct ClusterLayout {
  std::vector<Cluster> clusters;
  std::vector<int> cluster_of;  // -1 for leftover nodes
  std::vector<int> distance_color;
};

// Clusters processed by ascending color of a greedy distance-5x coloring.
// Paths and payload holders are not filled.
ClusterLayout build_clustering(const Graph& g, const LclConstants& k);

// "11110110" + (0 -> "110", 1 -> "1110" over the binary digits of i) + "0".
// Throws constants_infeasible when longer than y.
std::string encode_cluster_color(int i, int y);
// Parses a path bit-string (length y, trailing zeros allowed); nullopt when
// it does not match the pattern.
std::optional<int> decode_cluster_color(const std::string& bits);

// Full encoding with its intermediate layout.
struct LclEncoding {
  Advice advice;
  ClusterLayout layout;
  Solution solution;
};
LclEncoding lcl_encode(const Graph& g, const LclProblem& p, const LclConstants& k,
                       const Solution* solution = nullptr);

// Whole-component decoding (the decoder's work on a closed view).
Solution lcl_decode_graph(const Graph& g, const Advice& a, const LclProblem& p, const LclConstants& k,
                          ClusterLayout* layout = nullptr);

// Declared decoder radius: palette_bound phases of 4x + 2r + 1 rounds plus
// the completion, saturated at 2^30.
int lcl_decoder_radius(const LclProblem& p, const LclConstants& k);

// Uniform 1-bit schema; encode uses given[0] as the solution when present.
Schema lcl_schema(const LclProblem& p, const LclConstants& k);

}  // namespace lca
