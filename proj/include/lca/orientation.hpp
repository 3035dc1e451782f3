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

// Balanced orientations through the virtual cycle/path decomposition, and
// the splitting, edge coloring and edge subset schemas built on them.
//
// Orientations are Solutions: out[v].edge[j] is 1 when the edge to the j-th
// neighbor (ascending ID) leaves v.

#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "lca/schema.hpp"

namespace lca {

// One cycle or path of the virtual graph. Consecutive entries of nodes are
// joined by an edge; a cycle also joins the last entry to the first. The
// stored direction is the canonical one (largest-ID rule for cycles,
// smaller-ID endpoint first for paths).
struct Chain {
  bool cycle = false;
  std::vector<int> nodes;
  int edges() const { return static_cast<int>(nodes.size()) - (cycle ? 0 : 1); }
};

// Copy i of a node owns its slots 2i and 2i+1; the last copy of an
// odd-degree node owns one slot and ends a path.
struct CycleDecomposition {
  std::vector<Chain> chains;
  // chain_of[v][j], edge_pos[v][j]: chain and edge index of v's j-th edge.
  std::vector<std::vector<int>> chain_of;
  std::vector<std::vector<int>> edge_pos;
};

CycleDecomposition cycle_decompose(const Graph& g);

// Canonical orientation of a cycle given as a list of IDs; returns directed
// (tail, head) ID pairs in cycle order starting at the largest ID.
std::vector<std::pair<NodeId, NodeId>> orient_short_cycle(const std::vector<NodeId>& cycle);

// Orientation helpers.
Solution canonical_orientation(const Graph& g, const CycleDecomposition& dec);
// Throws malformed unless every edge has exactly one direction.
std::vector<std::pair<int, int>> orientation_arcs(const Graph& g, const Solution& s);
// Nodes with |in - out| > 1, or in != out at even degree.
std::vector<int> balance_violations(const Graph& g, const Solution& s);

enum class ShiftMode { automatic, random, exhaustive };

struct OrientationParams {
  ComposableParams params;
  // Chains with at most r edges are short; 0 picks min(max(2,D)^(alpha/2), r_cap).
  long r = 0;
  long r_cap = 100000;
  std::uint64_t seed = 1;
  int retry_budget = 1000;
  int exhaustive_limit = 12;
  long exhaustive_steps = 20000000;
  ShiftMode mode = ShiftMode::automatic;
};

long orientation_r(const OrientationParams& p, int max_degree);

// Positions (chain, virtual node index) of the selected set S''.
struct ShiftOutcome {
  bool ok = false;
  int variables = 0;
  int attempts = 0;
  bool used_exhaustive = false;
  // The exhaustive search ran out of steps (failure is then not a proof).
  bool budget_exhausted = false;
  std::vector<std::pair<int, int>> selected;
  // On failure: IDs of one conflicting pair of images.
  std::pair<NodeId, NodeId> conflict{0, 0};
};

// Selects S'' for the chains longer than r: greedy (2r/3+1)-spaced seeds
// shifted forward by 1..r/3 along their chain, so that images are pairwise
// at least 3*alpha apart in g.
ShiftOutcome select_s2(const Graph& g, const CycleDecomposition& dec, const OrientationParams& p, long r);

// Property 1 (r-domination of every long chain) and property 2 (images
// pairwise >= 3 alpha apart).
bool check_s2(const Graph& g, const CycleDecomposition& dec, const std::vector<std::pair<int, int>>& selected,
              long r, int alpha);

// Composable orientation schema: S'' images hold "1"+direction, their chosen
// chain neighbors hold "1". beta = gamma0 = 2.
Schema orientation_schema(const OrientationParams& p, int max_degree);

// Two-coloring of bipartite graphs: ruling-set holders (spacing 2 alpha + 1)
// store their color in the canonical coloring (smallest ID of each
// component is 0). Output node value is the color.
Schema two_coloring_schema(const ComposableParams& p);
std::vector<int> canonical_two_coloring(const Graph& g);

// Red (1) / blue (0) per edge slot: red iff the edge leaves a color-0 node.
Schema splitting_combiner();

// Splitting with orientation advice plus a piggybacked color bit on every
// holder and extra color-only holders. Output: edge value 1 = red.
Schema splitting_schema(const OrientationParams& p, int max_degree);

// The same problem as compose(orientation, two-coloring, combiner).
struct SplittingParts {
  std::vector<Schema> schemas;
  DependencyDag dag;
};
SplittingParts splitting_parts(const OrientationParams& p, int max_degree);
Schema splitting_composed(const OrientationParams& p, int max_degree, const ComposeOptions& opt);

// Nodes with unequal red/blue counts.
std::vector<int> splitting_violations(const Graph& g, const Solution& s);

// Delta-edge coloring of bipartite Delta-regular graphs, Delta a power of
// two: log2(Delta) splitting levels composed along a chain. Output edge
// values are colors 1..Delta.
Schema edge_coloring_schema(const OrientationParams& p, int delta, const ComposeOptions& opt);
// Empty when proper with every class a perfect matching on Delta colors.
std::string edge_coloring_problem(const Graph& g, const Solution& s, int delta);

// Edge subsets as (smaller index, larger index) pairs.
using EdgeSubset = std::set<std::pair<int, int>>;

// One orientation bit from to_one_bit(orientation), then one membership bit
// per outgoing edge in ascending head ID. Output edge values are membership.
struct EdgeSubsetCodec {
  Schema one_bit;
  Advice encode(const Graph& g, const EdgeSubset& x) const;
  LocalAlgorithm decoder() const;
  EdgeSubset decode(const Graph& g, const Advice& a) const;
};
EdgeSubsetCodec edge_subset_codec(const OrientationParams& p, const OneBitOptions& ob, int max_degree);

}  // namespace lca
