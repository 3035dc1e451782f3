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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "lca/graph.hpp"

namespace lca {

struct GenOptions {
  // IDs are drawn from 1..n^id_exponent (1 gives a permutation of 1..n).
  int id_exponent = 1;
};

struct Generated {
  Graph graph;
  // Planted proper coloring by node index (1-based); empty when the kind
  // does not plant one.
  std::vector<int> planted;
};

// kind: cycle [n], path [n], grid2d [w h], even_degree_random [n d],
// bipartite_regular_pow2 [n_per_side delta], three_colorable_random [n delta],
// delta_colorable_random [n delta], three_colorable_band [n delta],
// delta_colorable_band [n delta], complete [n], complete_bipartite [a b],
// star [leaves], binary_tree [depth], random_bounded_degree [n delta edges],
// random_band [n delta width] (the last six reuse the helpers below with
// fresh IDs). The band kinds plant classes along a line
// (large diameter); the random kinds join random nodes of distinct classes.
Generated generate_graph(const std::string& kind, const std::vector<int>& params, std::uint64_t seed,
                         const GenOptions& opt = {});

std::vector<NodeId> random_ids(int n, std::mt19937_64& rng, int exponent = 1);

// Fixed-ID helpers used by tests and examples.
Graph path_graph(const std::vector<NodeId>& ids);
Graph cycle_graph(const std::vector<NodeId>& ids);
Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph star_graph(int leaves);
Graph grid_graph(int w, int h);
Graph complete_binary_tree(int depth);
Graph disjoint_union(const Graph& a, const Graph& b);

// Random graph with maximum degree <= delta and mixed degree parities.
Graph random_bounded_degree(int n, int delta, int edges, std::uint64_t seed);
// Nodes on a line, each joined to a few random nodes a bounded distance
// ahead; large diameter with degrees up to delta.
Graph random_band(int n, int delta, int width, std::uint64_t seed);

// Same structure, IDs replaced by a seeded draw.
Graph relabel(const Graph& g, std::uint64_t seed, int id_exponent = 1);

// Text format: "n m delta", m lines "u v", then optional "label u v L"
// lines. Isolated nodes are written as "node u" so their IDs survive a
// roundtrip; a reader given fewer IDs than n fills in the smallest unused.
void write_graph(std::ostream& os, const Graph& g);
Graph read_graph(std::istream& is);

}  // namespace lca
