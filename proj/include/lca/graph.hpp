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
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lca {

using NodeId = std::int64_t;

// Undirected simple graph. Nodes are addressed by dense indices 0..n-1 and
// carry unique positive IDs; every adjacency list is sorted by neighbor ID.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<NodeId> ids, const std::vector<std::pair<int, int>>& edges);

  static Graph from_id_edges(std::vector<NodeId> ids,
                             const std::vector<std::pair<NodeId, NodeId>>& edges);

  int size() const { return static_cast<int>(ids_.size()); }
  std::size_t edge_count() const { return m_; }
  int max_degree() const { return max_degree_; }

  NodeId id(int v) const { return ids_[v]; }
  const std::vector<NodeId>& ids() const { return ids_; }
  int index_of(NodeId id) const;
  bool contains(NodeId id) const { return index_.count(id) != 0; }

  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  // Position of u in the adjacency list of v, or -1.
  int slot(int v, int u) const;
  bool adjacent(int v, int u) const { return slot(v, u) >= 0; }

  // Edges as index pairs (u, v) with id(u) < id(v), sorted by (id(u), id(v)).
  std::vector<std::pair<int, int>> edges() const;

  // Input label on the edge-endpoint pair (edge {u,v}, endpoint u).
  void set_label(int u, int v, std::string label);
  std::optional<std::string> label(int u, int v) const;
  const std::map<std::pair<int, int>, std::string>& labels() const { return labels_; }

  // Nodes ordered by ascending ID.
  std::vector<int> by_id() const;

  bool operator==(const Graph& o) const;

 private:
  std::vector<NodeId> ids_;
  std::vector<std::vector<int>> adj_;
  std::unordered_map<NodeId, int> index_;
  std::map<std::pair<int, int>, std::string> labels_;
  std::size_t m_ = 0;
  int max_degree_ = 0;
};

// Graph induced by `nodes` (indices into g). Labels are carried over. The
// returned vector maps new indices back to indices of g.
std::pair<Graph, std::vector<int>> induced_subgraph(const Graph& g, const std::vector<int>& nodes);

// BFS distances from src; -1 for unreachable or beyond `limit` (limit < 0 = no limit).
std::vector<int> bfs(const Graph& g, int src, int limit = -1);
std::vector<int> multi_bfs(const Graph& g, const std::vector<int>& sources, int limit = -1);

struct BallEntry {
  int node;
  int dist;
  bool operator==(const BallEntry&) const = default;
};

// {u : dist(v,u) <= r}, sorted by (dist, ID).
std::vector<BallEntry> ball(const Graph& g, int v, int r);

Graph power_graph(const Graph& g, int k);

// Greedy (alpha, beta)-ruling set: scan `order` (ascending ID when empty) and
// keep a node when no kept node is within alpha-1.
std::vector<int> ruling_set(const Graph& g, int alpha, int beta, const std::vector<int>& order = {});

// Smallest-available-color greedy in `order` (ascending ID when empty).
// Colors are 1-based. Throws palette_exceeded when more than k are needed.
std::vector<int> greedy_coloring(const Graph& g, const std::vector<int>& order = {}, int k = 0);

// Greedy distance-k coloring, i.e. a greedy coloring of G^k, without
// materializing the power graph.
std::vector<int> greedy_distance_coloring(const Graph& g, int k, const std::vector<int>& order = {});

bool is_proper_coloring(const Graph& g, const std::vector<int>& colors);

struct GrowthProfile {
  double c = 1.0;
  int x0 = 1;
};

struct GrowthCheck {
  bool ok = true;
  int node = -1;
  int x = -1;
  long ball_size = 0;
};

GrowthCheck check_growth(const Graph& g, const GrowthProfile& p);

// Component index per node, numbered by first appearance in ascending-ID order.
std::vector<int> components(const Graph& g);

int eccentricity(const Graph& g, int v);

}  // namespace lca
