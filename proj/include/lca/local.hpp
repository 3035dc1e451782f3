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

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lca/advice.hpp"
#include "lca/errors.hpp"
#include "lca/graph.hpp"

namespace lca {

// Output of a node: a node-level value and one value per incident edge,
// aligned with the adjacency order (ascending neighbor ID).
struct Output {
  int node = 0;
  std::vector<int> edge;
  bool operator==(const Output&) const = default;
};

using Solution = std::vector<Output>;

struct ViewNode {
  NodeId id = 0;
  int degree = 0;
  int dist = 0;
  std::string advice;
  // Solutions of the problems this one depends on, in dependency order.
  std::vector<Output> given;
  bool operator==(const ViewNode&) const = default;
};

// The radius-r ball around a center. nodes[0] is the center and nodes are
// sorted by (dist, ID); adj holds local indices sorted by neighbor ID and
// only edges with both endpoints inside. Per-edge arrays inside a view are
// aligned with adj.
class View {
 public:
  int radius = 0;
  int n = 0;
  int max_degree = 0;
  std::vector<ViewNode> nodes;
  std::vector<std::vector<int>> adj;
  std::map<std::pair<int, int>, std::string> labels;

  int size() const { return static_cast<int>(nodes.size()); }
  // All incident edges of node i are inside the view.
  bool complete(int i) const { return static_cast<int>(adj[i].size()) == nodes[i].degree; }
  // Every node is complete, so the view is a whole connected component.
  bool closed() const;
  // Whether a decoder must produce a trustworthy value for node i: the
  // center always, every node when the view is closed.
  bool must_resolve(int i) const { return i == 0 || closed(); }
  int find(NodeId id) const;
  int slot(int v, int u) const;

  // Graph on the view with identical node indexing.
  Graph as_graph() const;
  View restrict(int r) const;
  // The radius-r ball around node w, found by BFS inside this view. Exact
  // when nodes[w].dist + r <= radius or the view is closed.
  View recenter(int w, int r) const;
  // Same nodes, only the edges with keep(i, j) for slot j of node i (keep
  // must be symmetric). Degrees of complete nodes shrink to the kept count;
  // dist stays the distance in the unfiltered view.
  View filter_edges(const std::function<bool(int, int)>& keep) const;

  bool operator==(const View& o) const;

 private:
  mutable int closed_ = -1;
};

// Decoders map a view to outputs for every view node; only entries for
// which must_resolve holds are relied upon.
struct LocalAlgorithm {
  int radius = 0;
  std::function<Solution(const View&)> eval;
};

struct LocalityReport {
  int declared_radius = 0;
  long views = 0;
  long batched_nodes = 0;
  long max_view_size = 0;
  double seconds = 0;
};

struct RunResult {
  Solution out;
  LocalityReport report;
};

// A decoder failure at a specific node.
class NodeFailure : public Error {
 public:
  NodeFailure(NodeId node, const Error& inner)
      : Error(inner.kind(), "node " + std::to_string(node) + ": " + inner.what()), node_(node) {}
  NodeId node() const { return node_; }

 private:
  NodeId node_;
};

// given[j][v] is node v's output for dependency j (edge arrays aligned with
// g's adjacency).
View collect_view(const Graph& g, const Advice& advice, int v, int r,
                  const std::vector<Solution>& given = {});

// Runs alg at every node in ascending-ID order. When a view is closed the
// outputs of all its nodes are taken from that single evaluation; this is
// exact because a closed view is identical for every center it contains
// up to the choice of center.
RunResult run_local(const Graph& g, const Advice& advice, const LocalAlgorithm& alg,
                    const std::vector<Solution>& given = {});

// Same, but evaluates one view per node without batching.
RunResult run_local_unbatched(const Graph& g, const Advice& advice, const LocalAlgorithm& alg,
                              const std::vector<Solution>& given = {});

// Helper for decoders: throw decode_failed.
[[noreturn]] void decode_fail(const std::string& what);

}  // namespace lca
