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

#include "lca/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "lca/errors.hpp"

namespace lca {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_params: return "invalid-params";
    case ErrorKind::unknown_node: return "unknown-node";
    case ErrorKind::palette_exceeded: return "palette-exceeded";
    case ErrorKind::constants_infeasible: return "constants-infeasible";
    case ErrorKind::malformed: return "malformed";
    case ErrorKind::wrong_kind: return "wrong-kind";
    case ErrorKind::encode_failed: return "encode-failed";
    case ErrorKind::decode_failed: return "decode-failed";
    case ErrorKind::search_exhausted: return "search-exhausted";
    case ErrorKind::io: return "io";
  }
  return "error";
}

Graph::Graph(std::vector<NodeId> ids, const std::vector<std::pair<int, int>>& edges)
    : ids_(std::move(ids)), adj_(ids_.size()) {
  for (int v = 0; v < size(); ++v) {
    if (ids_[v] <= 0) throw Error(ErrorKind::invalid_params, "node IDs must be positive");
    if (!index_.emplace(ids_[v], v).second)
      throw Error(ErrorKind::invalid_params, "duplicate node ID " + std::to_string(ids_[v]));
  }
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= size() || v >= size())
      throw Error(ErrorKind::invalid_params, "edge endpoint out of range");
    if (u == v) throw Error(ErrorKind::invalid_params, "self-loop at " + std::to_string(ids_[u]));
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (int v = 0; v < size(); ++v) {
    auto& a = adj_[v];
    std::sort(a.begin(), a.end(), [&](int x, int y) { return ids_[x] < ids_[y]; });
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      throw Error(ErrorKind::invalid_params, "multi-edge at " + std::to_string(ids_[v]));
    max_degree_ = std::max(max_degree_, static_cast<int>(a.size()));
  }
  m_ = edges.size();
}

Graph Graph::from_id_edges(std::vector<NodeId> ids,
                           const std::vector<std::pair<NodeId, NodeId>>& edges) {
  std::unordered_map<NodeId, int> idx;
  for (int i = 0; i < static_cast<int>(ids.size()); ++i) idx[ids[i]] = i;
  std::vector<std::pair<int, int>> e;
  e.reserve(edges.size());
  for (auto [a, b] : edges) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end())
      throw Error(ErrorKind::unknown_node, "edge references unknown ID");
    e.emplace_back(ia->second, ib->second);
  }
  return Graph(std::move(ids), e);
}

int Graph::index_of(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error(ErrorKind::unknown_node, "no node with ID " + std::to_string(id));
  return it->second;
}

int Graph::slot(int v, int u) const {
  const auto& a = adj_[v];
  auto it = std::lower_bound(a.begin(), a.end(), u,
                             [&](int x, int y) { return ids_[x] < ids_[y]; });
  if (it != a.end() && *it == u) return static_cast<int>(it - a.begin());
  return -1;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int v : by_id())
    for (int u : adj_[v])
      if (ids_[v] < ids_[u]) out.emplace_back(v, u);
  return out;
}

void Graph::set_label(int u, int v, std::string label) {
  if (!adjacent(u, v)) throw Error(ErrorKind::invalid_params, "label on a non-edge");
  labels_[{u, v}] = std::move(label);
}

std::optional<std::string> Graph::label(int u, int v) const {
  auto it = labels_.find({u, v});
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> Graph::by_id() const {
  std::vector<int> order(size());
  for (int i = 0; i < size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ids_[a] < ids_[b]; });
  return order;
}

bool Graph::operator==(const Graph& o) const {
  if (size() != o.size() || m_ != o.m_) return false;
  for (int v = 0; v < size(); ++v) {
    if (!o.contains(ids_[v])) return false;
    int w = o.index_of(ids_[v]);
    if (adj_[v].size() != o.adj_[w].size()) return false;
    for (std::size_t i = 0; i < adj_[v].size(); ++i)
      if (ids_[adj_[v][i]] != o.ids_[o.adj_[w][i]]) return false;
  }
  return true;
}

std::pair<Graph, std::vector<int>> induced_subgraph(const Graph& g, const std::vector<int>& nodes) {
  std::vector<int> local(g.size(), -1);
  std::vector<NodeId> ids;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    local[nodes[i]] = i;
    ids.push_back(g.id(nodes[i]));
  }
  std::vector<std::pair<int, int>> e;
  for (int v : nodes)
    for (int u : g.neighbors(v))
      if (local[u] >= 0 && g.id(v) < g.id(u)) e.emplace_back(local[v], local[u]);
  Graph h(std::move(ids), e);
  for (const auto& [k, l] : g.labels())
    if (local[k.first] >= 0 && local[k.second] >= 0) h.set_label(local[k.first], local[k.second], l);
  return {std::move(h), nodes};
}

std::vector<int> multi_bfs(const Graph& g, const std::vector<int>& sources, int limit) {
  std::vector<int> d(g.size(), -1);
  std::deque<int> q;
  for (int s : sources) {
    if (s < 0 || s >= g.size()) throw Error(ErrorKind::unknown_node, "bfs source out of range");
    if (d[s] < 0) {
      d[s] = 0;
      q.push_back(s);
    }
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    if (limit >= 0 && d[v] >= limit) continue;
    for (int u : g.neighbors(v))
      if (d[u] < 0) {
        d[u] = d[v] + 1;
        q.push_back(u);
      }
  }
  return d;
}

std::vector<int> bfs(const Graph& g, int src, int limit) { return multi_bfs(g, {src}, limit); }

std::vector<BallEntry> ball(const Graph& g, int v, int r) {
  if (v < 0 || v >= g.size()) throw Error(ErrorKind::unknown_node, "ball center out of range");
  if (r < 0) throw Error(ErrorKind::invalid_params, "negative radius");
  std::vector<BallEntry> out{{v, 0}};
  std::vector<char> mark(g.size(), 0);
  mark[v] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto [x, dx] = out[i];
    if (dx == r) continue;
    for (int u : g.neighbors(x))
      if (!mark[u]) {
        mark[u] = 1;
        out.push_back({u, dx + 1});
      }
  }
  std::sort(out.begin(), out.end(), [&](const BallEntry& a, const BallEntry& b) {
    return a.dist != b.dist ? a.dist < b.dist : g.id(a.node) < g.id(b.node);
  });
  return out;
}

Graph power_graph(const Graph& g, int k) {
  if (k < 1) throw Error(ErrorKind::invalid_params, "power graph needs k >= 1");
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < g.size(); ++v)
    for (const auto& b : ball(g, v, k))
      if (b.dist >= 1 && g.id(v) < g.id(b.node)) e.emplace_back(v, b.node);
  return Graph(g.ids(), e);
}

std::vector<int> ruling_set(const Graph& g, int alpha, int beta, const std::vector<int>& order) {
  if (g.size() == 0) throw Error(ErrorKind::invalid_params, "ruling set of an empty graph");
  if (alpha < 1 || beta < alpha - 1)
    throw Error(ErrorKind::invalid_params, "ruling set needs alpha >= 1 and beta >= alpha - 1");
  const auto ord = order.empty() ? g.by_id() : order;
  std::vector<char> blocked(g.size(), 0);
  std::vector<int> out;
  for (int v : ord) {
    if (blocked[v]) continue;
    out.push_back(v);
    for (const auto& b : ball(g, v, alpha - 1)) blocked[b.node] = 1;
  }
  return out;
}

std::vector<int> greedy_coloring(const Graph& g, const std::vector<int>& order, int k) {
  const auto ord = order.empty() ? g.by_id() : order;
  std::vector<int> color(g.size(), 0);
  std::vector<int> stamp(g.max_degree() + 2, -1);
  for (int v : ord) {
    for (int u : g.neighbors(v))
      if (color[u] > 0 && color[u] < static_cast<int>(stamp.size())) stamp[color[u]] = v;
    int c = 1;
    while (stamp[c] == v) ++c;
    if (k > 0 && c > k)
      throw Error(ErrorKind::palette_exceeded, "greedy coloring needs more than " + std::to_string(k) + " colors");
    color[v] = c;
  }
  return color;
}

std::vector<int> greedy_distance_coloring(const Graph& g, int k, const std::vector<int>& order) {
  const auto ord = order.empty() ? g.by_id() : order;
  std::vector<int> color(g.size(), 0);
  std::vector<char> used;
  for (int v : ord) {
    auto b = ball(g, v, k);
    used.assign(b.size() + 2, 0);
    for (const auto& e : b)
      if (e.node != v && color[e.node] > 0 && color[e.node] < static_cast<int>(used.size()))
        used[color[e.node]] = 1;
    int c = 1;
    while (used[c]) ++c;
    color[v] = c;
  }
  return color;
}

bool is_proper_coloring(const Graph& g, const std::vector<int>& colors) {
  if (static_cast<int>(colors.size()) != g.size()) return false;
  for (int v = 0; v < g.size(); ++v) {
    if (colors[v] <= 0) return false;
    for (int u : g.neighbors(v))
      if (colors[u] == colors[v]) return false;
  }
  return true;
}

GrowthCheck check_growth(const Graph& g, const GrowthProfile& p) {
  GrowthCheck res;
  for (int v : g.by_id()) {
    auto d = bfs(g, v);
    int ecc = 0;
    for (int x : d) ecc = std::max(ecc, x);
    std::vector<long> at(ecc + 1, 0);
    for (int x : d)
      if (x >= 0) ++at[x];
    long cum = 0;
    for (int x = 0; x <= std::max(ecc, p.x0); ++x) {
      if (x <= ecc) cum += at[x];
      if (x < p.x0) continue;
      if (static_cast<double>(cum) > std::pow(2.0, p.c * x)) {
        res.ok = false;
        res.node = v;
        res.x = x;
        res.ball_size = cum;
        return res;
      }
    }
  }
  return res;
}

std::vector<int> components(const Graph& g) {
  std::vector<int> comp(g.size(), -1);
  int next = 0;
  for (int v : g.by_id()) {
    if (comp[v] >= 0) continue;
    comp[v] = next;
    std::vector<int> stack{v};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int u : g.neighbors(x))
        if (comp[u] < 0) {
          comp[u] = next;
          stack.push_back(u);
        }
    }
    ++next;
  }
  return comp;
}

int eccentricity(const Graph& g, int v) {
  int e = 0;
  for (int x : bfs(g, v)) e = std::max(e, x);
  return e;
}

}  // namespace lca
