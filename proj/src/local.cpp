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

#include "lca/local.hpp"

#include <algorithm>
#include <chrono>

namespace lca {

void decode_fail(const std::string& what) { throw Error(ErrorKind::decode_failed, what); }

bool View::closed() const {
  if (closed_ < 0) {
    closed_ = 1;
    for (int i = 0; i < size(); ++i)
      if (!complete(i)) {
        closed_ = 0;
        break;
      }
  }
  return closed_ == 1;
}

int View::find(NodeId id) const {
  for (int i = 0; i < size(); ++i)
    if (nodes[i].id == id) return i;
  return -1;
}

int View::slot(int v, int u) const {
  const auto& a = adj[v];
  for (int j = 0; j < static_cast<int>(a.size()); ++j)
    if (a[j] == u) return j;
  return -1;
}

Graph View::as_graph() const {
  std::vector<NodeId> ids;
  ids.reserve(nodes.size());
  for (const auto& x : nodes) ids.push_back(x.id);
  std::vector<std::pair<int, int>> e;
  for (int v = 0; v < size(); ++v)
    for (int u : adj[v])
      if (v < u) e.emplace_back(v, u);
  Graph g(std::move(ids), e);
  for (const auto& [k, l] : labels) g.set_label(k.first, k.second, l);
  return g;
}

namespace {

// Copies node i's given edge values onto the slots listed in keep.
void remap_given(ViewNode& node, const std::vector<int>& keep) {
  for (auto& gv : node.given) {
    if (gv.edge.empty()) continue;
    std::vector<int> kept;
    for (int j : keep) kept.push_back(gv.edge[j]);
    gv.edge = std::move(kept);
  }
}

}  // namespace

View View::restrict(int r) const {
  View out;
  out.radius = std::min(r, radius);
  out.n = n;
  out.max_degree = max_degree;
  std::vector<int> local(size(), -1);
  for (int i = 0; i < size(); ++i)
    if (nodes[i].dist <= out.radius) {
      local[i] = out.size();
      out.nodes.push_back(nodes[i]);
    }
  out.adj.resize(out.nodes.size());
  for (int i = 0; i < size(); ++i) {
    if (local[i] < 0) continue;
    for (int j = 0; j < static_cast<int>(adj[i].size()); ++j) {
      int u = adj[i][j];
      if (local[u] >= 0) out.adj[local[i]].push_back(local[u]);
    }
    // Per-edge given values follow the surviving adjacency.
    std::vector<int> keep;
    for (int j = 0; j < static_cast<int>(adj[i].size()); ++j)
      if (local[adj[i][j]] >= 0) keep.push_back(j);
    remap_given(out.nodes[local[i]], keep);
  }
  for (const auto& [k, l] : labels)
    if (local[k.first] >= 0 && local[k.second] >= 0) out.labels[{local[k.first], local[k.second]}] = l;
  return out;
}


View View::recenter(int w, int r) const {
  std::vector<int> dist(size(), -1);
  std::vector<int> order{w};
  dist[w] = 0;
  for (std::size_t h = 0; h < order.size(); ++h) {
    const int x = order[h];
    if (dist[x] == r) continue;
    for (int u : adj[x])
      if (dist[u] < 0) {
        dist[u] = dist[x] + 1;
        order.push_back(u);
      }
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return dist[a] != dist[b] ? dist[a] < dist[b] : nodes[a].id < nodes[b].id;
  });
  View out;
  out.radius = r;
  out.n = n;
  out.max_degree = max_degree;
  std::vector<int> local(size(), -1);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) local[order[i]] = i;
  out.nodes.resize(order.size());
  out.adj.resize(order.size());
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    const int x = order[i];
    out.nodes[i] = nodes[x];
    out.nodes[i].dist = dist[x];
    std::vector<int> keep;
    for (int j = 0; j < static_cast<int>(adj[x].size()); ++j)
      if (local[adj[x][j]] >= 0) {
        out.adj[i].push_back(local[adj[x][j]]);
        keep.push_back(j);
      }
    remap_given(out.nodes[i], keep);
  }
  for (const auto& [k, l] : labels)
    if (local[k.first] >= 0 && local[k.second] >= 0) out.labels[{local[k.first], local[k.second]}] = l;
  return out;
}

View View::filter_edges(const std::function<bool(int, int)>& keep_edge) const {
  View out = *this;
  out.closed_ = -1;
  for (int i = 0; i < size(); ++i) {
    std::vector<int> keep;
    out.adj[i].clear();
    for (int j = 0; j < static_cast<int>(adj[i].size()); ++j)
      if (keep_edge(i, j)) {
        out.adj[i].push_back(adj[i][j]);
        keep.push_back(j);
      }
    const int missing = nodes[i].degree - static_cast<int>(adj[i].size());
    out.nodes[i].degree = static_cast<int>(keep.size()) + missing;
    remap_given(out.nodes[i], keep);
  }
  std::map<std::pair<int, int>, std::string> kept_labels;
  for (const auto& [k, l] : labels) {
    const int j = slot(k.first, k.second);
    if (j >= 0 && keep_edge(k.first, j)) kept_labels[k] = l;
  }
  out.labels = std::move(kept_labels);
  return out;
}

bool View::operator==(const View& o) const {
  return radius == o.radius && n == o.n && max_degree == o.max_degree && nodes == o.nodes && adj == o.adj &&
         labels == o.labels;
}

View collect_view(const Graph& g, const Advice& advice, int v, int r, const std::vector<Solution>& given) {
  if (v < 0 || v >= g.size()) throw Error(ErrorKind::unknown_node, "view center out of range");
  if (r < 0) throw Error(ErrorKind::invalid_params, "negative view radius");
  auto b = ball(g, v, r);
  View view;
  view.radius = r;
  view.n = g.size();
  view.max_degree = g.max_degree();
  std::vector<int> local(g.size(), -1);
  for (int i = 0; i < static_cast<int>(b.size()); ++i) local[b[i].node] = i;
  view.nodes.resize(b.size());
  view.adj.resize(b.size());
  for (int i = 0; i < static_cast<int>(b.size()); ++i) {
    const int x = b[i].node;
    auto& node = view.nodes[i];
    node.id = g.id(x);
    node.degree = g.degree(x);
    node.dist = b[i].dist;
    if (x < advice.size()) node.advice = advice.bits[x];
    std::vector<int> keep;
    const auto& nb = g.neighbors(x);
    for (int j = 0; j < static_cast<int>(nb.size()); ++j)
      if (local[nb[j]] >= 0) {
        view.adj[i].push_back(local[nb[j]]);
        keep.push_back(j);
      }
    for (const auto& sol : given) {
      Output o;
      o.node = sol[x].node;
      if (!sol[x].edge.empty())
        for (int j : keep) o.edge.push_back(sol[x].edge[j]);
      node.given.push_back(std::move(o));
    }
    for (int u : nb)
      if (local[u] >= 0)
        if (auto l = g.label(x, u)) view.labels[{i, local[u]}] = *l;
  }
  return view;
}

namespace {

RunResult run_impl(const Graph& g, const Advice& advice, const LocalAlgorithm& alg,
                   const std::vector<Solution>& given, bool batch) {
  auto t0 = std::chrono::steady_clock::now();
  RunResult res;
  res.out.assign(g.size(), Output{});
  res.report.declared_radius = alg.radius;
  std::vector<char> done(g.size(), 0);
  for (int v : g.by_id()) {
    if (done[v]) continue;
    View view = collect_view(g, advice, v, alg.radius, given);
    ++res.report.views;
    res.report.max_view_size = std::max<long>(res.report.max_view_size, view.size());
    Solution out;
    try {
      out = alg.eval(view);
      if (out.size() != view.nodes.size()) decode_fail("decoder returned a solution of the wrong size");
    } catch (const NodeFailure&) {
      throw;
    } catch (const Error& e) {
      throw NodeFailure(g.id(v), e);
    }
    res.out[v] = out[0];
    done[v] = 1;
    if (!batch || !view.closed()) continue;
    const bool all = alg.radius >= view.size() - 1;
    // Nodes whose own radius-T view would also be the whole component get
    // the same evaluation.
    for (int i = 1; i < view.size(); ++i) {
      const int x = g.index_of(view.nodes[i].id);
      if (done[x]) continue;
      if (!all && eccentricity(g, x) > alg.radius) continue;
      res.out[x] = out[i];
      done[x] = 1;
      ++res.report.batched_nodes;
    }
  }
  res.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace

RunResult run_local(const Graph& g, const Advice& advice, const LocalAlgorithm& alg,
                    const std::vector<Solution>& given) {
  return run_impl(g, advice, alg, given, true);
}

RunResult run_local_unbatched(const Graph& g, const Advice& advice, const LocalAlgorithm& alg,
                              const std::vector<Solution>& given) {
  return run_impl(g, advice, alg, given, false);
}

}  // namespace lca
