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

#include "lca/coloring.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <numeric>

namespace lca {

namespace {

constexpr long kSat = 1L << 62;

long mul_sat(long a, long b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSat / b) return kSat;
  return std::min(kSat, a * b);
}

long pow_sat(long b, long e) {
  long r = 1;
  for (long i = 0; i < e; ++i) {
    r = mul_sat(r, b);
    if (r >= kSat) return kSat;
  }
  return r;
}

long sat(double x) { return x >= static_cast<double>(kSat) ? kSat : static_cast<long>(std::ceil(x)); }

bool is_prime(long x) {
  if (x < 2) return false;
  for (long d = 2; d * d <= x; ++d)
    if (x % d == 0) return false;
  return true;
}

long next_prime(long x) {
  while (!is_prime(x)) ++x;
  return x;
}

// Smallest x >= 1 with x^m >= k.
long root_ceil(long k, int m) {
  long x = std::max(1L, static_cast<long>(std::pow(static_cast<double>(k), 1.0 / m)) - 1);
  while (pow_sat(x, m) < k) ++x;
  while (x > 1 && pow_sat(x - 1, m) >= k) --x;
  return x;
}

void need(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::invalid_params, what);
}

std::string id_str(const Graph& g, int v) { return std::to_string(g.id(v)); }

// Layered BFS from labeled sources into `allowed` nodes; a node takes the
// label of its smallest-ID neighbor in the previous layer.
std::vector<int> assign_by_bfs(const Graph& g, const std::vector<int>& sources, const std::vector<int>& labels,
                               const std::vector<char>& allowed) {
  std::vector<int> label(g.size(), -1), dist(g.size(), -1);
  std::vector<int> layer;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    label[sources[i]] = labels[i];
    dist[sources[i]] = 0;
    layer.push_back(sources[i]);
  }
  for (int d = 0; !layer.empty(); ++d) {
    std::vector<int> next;
    for (int v : layer)
      for (int u : g.neighbors(v))
        if (dist[u] < 0 && (allowed.empty() || allowed[u])) {
          dist[u] = d + 1;
          next.push_back(u);
        }
    for (int u : next)
      for (int w : g.neighbors(u))
        if (dist[w] == d) {
          label[u] = label[w];
          break;
        }
    layer = std::move(next);
  }
  return label;
}

// BFS tree rooted at src over `allowed` nodes: parent is the smallest-ID
// neighbor one layer up.
void bfs_tree(const Graph& g, int src, const std::vector<char>& allowed, std::vector<int>& dist,
              std::vector<int>& parent) {
  dist.assign(g.size(), -1);
  parent.assign(g.size(), -1);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int u : g.neighbors(v))
      if (dist[u] < 0 && allowed[u]) {
        dist[u] = dist[v] + 1;
        parent[u] = v;
        q.push_back(u);
      }
  }
  for (int v = 0; v < g.size(); ++v) {
    if (dist[v] <= 0) continue;
    for (int u : g.neighbors(v))
      if (allowed[u] && dist[u] == dist[v] - 1) {
        parent[v] = u;
        break;
      }
  }
}

int smallest_free(const Graph& g, const std::vector<int>& col, int v, int delta) {
  std::vector<char> used(delta + 2, 0);
  for (int u : g.neighbors(v))
    if (col[u] > 0 && col[u] <= delta) used[col[u]] = 1;
  for (int c = 1; c <= delta; ++c)
    if (!used[c]) return c;
  return 0;
}

}  // namespace

// ------------------------------------------------------------- constants

ColoringConstants paper_coloring_constants(int delta, int alpha) {
  need(delta >= 2 && alpha >= 1, "coloring constants need delta >= 2, alpha >= 1");
  ColoringConstants k;
  k.profile = "paper";
  k.delta = delta;
  k.alpha = alpha;
  const double lg = std::log2(static_cast<double>(delta));
  const long lgc = std::max(1L, static_cast<long>(std::ceil(lg)));
  k.cluster_radius = sat(100.0 * alpha * alpha * lg);
  k.high_degree = std::pow(static_cast<double>(delta), 10.0 * alpha);
  k.broken_volume = std::pow(static_cast<double>(delta), 9.0 * alpha - 2);
  k.max_bucket = static_cast<int>(std::min(kSat, k.cluster_radius + 2));
  k.cluster_reach = mul_sat(4, k.cluster_radius);
  k.relay_spacing = mul_sat(2L * alpha + 22, lgc);
  k.marker_spacing = 2L * alpha + 10;
  const long d3 = pow_sat(delta, 3), d6 = pow_sat(delta, 6), d9 = pow_sat(delta, 9);
  k.small_diameter = mul_sat(4000, d9);
  k.ruling_spacing = mul_sat(2000, d9);
  k.group_radius = mul_sat(600, d9);
  k.group_candidates = mul_sat(12, d6);
  k.candidate_spacing = mul_sat(50, d3);
  k.path_reach = mul_sat(20, d3);
  k.read_radius = mul_sat(30, d3);
  k.search_radius = mul_sat(3000, d9);
  return k;
}

ColoringConstants desk_coloring_constants(int delta, int alpha) {
  need(delta >= 2 && alpha >= 1, "coloring constants need delta >= 2, alpha >= 1");
  ColoringConstants k;
  k.profile = "desk";
  k.delta = delta;
  k.alpha = alpha;
  k.cluster_radius = 32L * alpha + 16;
  k.high_degree = std::pow(static_cast<double>(delta), 3.0);
  k.broken_volume = static_cast<double>(delta) * delta;
  k.max_bucket = 8;
  k.cluster_reach = 3 * k.cluster_radius;
  // Relay bits sit at offsets alpha+1, 3 alpha+2, ... inside the first half
  // of the spacing.
  const long bits = std::max(1, ceil_log2(static_cast<std::uint64_t>(delta)));
  k.relay_spacing = 2 * (alpha + 2 + (bits - 1) * (2L * alpha + 1)) + 2;
  k.marker_spacing = 2L * alpha + 10;
  const long d = delta;
  k.path_reach = 2 * d;
  k.read_radius = k.path_reach + 2 * d + 2;
  k.candidate_spacing = 2 * (k.path_reach + d) + 1;
  k.group_candidates = 2;
  k.group_radius = k.group_candidates * k.candidate_spacing;
  k.ruling_spacing = 2 * (k.group_radius + k.path_reach + d) + k.read_radius + 1;
  k.small_diameter = 2 * k.group_radius + 1;
  k.search_radius = k.ruling_spacing - 1 + k.group_radius + k.path_reach + d;
  return k;
}

long effective_far_distance(const ColoringConstants& k, int n) {
  if (k.far_distance > 0) return k.far_distance;
  const double lg = std::log2(std::max(2, n)) / std::log2(std::max(2, k.delta));
  return std::max(3L, static_cast<long>(std::ceil(2.0 * lg)));
}

long effective_plan_radius(const ColoringConstants& k, int n) {
  if (k.plan_radius > 0) return k.plan_radius;
  return std::max(1L, (effective_far_distance(k, n) - 2) / 2);
}

// ----------------------------------------------------------------- Linial

long linial_target(int delta) {
  const long q = next_prime(2L * std::max(1, delta) + 1);
  return q * q;
}

std::vector<LinialStep> linial_schedule(long k, int delta) {
  const int dl = std::max(1, delta);
  const long target = linial_target(dl);
  std::vector<LinialStep> out;
  while (k > target) {
    LinialStep best;
    for (int d = 1; d <= 62; ++d) {
      const long q = next_prime(std::max(static_cast<long>(d) * dl + 1, root_ceil(k, d + 1)));
      const long pal = q * q;
      if (best.q == 0 || pal < best.palette_out) best = {d, q, k, pal};
      if (static_cast<long>(d) * dl + 1 > best.q) break;
    }
    if (best.palette_out >= k) throw Error(ErrorKind::invalid_params, "Linial reduction makes no progress");
    out.push_back(best);
    k = best.palette_out;
  }
  return out;
}

std::vector<long> linial_round(const Graph& g, const std::vector<long>& colors, const LinialStep& s) {
  const int n = g.size();
  // Polynomial values p_v(x) for x in F_q, computed on demand.
  auto eval = [&](long c, long x) {
    long v = c - 1, r = 0, pw = 1;
    for (int i = 0; i <= s.d; ++i) {
      r = (r + (v % s.q) * pw) % s.q;
      v /= s.q;
      pw = (pw * x) % s.q;
    }
    return r;
  };
  std::vector<long> out(n);
  for (int v = 0; v < n; ++v) {
    need(colors[v] >= 1 && colors[v] <= s.palette_in, "Linial round: color out of range at node " + id_str(g, v));
    long chosen = -1;
    for (long x = 0; x < s.q && chosen < 0; ++x) {
      const long y = eval(colors[v], x);
      bool free = true;
      for (int u : g.neighbors(v))
        if (eval(colors[u], x) == y) {
          free = false;
          break;
        }
      if (free) chosen = x * s.q + y + 1;
    }
    if (chosen < 0) throw Error(ErrorKind::invalid_params, "Linial round: input not proper at node " + id_str(g, v));
    out[v] = chosen;
  }
  return out;
}

std::vector<long> linial_reduce(const Graph& g, const std::vector<long>& colors, long k, int delta,
                                std::vector<std::vector<long>>* rounds) {
  need(static_cast<int>(colors.size()) == g.size(), "Linial reduction: wrong length");
  need(delta >= g.max_degree(), "Linial reduction: delta below the maximum degree");
  for (int v = 0; v < g.size(); ++v) {
    need(colors[v] >= 1 && colors[v] <= k, "Linial reduction: color out of range at node " + id_str(g, v));
    for (int u : g.neighbors(v))
      need(colors[u] != colors[v], "Linial reduction: input not proper at node " + id_str(g, v));
  }
  std::vector<long> cur = colors;
  for (const auto& step : linial_schedule(k, delta)) {
    cur = linial_round(g, cur, step);
    if (rounds) rounds->push_back(cur);
  }
  return cur;
}

// --------------------------------------------------------- list coloring

std::vector<int> list_coloring(const Graph& g, const std::vector<long>& base,
                               const std::vector<std::vector<int>>& lists) {
  const int n = g.size();
  need(static_cast<int>(base.size()) == n && static_cast<int>(lists.size()) == n, "list coloring: wrong length");
  for (int v = 0; v < n; ++v) {
    need(static_cast<int>(lists[v].size()) >= g.degree(v) + 1, "list coloring: list too small at node " + id_str(g, v));
    for (int u : g.neighbors(v)) need(base[u] != base[v], "list coloring: base not proper at node " + id_str(g, v));
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return base[a] != base[b] ? base[a] < base[b] : g.id(a) < g.id(b);
  });
  std::vector<int> col(n, 0);
  for (int v : order) {
    std::vector<int> l = lists[v];
    std::sort(l.begin(), l.end());
    for (int c : l) {
      bool used = false;
      for (int u : g.neighbors(v))
        if (col[u] == c) {
          used = true;
          break;
        }
      if (!used) {
        col[v] = c;
        break;
      }
    }
    if (col[v] == 0) throw Error(ErrorKind::invalid_params, "list coloring: no free color at node " + id_str(g, v));
  }
  return col;
}

// ------------------------------------------------------ O(Delta^2) stage

long bucket_offset(int delta, int bucket) {
  long off = 0;
  for (int j = 1; j < bucket; ++j) off = std::min(kSat, off + pow_sat(delta, j));
  return off;
}

int bucket_of(int delta, long degree) {
  int i = 1;
  while (pow_sat(delta, i) <= degree) ++i;
  return i;
}

long initial_palette(const ColoringConstants& k) {
  return mul_sat(bucket_offset(k.delta, k.max_bucket + 1), k.delta + 1);
}

namespace {

int bucket_width(int delta, int bucket) {
  return std::max(1, ceil_log2(static_cast<std::uint64_t>(pow_sat(delta, bucket))));
}

// Edges with exactly one endpoint in each cluster, per cluster.
std::vector<long> cluster_degrees(const Graph& g, const std::vector<int>& label, int count) {
  std::vector<long> deg(count, 0);
  for (auto [u, v] : g.edges())
    if (label[u] != label[v]) {
      if (label[u] >= 0) ++deg[label[u]];
      if (label[v] >= 0) ++deg[label[v]];
    }
  return deg;
}

std::vector<std::vector<int>> members_of(const std::vector<int>& label, int count) {
  std::vector<std::vector<int>> m(count);
  for (int v = 0; v < static_cast<int>(label.size()); ++v)
    if (label[v] >= 0) m[label[v]].push_back(v);
  return m;
}

// Cluster nodes with a neighbor outside the cluster.
std::vector<int> outer_nodes(const Graph& g, const std::vector<int>& label, const std::vector<int>& members) {
  std::vector<int> out;
  for (int v : members)
    for (int u : g.neighbors(v))
      if (label[u] != label[v]) {
        out.push_back(v);
        break;
      }
  return out;
}

struct Partition {
  std::vector<int> ruling;
  std::vector<char> alive;    // per initial cluster
  std::vector<char> high;     // per initial cluster, initial degree
  std::vector<char> broken;   // per initial cluster
  std::vector<int> final_label;  // initial cluster index of the final cluster
};

// Refinement shared by encoder (alive from the repair rule) and decoder
// (alive from the markers): orphans join the closest surviving high-degree
// cluster through orphan nodes.
std::vector<int> repartition(const Graph& g, const std::vector<int>& label0, const std::vector<char>& alive,
                             const std::vector<char>& high, bool& ok) {
  std::vector<int> sources, labels;
  std::vector<char> orphan(g.size(), 0);
  for (int v : g.by_id()) {
    if (label0[v] < 0) continue;
    if (!alive[label0[v]]) {
      orphan[v] = 1;
    } else if (high[label0[v]]) {
      sources.push_back(v);
      labels.push_back(label0[v]);
    }
  }
  std::vector<char> allowed = orphan;
  auto lab = assign_by_bfs(g, sources, labels, allowed);
  std::vector<int> out(g.size(), -1);
  ok = true;
  for (int v = 0; v < g.size(); ++v) {
    if (label0[v] >= 0 && alive[label0[v]]) out[v] = label0[v];
    else if (orphan[v]) {
      out[v] = lab[v];
      if (lab[v] < 0) ok = false;
    }
  }
  return out;
}

Partition initial_partition(const Graph& g, const ColoringConstants& k, const std::vector<int>* ruling,
                            const std::vector<char>* alive_in, bool strict) {
  Partition p;
  p.ruling = ruling ? *ruling : ruling_set(g, static_cast<int>(k.cluster_radius), static_cast<int>(k.cluster_radius));
  const int m = static_cast<int>(p.ruling.size());
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  auto label0 = assign_by_bfs(g, p.ruling, idx, {});
  if (strict)
    for (int v = 0; v < g.size(); ++v)
      if (label0[v] < 0) throw Error(ErrorKind::decode_failed, "node " + id_str(g, v) + " reaches no cluster center");
  const auto deg = cluster_degrees(g, label0, m);
  const auto mem = members_of(label0, m);
  p.high.assign(m, 0);
  p.broken.assign(m, 0);
  for (int c = 0; c < m; ++c) {
    p.high[c] = deg[c] >= 1 && static_cast<double>(deg[c]) >= k.high_degree;
    if (!p.high[c]) continue;
    const auto outer = outer_nodes(g, label0, mem[c]);
    const auto d = multi_bfs(g, outer, static_cast<int>(k.alpha));
    long internal = 0;
    for (int v : mem[c])
      if (d[v] < 0) ++internal;  // farther than alpha from the border
    p.broken[c] = static_cast<double>(internal) < k.broken_volume;
  }
  if (alive_in) {
    p.alive = *alive_in;
  } else {
    p.alive.assign(m, 1);
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return g.id(p.ruling[a]) < g.id(p.ruling[b]); });
    for (int c : order) {
      if (!p.broken[c] || !p.alive[c]) continue;
      const auto outer = outer_nodes(g, label0, mem[c]);
      const auto d = multi_bfs(g, outer, 2 * k.alpha);
      for (int v = 0; v < g.size(); ++v)
        if (d[v] >= 0 && label0[v] >= 0 && label0[v] != c) p.alive[label0[v]] = 0;
    }
  }
  bool ok = true;
  p.final_label = repartition(g, label0, p.alive, p.high, ok);
  if (!ok && strict) {
    if (alive_in) throw Error(ErrorKind::decode_failed, "an orphan reaches no surviving high-degree cluster");
    throw InfeasibleError("orphans reach a surviving high-degree cluster", "re-partition left nodes unassigned");
  }
  return p;
}

// Eligible color-path holders of a low-degree cluster: on one branch of the
// BFS tree from the center, at depth >= 2, farther than alpha from every
// node with an edge leaving the cluster and from every marker.
std::vector<int> path_holders(const Graph& g, const std::vector<int>& label, int c, int center,
                              const std::vector<int>& members, const std::vector<int>& markers, int alpha) {
  std::vector<char> in(g.size(), 0);
  for (int v : members) in[v] = 1;
  std::vector<int> dist, parent;
  bfs_tree(g, center, in, dist, parent);
  const auto dout = multi_bfs(g, outer_nodes(g, label, members), alpha);
  const auto dmark = multi_bfs(g, markers, alpha);
  auto eligible = [&](int v) { return in[v] && dist[v] >= 2 && dout[v] < 0 && dmark[v] < 0; };
  // Run length of eligible ancestors ending at v, processed by depth.
  std::vector<int> order(members);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return dist[a] != dist[b] ? dist[a] < dist[b] : g.id(a) < g.id(b);
  });
  std::vector<int> run(g.size(), 0);
  int best = -1;
  for (int v : order) {
    if (!eligible(v)) continue;
    run[v] = 1 + (parent[v] >= 0 && eligible(parent[v]) ? run[parent[v]] : 0);
    if (best < 0 || run[v] > run[best] || (run[v] == run[best] && g.id(v) < g.id(best))) best = v;
  }
  (void)c;
  std::vector<int> chain;
  for (int v = best; v >= 0 && eligible(v); v = parent[v]) chain.push_back(v);
  std::reverse(chain.begin(), chain.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < chain.size(); i += 2 * alpha + 1) out.push_back(chain[i]);
  return out;
}

// Internal holders of a high-degree cluster: ascending ID, at least alpha
// from the border, farther than alpha from markers, pairwise > 2 alpha.
std::vector<int> internal_holders(const Graph& g, const std::vector<int>& label, const std::vector<int>& members,
                                  const std::vector<int>& markers, int alpha) {
  const auto dout = multi_bfs(g, outer_nodes(g, label, members), alpha - 1);
  const auto dmark = multi_bfs(g, markers, alpha);
  std::vector<int> cand;
  for (int v : members)
    if (dout[v] < 0 && dmark[v] < 0) cand.push_back(v);
  std::sort(cand.begin(), cand.end(), [&](int a, int b) { return g.id(a) < g.id(b); });
  std::vector<int> out;
  std::vector<char> blocked(g.size(), 0);
  for (int v : cand) {
    if (blocked[v]) continue;
    out.push_back(v);
    for (const auto& b : ball(g, v, 2 * alpha)) blocked[b.node] = 1;
  }
  return out;
}

}  // namespace

InitialClustering build_initial_clustering(const Graph& g, const ColoringConstants& k) {
  need(k.delta >= 2 && k.delta >= g.max_degree(), "initial coloring needs delta >= max(2, max degree)");
  need(k.cluster_radius >= 1 && k.cluster_radius < INT_MAX, "cluster radius out of range");
  InitialClustering out;
  out.cluster_of.assign(g.size(), -1);
  if (g.size() == 0) return out;
  const auto p = initial_partition(g, k, nullptr, nullptr, true);
  out.ruling = p.ruling;
  const int m = static_cast<int>(p.ruling.size());
  std::vector<int> remap(m, -1);
  for (int c : [&] {
         std::vector<int> o(m);
         std::iota(o.begin(), o.end(), 0);
         std::sort(o.begin(), o.end(), [&](int a, int b) { return g.id(p.ruling[a]) < g.id(p.ruling[b]); });
         return o;
       }()) {
    if (!p.alive[c]) continue;
    remap[c] = static_cast<int>(out.clusters.size());
    ColorCluster cl;
    cl.center = p.ruling[c];
    cl.broken = p.broken[c];
    out.clusters.push_back(cl);
    out.survivors.push_back(p.ruling[c]);
    if (p.broken[c]) out.broken_repaired.push_back(p.ruling[c]);
  }
  for (int v = 0; v < g.size(); ++v) {
    out.cluster_of[v] = remap[p.final_label[v]];
    out.clusters[out.cluster_of[v]].members.push_back(v);
  }
  const int nc = static_cast<int>(out.clusters.size());
  const auto deg = cluster_degrees(g, out.cluster_of, nc);
  for (int c = 0; c < nc; ++c) {
    auto& cl = out.clusters[c];
    const auto d = bfs(g, cl.center);
    for (int v : cl.members)
      if (d[v] < 0 || d[v] > k.cluster_reach)
        throw InfeasibleError("cluster radius <= cluster_reach",
                              "cluster of " + id_str(g, cl.center) + " reaches node " + id_str(g, v));
    cl.degree = deg[c];
    cl.bucket = bucket_of(k.delta, cl.degree);
    if (cl.bucket > k.max_bucket)
      throw Error(ErrorKind::palette_exceeded, "cluster degree " + std::to_string(cl.degree) + " exceeds the last bucket");
  }
  // Cluster colors: greedy per bucket in ascending center ID.
  std::vector<std::vector<int>> cadj(nc);
  for (auto [u, v] : g.edges()) {
    const int a = out.cluster_of[u], b = out.cluster_of[v];
    if (a != b) {
      cadj[a].push_back(b);
      cadj[b].push_back(a);
    }
  }
  std::vector<long> idx(nc, -1);
  for (int c = 0; c < nc; ++c) {
    std::vector<long> used;
    for (int o : cadj[c])
      if (idx[o] >= 0 && out.clusters[o].bucket == out.clusters[c].bucket) used.push_back(idx[o]);
    std::sort(used.begin(), used.end());
    long x = 0;
    for (long u : used)
      if (u == x) ++x;
    idx[c] = x;
    out.clusters[c].index = x;
    out.clusters[c].color = bucket_offset(k.delta, out.clusters[c].bucket) + x + 1;
  }
  // Holders.
  for (int c = 0; c < nc; ++c) {
    auto& cl = out.clusters[c];
    if (cl.degree == 0) continue;
    const int w = bucket_width(k.delta, cl.bucket);
    const bool high = static_cast<double>(cl.degree) >= k.high_degree;
    auto h = high ? internal_holders(g, out.cluster_of, cl.members, out.ruling, k.alpha)
                  : path_holders(g, out.cluster_of, c, cl.center, cl.members, out.ruling, k.alpha);
    if (static_cast<int>(h.size()) < w)
      throw InfeasibleError(high ? "internal holders >= color bits" : "color path holders >= color bits",
                            "cluster of " + id_str(g, cl.center) + " has " + std::to_string(h.size()) + " of " +
                                std::to_string(w));
    h.resize(w);
    std::sort(h.begin(), h.end(), [&](int a, int b) { return g.id(a) < g.id(b); });
    cl.holders = h;
  }
  return out;
}

Advice initial_coloring_advice(const Graph& g, const InitialClustering& c) {
  Advice a(g.size());
  for (int v : c.ruling) a.bits[v] = "111";
  for (int v : c.survivors) a.bits[v] = "11";
  for (const auto& cl : c.clusters) {
    const std::string bits = cl.holders.empty() ? "" : to_binary(cl.index, static_cast<int>(cl.holders.size()));
    for (std::size_t i = 0; i < cl.holders.size(); ++i) a.bits[cl.holders[i]] = bits.substr(i, 1);
  }
  a.kind = AdviceKind::variable;
  a.bound = 3;
  return a;
}

namespace {

std::vector<long> linial_round_impl(const Graph& g, const std::vector<long>& colors, const LinialStep& s,
                                    bool strict) {
  if (strict) return linial_round(g, colors, s);
  std::vector<long> c = colors;
  for (auto& x : c) x = std::clamp(x, 1L, s.palette_in);
  // Nodes whose neighborhood breaks the round keep an arbitrary color; the
  // damage spreads one hop per round and stays outside the trusted radius.
  std::vector<long> out(g.size(), 1);
  auto eval = [&](long col, long x) {
    long v = col - 1, r = 0, pw = 1;
    for (int i = 0; i <= s.d; ++i) {
      r = (r + (v % s.q) * pw) % s.q;
      v /= s.q;
      pw = (pw * x) % s.q;
    }
    return r;
  };
  for (int v = 0; v < g.size(); ++v)
    for (long x = 0; x < s.q; ++x) {
      const long y = eval(c[v], x);
      bool free = true;
      for (int u : g.neighbors(v))
        if (eval(c[u], x) == y) {
          free = false;
          break;
        }
      if (free) {
        out[v] = x * s.q + y + 1;
        break;
      }
    }
  return out;
}

std::vector<long> linial_reduce_impl(const Graph& g, const std::vector<long>& colors, long k, int delta,
                                     bool strict) {
  if (strict) return linial_reduce(g, colors, k, delta);
  std::vector<long> cur = colors;
  for (const auto& step : linial_schedule(k, delta)) cur = linial_round_impl(g, cur, step, false);
  return cur;
}

// list_coloring; outside strict mode violations leave the node at its first
// list color instead of throwing.
std::vector<int> list_coloring_impl(const Graph& g, const std::vector<long>& base,
                                    const std::vector<std::vector<int>>& lists, bool strict) {
  if (strict) return list_coloring(g, base, lists);
  std::vector<int> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return base[a] != base[b] ? base[a] < base[b] : g.id(a) < g.id(b);
  });
  std::vector<int> col(g.size(), 0);
  for (int v : order) {
    std::vector<int> l = lists[v];
    std::sort(l.begin(), l.end());
    for (int c : l) {
      bool used = false;
      for (int u : g.neighbors(v)) used = used || col[u] == c;
      if (!used) {
        col[v] = c;
        break;
      }
    }
    if (col[v] == 0 && !l.empty()) col[v] = l[0];
  }
  return col;
}

long linial_rounds(long k, int delta) { return static_cast<long>(linial_schedule(k, delta).size()); }

Advice view_advice(const View& view) {
  Advice a(view.size());
  for (int i = 0; i < view.size(); ++i) a.bits[i] = view.nodes[i].advice;
  return a;
}

std::vector<int> view_degrees(const View& view) {
  std::vector<int> d(view.size());
  for (int i = 0; i < view.size(); ++i) d[i] = view.nodes[i].degree;
  return d;
}

Solution node_solution(const std::vector<int>& c) {
  Solution s(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) s[i].node = c[i];
  return s;
}

Solution node_solution(const std::vector<long>& c) {
  Solution s(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) s[i].node = static_cast<int>(c[i]);
  return s;
}

void fail_if(bool strict, bool bad, const std::string& what) {
  if (strict && bad) decode_fail(what);
}

std::vector<long> initial_decode_impl(const Graph& g, const Advice& a, const ColoringConstants& k, bool strict,
                                      std::vector<long>* pre_linial) {
  const int n = g.size();
  const int delta = k.delta;
  std::vector<int> ruling;
  std::vector<char> alive;
  for (int v : g.by_id())
    if (a.bits[v] == "11" || a.bits[v] == "111") {
      ruling.push_back(v);
      alive.push_back(a.bits[v] == "11");
    }
  std::vector<long> combined(n, 1);
  if (ruling.empty()) {
    fail_if(strict && n > 0, true, "no cluster markers");
  } else {
    const auto p = initial_partition(g, k, &ruling, &alive, strict);
    const int m = static_cast<int>(ruling.size());
    const auto deg = cluster_degrees(g, p.final_label, m);
    const auto mem = members_of(p.final_label, m);
    std::vector<long> cluster_color(m, 1);
    for (int c = 0; c < m; ++c) {
      if (mem[c].empty()) continue;
      int bucket = bucket_of(delta, deg[c]);
      fail_if(strict, bucket > k.max_bucket, "cluster degree beyond the last bucket");
      bucket = std::min(bucket, k.max_bucket);
      long idx = 0;
      if (deg[c] > 0) {
        std::vector<int> holders;
        for (int v : mem[c])
          if (a.bits[v].size() == 1) holders.push_back(v);
        std::sort(holders.begin(), holders.end(), [&](int x, int y) { return g.id(x) < g.id(y); });
        const int w = bucket_width(delta, bucket);
        fail_if(strict, static_cast<int>(holders.size()) != w, "cluster color holders do not match the bucket width");
        if (static_cast<int>(holders.size()) == w) {
          std::string bits;
          for (int h : holders) bits += a.bits[h];
          idx = static_cast<long>(from_binary(bits, 0, w));
        }
        fail_if(strict, idx >= pow_sat(delta, bucket), "cluster color beyond its bucket");
        if (idx >= pow_sat(delta, bucket)) idx = 0;
      }
      cluster_color[c] = bucket_offset(delta, bucket) + idx + 1;
    }
    // Cluster interiors: greedy by ID in Delta + 1 colors.
    std::vector<int> inner(n, 0);
    for (int v : g.by_id()) {
      if (p.final_label[v] < 0) continue;
      std::vector<char> used(delta + 3, 0);
      for (int u : g.neighbors(v))
        if (p.final_label[u] == p.final_label[v] && inner[u] > 0 && inner[u] <= delta + 1) used[inner[u]] = 1;
      int c = 1;
      while (c <= delta + 1 && used[c]) ++c;
      inner[v] = std::min(c, delta + 1);
    }
    for (int v = 0; v < n; ++v)
      if (p.final_label[v] >= 0) combined[v] = (cluster_color[p.final_label[v]] - 1) * (delta + 1) + inner[v];
  }
  if (pre_linial) *pre_linial = combined;
  return linial_reduce_impl(g, combined, initial_palette(k), delta, strict);
}

}  // namespace

std::vector<long> initial_coloring_decode(const Graph& g, const Advice& a, const ColoringConstants& k,
                                          std::vector<long>* pre_linial) {
  need(a.size() == g.size(), "advice size does not match the graph");
  return initial_decode_impl(g, a, k, true, pre_linial);
}

Schema initial_coloring_schema(const ColoringConstants& k) {
  Schema s;
  s.name = "initial-coloring";
  s.meta.kind = AdviceKind::variable;
  s.meta.beta = 3;
  s.encode = [k](const Graph& g, const std::vector<Solution>&) {
    const auto c = build_initial_clustering(g, k);
    auto a = initial_coloring_advice(g, c);
    const auto col = initial_coloring_decode(g, a, k);
    for (auto [u, v] : g.edges())
      if (col[u] == col[v]) throw Error(ErrorKind::encode_failed, "initial coloring decodes improperly at " + id_str(g, u));
    return a;
  };
  s.decode.radius = static_cast<int>(std::min<long>(INT_MAX / 2, 3 * k.cluster_reach + 3 * k.cluster_radius + 2 +
                                                                     linial_rounds(initial_palette(k), k.delta)));
  s.decode.eval = [k](const View& view) {
    return node_solution(initial_decode_impl(view.as_graph(), view_advice(view), k, view.closed(), nullptr));
  };
  return s;
}

Schema list_coloring_schema(const ColoringConstants& k) {
  Schema s;
  s.name = "list-coloring";
  s.meta.kind = AdviceKind::variable;
  s.meta.beta = 0;
  s.inputs = 1;
  s.encode = [](const Graph& g, const std::vector<Solution>&) { return Advice(g.size()); };
  s.decode.radius = static_cast<int>(linial_target(k.delta) + 1);
  s.decode.eval = [k](const View& view) {
    const Graph h = view.as_graph();
    std::vector<long> base(view.size());
    for (int i = 0; i < view.size(); ++i) base[i] = view.nodes[i].given.at(0).node;
    std::vector<int> all(k.delta + 1);
    std::iota(all.begin(), all.end(), 1);
    return node_solution(list_coloring_impl(h, base, std::vector<std::vector<int>>(view.size(), all), view.closed()));
  };
  return s;
}

// ------------------------------------------------- Delta+1 -> Delta stage

std::vector<int> canonical_path(const Graph& g, int a, int b, long limit) {
  const auto d = bfs(g, a, static_cast<int>(std::min<long>(limit, INT_MAX)));
  if (d[b] < 0) return {};
  std::vector<int> p{b};
  for (int v = b; v != a;) {
    for (int u : g.neighbors(v))
      if (d[u] == d[v] - 1) {
        v = u;
        break;
      }
    p.push_back(v);
  }
  std::reverse(p.begin(), p.end());
  return p;
}

namespace {

struct Forest {
  std::vector<int> depth, parent;
};

// BFS forest from `roots`; parent = smallest-ID neighbor one layer up.
Forest forest_from(const Graph& g, const std::vector<int>& roots) {
  Forest f;
  f.depth = multi_bfs(g, roots);
  f.parent.assign(g.size(), -1);
  for (int v = 0; v < g.size(); ++v) {
    if (f.depth[v] <= 0) continue;
    for (int u : g.neighbors(v))
      if (f.depth[u] == f.depth[v] - 1) {
        f.parent[v] = u;
        break;
      }
  }
  return f;
}

int ancestor(const Forest& f, int v, long steps) {
  for (long i = 0; i < steps && v >= 0; ++i) v = f.parent[v];
  return v;
}

int relay_bits(int delta) { return std::max(1, ceil_log2(static_cast<std::uint64_t>(delta))); }

long relay_bit_offset(const ColoringConstants& k, int t) { return k.alpha + 1 + static_cast<long>(t) * (2 * k.alpha + 1); }

std::vector<int> roots_plus_low(const std::vector<int>& ruling, const std::vector<int>& degree, int delta) {
  std::vector<char> in(degree.size(), 0);
  for (int v : ruling) in[v] = 1;
  for (std::size_t v = 0; v < degree.size(); ++v)
    if (degree[v] < delta) in[v] = 1;
  std::vector<int> out;
  for (std::size_t v = 0; v < degree.size(); ++v)
    if (in[v]) out.push_back(static_cast<int>(v));
  return out;
}

// Colors uncolored nodes of X jointly: lists are {1..delta} minus colors of
// colored neighbors, symmetry broken by the base coloring.
void color_layer(const Graph& g, std::vector<int>& col, const std::vector<int>& X, const std::vector<long>& base,
                 int delta, bool strict) {
  if (X.empty()) return;
  auto [h, map] = induced_subgraph(g, X);
  std::vector<std::vector<int>> lists(map.size());
  std::vector<long> hb(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    const int v = map[i];
    std::vector<char> used(delta + 2, 0);
    for (int u : g.neighbors(v))
      if (col[u] >= 1 && col[u] <= delta) used[col[u]] = 1;
    for (int c = 1; c <= delta; ++c)
      if (!used[c]) lists[i].push_back(c);
    hb[i] = base[v];
  }
  std::vector<int> got;
  if (strict) {
    try {
      got = list_coloring(h, hb, lists);
    } catch (const Error& e) {
      decode_fail(std::string("layer list coloring: ") + e.what());
    }
  } else {
    got = list_coloring_impl(h, hb, lists, false);
  }
  for (std::size_t i = 0; i < map.size(); ++i) col[map[i]] = got[i];
}

RootReduction rr_impl(const Graph& g, const std::vector<int>& degree, const std::vector<int>& coloring,
                      const std::vector<long>& base, const ColoringConstants& k, int n_total, const RelayAdvice* given,
                      bool strict) {
  const int n = g.size();
  const int delta = k.delta;
  need(static_cast<int>(degree.size()) == n && static_cast<int>(coloring.size()) == n &&
           static_cast<int>(base.size()) == n,
       "reduce to roots: wrong length");
  RootReduction out;
  out.far = effective_far_distance(k, n_total);
  const long L = out.far, s = k.relay_spacing;
  need(L >= 1 && L < INT_MAX && s >= 1 && s < INT_MAX, "reduce to roots: distances out of range");
  std::vector<int> col = coloring;
  if (strict) {
    for (int v = 0; v < n; ++v) {
      fail_if(true, col[v] < 1 || col[v] > delta + 1, "input is not a Delta+1 coloring at node " + id_str(g, v));
      for (int u : g.neighbors(v)) fail_if(true, col[u] == col[v], "input not proper at node " + id_str(g, v));
    }
  }
  std::vector<int> U;
  for (int v : g.by_id())
    if (col[v] == delta + 1) U.push_back(v);
  if (given) {
    out.ruling = given->roots;
    for (int v : out.ruling) fail_if(strict, col[v] != delta + 1, "root marker on a node without color Delta+1");
  } else if (!U.empty()) {
    out.ruling = ruling_set(g, static_cast<int>(L), static_cast<int>(L), U);
  }
  std::sort(out.ruling.begin(), out.ruling.end(), [&](int a, int b) { return g.id(a) < g.id(b); });
  for (int v : U) col[v] = 0;
  const Forest F = forest_from(g, roots_plus_low(out.ruling, degree, delta));

  // Relay layers.
  std::vector<int> layer_of(n, 0);
  if (given) {
    for (int v : given->relays) {
      const bool ok = F.depth[v] >= s && F.depth[v] % s == 0;
      fail_if(strict, !ok, "relay marker off a relay layer at node " + id_str(g, v));
      if (ok) {
        out.relays.push_back(v);
        layer_of[v] = static_cast<int>(F.depth[v] / s);
      }
    }
  } else {
    std::vector<char> active(n, 0);
    for (int u : U)
      for (int v = u; v >= 0 && !active[v]; v = F.parent[v]) active[v] = 1;
    int maxd = 0;
    for (int v = 0; v < n; ++v)
      if (active[v]) maxd = std::max(maxd, F.depth[v]);
    for (long i = 1; i * s <= maxd; ++i) {
      std::vector<int> cand;
      for (int v : g.by_id())
        if (active[v] && F.depth[v] == i * s) cand.push_back(v);
      if (cand.empty()) continue;
      for (int v : ruling_set(g, static_cast<int>(s), static_cast<int>(s), cand)) {
        out.relays.push_back(v);
        layer_of[v] = static_cast<int>(i);
      }
    }
  }
  std::sort(out.relays.begin(), out.relays.end(), [&](int a, int b) {
    return layer_of[a] != layer_of[b] ? layer_of[a] > layer_of[b] : g.id(a) < g.id(b);
  });
  for (int v : out.relays) out.relay_layer.push_back(layer_of[v]);

  // Phase 1: chains of uncolored nodes push their gap to the F2 roots.
  auto roots2 = roots_plus_low(out.ruling, degree, delta);
  roots2.insert(roots2.end(), out.relays.begin(), out.relays.end());
  const Forest F2 = forest_from(g, roots2);
  int maxd2 = 0;
  for (int v = 0; v < n; ++v) {
    maxd2 = std::max(maxd2, F2.depth[v]);
    fail_if(strict, col[v] == 0 && F2.depth[v] < 0, "uncolored node " + id_str(g, v) + " reaches no root");
  }
  for (int d = maxd2; d >= 1; --d) {
    std::vector<int> X;
    for (int v : g.by_id())
      if (col[v] == 0 && F2.depth[v] == d) X.push_back(v);
    for (int v : X) col[F2.parent[v]] = 0;
    color_layer(g, col, X, base, delta, strict);
  }

  // Phase 2: relays, top layer first, shift their gap to the layer below.
  out.relay_color.assign(out.relays.size(), 0);
  for (std::size_t r = 0; r < out.relays.size(); ++r) {
    const int rho = out.relays[r];
    const int i = out.relay_layer[r];
    if (col[rho] != 0) {
      out.relay_color[r] = col[rho];
      continue;
    }
    const int a = ancestor(F, rho, s);
    int target = a;
    if (i > 1 && a >= 0) {
      target = -1;
      for (const auto& b : ball(g, a, static_cast<int>(s)))
        if (layer_of[b.node] == i - 1) {
          target = b.node;
          break;
        }
    }
    fail_if(strict, target < 0, "relay " + id_str(g, rho) + " finds no target");
    if (target < 0) continue;
    const auto path = canonical_path(g, rho, target, 3 * s);
    fail_if(strict, path.size() < 2, "relay " + id_str(g, rho) + " has no path to its target");
    for (std::size_t j = 0; j + 1 < path.size(); ++j) {
      const int cur = path[j];
      col[path[j + 1]] = 0;
      int c = smallest_free(g, col, cur, delta);
      if (j == 0 && given) {
        const int want = given->relay_color[rho];
        std::vector<char> used(delta + 2, 0);
        for (int u : g.neighbors(cur))
          if (col[u] >= 1 && col[u] <= delta) used[col[u]] = 1;
        const bool ok = want >= 1 && want <= delta && !used[want];
        fail_if(strict, !ok, "relay color of " + id_str(g, rho) + " is not free");
        if (ok) c = want;
      }
      fail_if(strict, c == 0, "no free color on the relay path at node " + id_str(g, cur));
      col[cur] = c;
      if (j == 0) out.relay_color[r] = c;
    }
  }

  // End phase: low-degree nodes pick; what stays uncolored are roots.
  std::vector<char> in_r(n, 0);
  for (int v : out.ruling) in_r[v] = 1;
  std::vector<int> X;
  for (int v : g.by_id())
    if (col[v] == 0 && !in_r[v]) {
      fail_if(strict, degree[v] >= delta, "uncolored node " + id_str(g, v) + " is neither a root nor low-degree");
      X.push_back(v);
    }
  color_layer(g, col, X, base, delta, strict);
  for (int v : g.by_id())
    if (col[v] == 0) out.roots.push_back(v);
  out.coloring = std::move(col);
  return out;
}

}  // namespace

RootReduction reduce_to_roots(const Graph& g, const std::vector<int>& degree, const std::vector<int>& coloring,
                              const std::vector<long>& base, const ColoringConstants& k, int n_total,
                              const RelayAdvice* given) {
  return rr_impl(g, degree, coloring, base, k, n_total, given, true);
}

Advice reduce_to_roots_advice(const Graph& g, const std::vector<int>& degree, const RootReduction& r,
                              const ColoringConstants& k) {
  const int b = relay_bits(k.delta);
  if (!(relay_bit_offset(k, b - 1) < k.relay_spacing / 2.0))
    throw InfeasibleError("relay bits fit in half the relay spacing",
                          "last offset " + std::to_string(relay_bit_offset(k, b - 1)) + ", spacing " +
                              std::to_string(k.relay_spacing));
  Advice a(g.size());
  for (int v : r.ruling) a.bits[v] = "111";
  const Forest F = forest_from(g, roots_plus_low(r.ruling, degree, k.delta));
  for (std::size_t i = 0; i < r.relays.size(); ++i) {
    const int rho = r.relays[i];
    a.bits[rho] = "11";
    const std::string bits = to_binary(static_cast<std::uint64_t>(r.relay_color[i] - 1), b);
    for (int t = 0; t < b; ++t) {
      const int h = ancestor(F, rho, relay_bit_offset(k, t));
      if (h < 0 || !a.bits[h].empty())
        throw InfeasibleError("relay bit holders are distinct", "relay " + id_str(g, rho));
      a.bits[h] = bits.substr(t, 1);
    }
  }
  a.kind = AdviceKind::variable;
  a.bound = 3;
  return a;
}

namespace {

RelayAdvice read_relay_advice(const Graph& g, const std::vector<int>& degree, const Advice& a,
                              const ColoringConstants& k, bool strict) {
  RelayAdvice r;
  r.relay_color.assign(g.size(), 0);
  for (int v : g.by_id()) {
    if (a.bits[v] == "111") r.roots.push_back(v);
    if (a.bits[v] == "11") r.relays.push_back(v);
  }
  const Forest F = forest_from(g, roots_plus_low(r.roots, degree, k.delta));
  const int b = relay_bits(k.delta);
  for (int rho : r.relays) {
    std::string bits;
    for (int t = 0; t < b; ++t) {
      const int h = ancestor(F, rho, relay_bit_offset(k, t));
      const bool ok = h >= 0 && a.bits[h].size() == 1;
      fail_if(strict, !ok, "relay color bits missing for relay " + id_str(g, rho));
      bits += ok ? a.bits[h] : "0";
    }
    r.relay_color[rho] = static_cast<int>(from_binary(bits, 0, b)) + 1;
  }
  return r;
}

int far_for_radius(const ColoringConstants& k) {
  return static_cast<int>(std::min<long>(INT_MAX / 16, effective_far_distance(k, INT_MAX)));
}

}  // namespace

Schema reduce_to_roots_schema(const ColoringConstants& k) {
  Schema s;
  s.name = "reduce-to-roots";
  s.meta.kind = AdviceKind::variable;
  s.meta.beta = 3;
  s.inputs = 2;
  auto inputs = [k](const std::vector<Output>& c1, const std::vector<Output>& c0, std::vector<int>& col,
                    std::vector<long>& base) {
    col.resize(c1.size());
    base.resize(c0.size());
    for (std::size_t i = 0; i < c1.size(); ++i) col[i] = c1[i].node;
    for (std::size_t i = 0; i < c0.size(); ++i) base[i] = c0[i].node;
  };
  s.encode = [k, inputs](const Graph& g, const std::vector<Solution>& given) {
    need(given.size() == 2, "reduce to roots needs two inputs");
    std::vector<int> col;
    std::vector<long> base;
    inputs(given[0], given[1], col, base);
    std::vector<int> degree(g.size());
    for (int v = 0; v < g.size(); ++v) degree[v] = g.degree(v);
    const auto r = reduce_to_roots(g, degree, col, base, k, g.size());
    return reduce_to_roots_advice(g, degree, r, k);
  };
  const long L = far_for_radius(k);
  s.decode.radius = static_cast<int>(std::min<long>(INT_MAX / 2, 3 * L + 3 * k.relay_spacing + 4));
  s.decode.eval = [k, inputs](const View& view) {
    const Graph h = view.as_graph();
    const bool strict = view.closed();
    std::vector<Output> c1(view.size()), c0(view.size());
    for (int i = 0; i < view.size(); ++i) {
      c1[i] = view.nodes[i].given.at(0);
      c0[i] = view.nodes[i].given.at(1);
    }
    std::vector<int> col;
    std::vector<long> base;
    inputs(c1, c0, col, base);
    if (!strict)
      for (auto& c : col) c = std::clamp(c, 1, k.delta + 1);
    const auto degree = view_degrees(view);
    const auto a = view_advice(view);
    const auto given = read_relay_advice(h, degree, a, k, strict);
    return node_solution(rr_impl(h, degree, col, base, k, view.n, &given, strict).coloring);
  };
  return s;
}

// ------------------------------------------------------------ recoloring

namespace {

// Path from u to z through canonical segments between the waypoints at
// multiples of `spacing` along canonical_path(u, z).
std::vector<int> segmented_path(const Graph& g, int u, int z, long spacing, long limit) {
  const auto p = canonical_path(g, u, z, limit);
  if (p.empty()) return {};
  const long m = static_cast<long>(p.size()) - 1;
  std::vector<int> way{u};
  for (long j = 1; j * spacing <= m - spacing; ++j) way.push_back(p[j * spacing]);
  way.push_back(z);
  std::vector<int> out{u};
  for (std::size_t i = 0; i + 1 < way.size(); ++i) {
    if (way[i] == way[i + 1]) continue;
    const auto seg = canonical_path(g, way[i], way[i + 1], limit);
    out.insert(out.end(), seg.begin() + 1, seg.end());
  }
  return out;
}

// Sequential shift: every path node frees its successor, then takes the
// smallest free color. Returns false when some node finds none.
bool simulate_shift(const Graph& g, std::vector<int>& col, const std::vector<int>& path, int delta,
                    std::vector<int>* colors) {
  if (colors) colors->clear();
  for (std::size_t j = 0; j < path.size(); ++j) {
    if (j + 1 < path.size()) col[path[j + 1]] = 0;
    const int c = smallest_free(g, col, path[j], delta);
    if (c == 0) return false;
    col[path[j]] = c;
    if (colors) colors->push_back(c);
  }
  return true;
}

bool qualifies(const Graph& g, const std::vector<int>& degree, const std::vector<int>& col,
               const std::vector<int>& path, int delta) {
  const int z = path.back();
  if (degree[z] < delta) return true;
  const int skip = path.size() >= 2 ? path[path.size() - 2] : -1;
  std::vector<int> seen(delta + 2, 0);
  for (int u : g.neighbors(z)) {
    if (u == skip || col[u] < 1 || col[u] > delta) continue;
    if (++seen[col[u]] >= 2) return true;
  }
  return false;
}

// Rebuilds the recoloring path of uncolored node u from the markers.
std::vector<int> read_plan_path(const Graph& g, const Advice& a, int u, long spacing, long radius) {
  std::vector<int> path{u};
  if (a.bits[u] == "111") return path;
  int cur = u;
  while (static_cast<long>(path.size()) - 1 <= radius) {
    int next = -1;
    std::vector<int> seg_next;
    for (const auto& b : ball(g, cur, static_cast<int>(std::min<long>(2 * spacing - 1, INT_MAX)))) {
      if (b.dist == 0 || a.bits[b.node] != "111") continue;
      auto seg = canonical_path(g, cur, b.node, b.dist);
      if (seg.size() >= 2 && !a.bits[seg[1]].empty()) {
        next = b.node;
        seg_next = std::move(seg);
        break;
      }
    }
    if (next < 0) {
      for (const auto& b : ball(g, cur, static_cast<int>(spacing))) {
        if (b.dist != spacing || a.bits[b.node] != "11") continue;
        auto seg = canonical_path(g, cur, b.node, b.dist);
        if (seg.size() >= 2 && !a.bits[seg[1]].empty()) {
          next = b.node;
          seg_next = std::move(seg);
          break;
        }
      }
    }
    if (next < 0) return {};
    path.insert(path.end(), seg_next.begin() + 1, seg_next.end());
    if (a.bits[next] == "111") return static_cast<long>(path.size()) - 1 <= radius ? path : std::vector<int>{};
    cur = next;
  }
  return {};
}

Advice plan_advice(const Graph& g, const std::vector<RecolorPlan>& plans, long spacing) {
  Advice a(g.size());
  for (const auto& p : plans) {
    const long m = static_cast<long>(p.path.size()) - 1;
    a.bits[p.path.back()] = "111";
    for (long j = 1; j * spacing <= m - spacing; ++j) a.bits[p.path[j * spacing]] = "11";
    for (long j = 0; j * spacing + 1 <= m; ++j) {
      if (j > 0 && j * spacing > m - spacing) break;
      const int d = p.path[j * spacing + 1];
      if (a.bits[d].empty()) a.bits[d] = "1";
    }
  }
  a.kind = AdviceKind::variable;
  a.bound = 3;
  return a;
}

std::vector<int> fix_decode_impl(const Graph& g, const Advice& a, const std::vector<int>& partial,
                                 const ColoringConstants& k, int n_total, bool strict) {
  const long radius = effective_plan_radius(k, n_total);
  std::vector<int> col = partial;
  std::vector<int> out = partial;
  for (int u : g.by_id()) {
    if (partial[u] != 0) continue;
    const auto path = read_plan_path(g, a, u, k.marker_spacing, radius);
    fail_if(strict, path.empty(), "no recoloring path from node " + id_str(g, u));
    if (path.empty()) continue;
    std::vector<int> sim = partial;
    std::vector<int> colors;
    const bool ok = simulate_shift(g, sim, path, k.delta, &colors);
    fail_if(strict, !ok, "recoloring from node " + id_str(g, u) + " gets stuck");
    if (!ok) continue;
    for (std::size_t j = 0; j < path.size(); ++j) out[path[j]] = colors[j];
  }
  if (strict)
    for (int v = 0; v < g.size(); ++v) {
      fail_if(true, out[v] < 1 || out[v] > k.delta, "node " + id_str(g, v) + " ends uncolored");
      for (int u : g.neighbors(v)) fail_if(true, out[u] == out[v], "recolored output not proper at " + id_str(g, v));
    }
  return out;
}

}  // namespace

std::vector<RecolorPlan> find_recolor_plan(const Graph& g, const std::vector<int>& degree,
                                           const std::vector<int>& partial, int delta, long radius,
                                           long marker_spacing) {
  const int n = g.size();
  need(static_cast<int>(partial.size()) == n && static_cast<int>(degree.size()) == n, "recolor plan: wrong length");
  need(delta >= 1 && radius >= 0 && marker_spacing >= 1, "recolor plan: bad parameters");
  for (int v = 0; v < n; ++v) {
    need(partial[v] >= 0 && partial[v] <= delta, "recolor plan: color out of range at node " + id_str(g, v));
    if (partial[v] == 0) continue;
    for (int u : g.neighbors(v)) need(partial[u] != partial[v], "recolor plan: input not proper at " + id_str(g, v));
  }
  std::vector<RecolorPlan> plans;
  for (int u : g.by_id()) {
    if (partial[u] != 0) continue;
    RecolorPlan plan;
    plan.root = u;
    for (const auto& b : ball(g, u, static_cast<int>(std::min<long>(radius, INT_MAX)))) {
      const auto path = segmented_path(g, u, b.node, marker_spacing, radius);
      if (path.empty() || !qualifies(g, degree, partial, path, delta)) continue;
      std::vector<int> sim = partial;
      std::vector<int> colors;
      if (!simulate_shift(g, sim, path, delta, &colors)) continue;
      plan.path = path;
      plan.colors = colors;
      break;
    }
    if (plan.path.empty())
      throw Error(ErrorKind::encode_failed, "no recolor target within radius " + std::to_string(radius) +
                                                " of node " + id_str(g, u));
    plans.push_back(std::move(plan));
  }
  // Plans must be disjoint and non-adjacent so they apply independently.
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < plans.size(); ++i)
    for (int v : plans[i].path) {
      if (owner[v] >= 0 && owner[v] != static_cast<int>(i))
        throw InfeasibleError("recolor plans are separated", "plans meet at node " + id_str(g, v));
      owner[v] = static_cast<int>(i);
    }
  for (std::size_t i = 0; i < plans.size(); ++i)
    for (int v : plans[i].path)
      for (int u : g.neighbors(v))
        if (owner[u] >= 0 && owner[u] != static_cast<int>(i))
          throw InfeasibleError("recolor plans are separated", "plans touch at node " + id_str(g, v));
  const auto done = apply_recolor_plans(partial, plans);
  for (int v = 0; v < n; ++v) {
    if (done[v] < 1 || done[v] > delta)
      throw Error(ErrorKind::encode_failed, "recolor plans leave node " + id_str(g, v) + " uncolored");
    for (int u : g.neighbors(v))
      if (done[u] == done[v]) throw Error(ErrorKind::encode_failed, "recolor plans not proper at " + id_str(g, v));
  }
  return plans;
}

std::vector<int> apply_recolor_plans(const std::vector<int>& partial, const std::vector<RecolorPlan>& plans) {
  std::vector<int> out = partial;
  for (const auto& p : plans)
    for (std::size_t j = 0; j < p.path.size(); ++j) out[p.path[j]] = p.colors[j];
  return out;
}

Schema fix_root_colors_schema(const ColoringConstants& k) {
  Schema s;
  s.name = "fix-root-colors";
  s.meta.kind = AdviceKind::variable;
  s.meta.beta = 3;
  s.inputs = 1;
  s.encode = [k](const Graph& g, const std::vector<Solution>& given) {
    need(given.size() == 1, "fix root colors needs one input");
    std::vector<int> partial(g.size()), degree(g.size());
    for (int v = 0; v < g.size(); ++v) {
      partial[v] = given[0][v].node;
      degree[v] = g.degree(v);
    }
    const auto plans = find_recolor_plan(g, degree, partial, k.delta, effective_plan_radius(k, g.size()),
                                         k.marker_spacing);
    auto a = plan_advice(g, plans, k.marker_spacing);
    for (const auto& p : plans)
      if (read_plan_path(g, a, p.root, k.marker_spacing, effective_plan_radius(k, g.size())) != p.path)
        throw InfeasibleError("marker paths decode uniquely", "plan of node " + id_str(g, p.root));
    return a;
  };
  const long pr = k.plan_radius > 0 ? k.plan_radius : std::max(1L, (static_cast<long>(far_for_radius(k)) - 2) / 2);
  s.decode.radius = static_cast<int>(std::min<long>(INT_MAX / 2, 2 * pr + 2));
  s.decode.eval = [k](const View& view) {
    std::vector<int> partial(view.size());
    for (int i = 0; i < view.size(); ++i) partial[i] = view.nodes[i].given.at(0).node;
    return node_solution(fix_decode_impl(view.as_graph(), view_advice(view), partial, k, view.n, view.closed()));
  };
  return s;
}

// ------------------------------------------------------------- pipeline

std::vector<Schema> delta_coloring_parts(const ColoringConstants& k) {
  return {initial_coloring_schema(k), list_coloring_schema(k), reduce_to_roots_schema(k), fix_root_colors_schema(k)};
}

DependencyDag delta_coloring_dag() { return DependencyDag{4, {{}, {0}, {1, 0}, {2}}}; }

Schema delta_schema(const ColoringConstants& k, const ComposeOptions& opt) {
  auto s = compose_schemas(delta_coloring_parts(k), delta_coloring_dag(), opt, 3);
  s.name = "delta-coloring";
  return s;
}

}  // namespace lca
