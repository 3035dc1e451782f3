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

#include <algorithm>
#include <climits>
#include <deque>
#include <random>

#include "lca/coloring.hpp"
#include "lca/lcl.hpp"

namespace lca {

namespace {

std::string id_str(const Graph& g, int v) { return std::to_string(g.id(v)); }

// BFS inside the nodes with comp[u] == comp[src] (and allowed[u] when
// allowed is non-empty), up to `limit` hops (-1 for none).
std::vector<int> comp_bfs(const Graph& g, const std::vector<int>& comp, int src, long limit,
                          const std::vector<char>& allowed = {}) {
  std::vector<int> d(g.size(), -1);
  d[src] = 0;
  std::deque<int> q{src};
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    if (limit >= 0 && d[v] >= limit) continue;
    for (int u : g.neighbors(v))
      if (d[u] < 0 && comp[u] == comp[src] && (allowed.empty() || allowed[u])) {
        d[u] = d[v] + 1;
        q.push_back(u);
      }
  }
  return d;
}

// Component ids of the nodes with keep[v]; -1 elsewhere. Components are
// numbered by their smallest ID.
std::vector<int> components_of(const Graph& g, const std::vector<char>& keep, int& count) {
  std::vector<int> comp(g.size(), -1);
  count = 0;
  for (int s : g.by_id()) {
    if (!keep[s] || comp[s] >= 0) continue;
    comp[s] = count;
    std::deque<int> q{s};
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (int u : g.neighbors(v))
        if (keep[u] && comp[u] < 0) {
          comp[u] = count;
          q.push_back(u);
        }
    }
    ++count;
  }
  return comp;
}

std::vector<std::vector<int>> members_by_id(const Graph& g, const std::vector<int>& comp, int count) {
  std::vector<std::vector<int>> m(count);
  for (int v : g.by_id())
    if (comp[v] >= 0) m[comp[v]].push_back(v);
  return m;
}

// Whether the component has diameter greater than d.
bool wider_than(const Graph& g, const std::vector<int>& comp, const std::vector<int>& members, long d) {
  for (int v : members) {
    const auto dist = comp_bfs(g, comp, v, d + 1);
    for (int u : members)
      if (dist[u] > d) return true;
  }
  return false;
}

int color1_neighbors(const Graph& g, const std::vector<int>& colors, int v) {
  int c = 0;
  for (int u : g.neighbors(v)) c += colors[u] == 1;
  return c;
}

bool common_color1_neighbor(const Graph& g, const std::vector<int>& colors, int x, int y) {
  for (int u : g.neighbors(x))
    if (colors[u] == 1 && g.adjacent(u, y)) return true;
  return false;
}

struct Candidate {
  int v = -1;
  std::vector<int> s, s2, ones;
  std::vector<int> touched;  // color-1 nodes adjacent to ones
};

struct Variable {
  int component = -1;
  int ruling = -1;
  std::vector<Candidate> options;
};

// Simple path of `len` nodes from v inside `allowed`, by DFS over
// neighbors in ID order.
bool long_path(const Graph& g, int v, int len, const std::vector<char>& allowed, std::vector<int>& path,
               std::vector<char>& on, long& budget) {
  path.push_back(v);
  on[v] = 1;
  if (static_cast<int>(path.size()) == len) return true;
  for (int u : g.neighbors(v))
    if (allowed[u] && !on[u] && --budget > 0 && long_path(g, u, len, allowed, path, on, budget)) return true;
  path.pop_back();
  on[v] = 0;
  return false;
}

std::vector<int> sorted_by_id(const Graph& g, std::vector<int> x) {
  std::sort(x.begin(), x.end(), [&](int a, int b) { return g.id(a) < g.id(b); });
  return x;
}

std::optional<Candidate> make_candidate(const Graph& g, const std::vector<int>& greedy, const std::vector<int>& comp,
                                        int v, const ColoringConstants& k) {
  const int delta = k.delta;
  std::vector<char> in_comp(g.size(), 0);
  for (int u = 0; u < g.size(); ++u) in_comp[u] = comp[u] == comp[v];
  Candidate c;
  c.v = v;
  c.s = single_or_double(g, greedy, in_comp, v, delta);
  if (c.s.empty()) return std::nullopt;
  // T_v: the component without S, its neighbors, and nodes sharing a
  // color-1 neighbor with S.
  std::vector<char> t = in_comp;
  for (int x : c.s) {
    t[x] = 0;
    for (int u : g.neighbors(x)) {
      t[u] = 0;
      if (greedy[u] == 1)
        for (int w : g.neighbors(u)) t[w] = 0;
    }
  }
  const auto d = comp_bfs(g, comp, v, k.path_reach);
  std::vector<int> order;
  for (int u = 0; u < g.size(); ++u)
    if (d[u] >= 0 && t[u]) order.push_back(u);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] != d[b] ? d[a] < d[b] : g.id(a) < g.id(b); });
  for (int start : order) {
    std::vector<int> path;
    std::vector<char> on(g.size(), 0);
    long budget = 200000;
    if (!long_path(g, start, delta + 1, t, path, on, budget)) continue;
    std::vector<char> allowed(g.size(), 0);
    for (int u : path) allowed[u] = 1;
    c.s2 = single_or_double(g, greedy, in_comp, start, delta + 1, allowed);
    if (c.s2.empty()) continue;
    std::vector<int> all = c.s;
    all.insert(all.end(), c.s2.begin(), c.s2.end());
    const int s = sorted_by_id(g, all).front();
    const bool in_s = std::find(c.s.begin(), c.s.end(), s) != c.s.end();
    c.ones = greedy[s] == 2 ? (in_s ? c.s : c.s2) : all;
    c.ones = sorted_by_id(g, c.ones);
    for (int x : c.ones)
      for (int u : g.neighbors(x))
        if (greedy[u] == 1) c.touched.push_back(u);
    std::sort(c.touched.begin(), c.touched.end());
    c.touched.erase(std::unique(c.touched.begin(), c.touched.end()), c.touched.end());
    return c;
  }
  return std::nullopt;
}

// First color-1 node (by ID) touched by the ones of two chosen groups, or -1.
int violated(const Graph& g, const std::vector<Variable>& vars, const std::vector<int>& choice,
             std::vector<int>& owners) {
  std::vector<int> first(g.size(), -1);
  int best = -1;
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (int u : vars[i].options[choice[i]].touched) {
      if (first[u] < 0) first[u] = static_cast<int>(i);
      else if (first[u] != static_cast<int>(i) && (best < 0 || g.id(u) < g.id(best))) best = u;
    }
  owners.clear();
  if (best < 0) return -1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& t = vars[i].options[choice[i]].touched;
    if (std::binary_search(t.begin(), t.end(), best)) owners.push_back(static_cast<int>(i));
  }
  return best;
}

std::vector<int> decode_impl(const Graph& g, const Advice& a, const ColoringConstants& k, bool strict) {
  const int n = g.size();
  std::vector<char> bit(n, 0);
  for (int v = 0; v < n; ++v) {
    if (strict && a.bits[v].size() != 1) throw Error(ErrorKind::malformed, "3-coloring advice is one bit per node");
    bit[v] = a.bits[v] == "1";
  }
  std::vector<int> out(n, 0);
  std::vector<char> rest(n, 1);
  for (int v = 0; v < n; ++v) {
    if (!bit[v]) continue;
    int c = 0;
    for (int u : g.neighbors(v)) c += bit[u];
    if (c <= 1) {
      out[v] = 1;
      rest[v] = 0;
    }
  }
  int count = 0;
  const auto comp = components_of(g, rest, count);
  const auto mem = members_by_id(g, comp, count);
  for (int c = 0; c < count; ++c) {
    if (!wider_than(g, comp, mem[c], k.small_diameter)) {
      const auto d = comp_bfs(g, comp, mem[c].front(), -1);
      for (int v : mem[c]) out[v] = d[v] % 2 == 0 ? 2 : 3;
      continue;
    }
    for (int u : mem[c]) {
      const auto du = comp_bfs(g, comp, u, k.search_radius + k.read_radius);
      int w = -1;
      for (int v : mem[c])
        if (bit[v] && du[v] >= 0 && du[v] <= k.search_radius &&
            (w < 0 || du[v] < du[w] || (du[v] == du[w] && g.id(v) < g.id(w))))
          w = v;
      if (w < 0) {
        if (strict) decode_fail("no advice group within the search radius of node " + id_str(g, u));
        out[u] = 2;
        continue;
      }
      const auto dw = comp_bfs(g, comp, w, k.read_radius);
      std::vector<char> in_ball(n, 0);
      int x = -1;
      for (int v : mem[c])
        if (bit[v] && dw[v] >= 0) {
          in_ball[v] = 1;
          if (x < 0 || g.id(v) < g.id(x)) x = v;
        }
      int groups = 0;
      components_of(g, in_ball, groups);
      if (du[x] < 0) {
        if (strict) decode_fail("group too far from node " + id_str(g, u));
        out[u] = 2;
        continue;
      }
      const bool even = du[x] % 2 == 0;
      out[u] = (groups == 1) == even ? 2 : 3;
    }
  }
  if (strict)
    for (auto [u, v] : g.edges())
      if (out[u] == out[v]) decode_fail("decoded 3-coloring not proper at node " + id_str(g, u));
  return out;
}

}  // namespace

std::vector<int> make_greedy(const Graph& g, std::vector<int> colors) {
  if (static_cast<int>(colors.size()) != g.size()) throw Error(ErrorKind::invalid_params, "coloring: wrong length");
  for (auto [u, v] : g.edges())
    if (colors[u] == colors[v] || colors[u] < 1 || colors[v] < 1)
      throw Error(ErrorKind::invalid_params, "coloring not proper at node " + id_str(g, u));
  for (bool changed = true; changed;) {
    changed = false;
    for (int v : g.by_id()) {
      std::vector<char> used(colors[v] + 1, 0);
      for (int u : g.neighbors(v))
        if (colors[u] < colors[v]) used[colors[u]] = 1;
      int c = 1;
      while (used[c]) ++c;
      if (c < colors[v]) {
        colors[v] = c;
        changed = true;
      }
    }
  }
  return colors;
}

std::vector<int> single_or_double(const Graph& g, const std::vector<int>& colors, const std::vector<char>& in_comp,
                                  int v, int reach, const std::vector<char>& allowed) {
  std::vector<int> keep(g.size(), -1);
  for (int u = 0; u < g.size(); ++u)
    if (in_comp[u] && (allowed.empty() || allowed[u])) keep[u] = 0;
  if (keep[v] < 0) return {};
  const auto d = comp_bfs(g, keep, v, reach);
  std::vector<int> order;
  for (int u = 0; u < g.size(); ++u)
    if (d[u] >= 0) order.push_back(u);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return d[a] != d[b] ? d[a] < d[b] : g.id(a) < g.id(b); });
  for (int w : order)
    if (color1_neighbors(g, colors, w) >= 2) return {w};
  for (int x : order)
    for (int y : g.neighbors(x))
      if (d[y] >= 0 && !common_color1_neighbor(g, colors, x, y)) return sorted_by_id(g, {x, y});
  return {};
}

ThreeColorEncoding three_color_encode(const Graph& g, const std::vector<int>& proper, const ColoringConstants& k,
                                      std::uint64_t seed) {
  const int n = g.size();
  if (k.delta < g.max_degree()) throw Error(ErrorKind::invalid_params, "delta below the maximum degree");
  std::vector<int> col = proper;
  if (col.empty()) {
    auto sol = solve_lcl(g, coloring_lcl(3), 5000000);
    if (!sol) throw Error(ErrorKind::invalid_params, "graph is not 3-colorable");
    col.resize(n);
    for (int v = 0; v < n; ++v) col[v] = (*sol)[v].node + 1;
  }
  for (int c : col)
    if (c < 1 || c > 3) throw Error(ErrorKind::invalid_params, "input coloring uses colors outside 1..3");
  ThreeColorEncoding enc;
  enc.greedy = make_greedy(g, col);
  const auto& greedy = enc.greedy;

  if (k.small_diameter < 2L * k.delta)
    throw InfeasibleError("small_diameter >= 2 delta", std::to_string(k.small_diameter));
  enc.checks.push_back("small_diameter >= 2 delta");
  if (k.group_candidates * k.candidate_spacing > k.group_radius)
    throw InfeasibleError("group_candidates * candidate_spacing <= group_radius",
                          std::to_string(k.group_candidates * k.candidate_spacing));
  enc.checks.push_back("group_candidates * candidate_spacing <= group_radius");

  std::vector<char> keep(n, 0);
  for (int v = 0; v < n; ++v) keep[v] = greedy[v] != 1;
  int count = 0;
  enc.component = components_of(g, keep, count);
  const auto mem = members_by_id(g, enc.component, count);
  enc.large.assign(count, 0);
  std::vector<Variable> vars;
  for (int c = 0; c < count; ++c) {
    enc.large[c] = wider_than(g, enc.component, mem[c], k.small_diameter);
    if (!enc.large[c]) continue;
    std::vector<char> blocked(n, 0);
    for (int r : mem[c]) {
      if (blocked[r]) continue;
      const auto d = comp_bfs(g, enc.component, r, -1);
      for (int u : mem[c])
        if (d[u] >= 0 && d[u] < k.ruling_spacing) blocked[u] = 1;
      int t = -1;
      for (int u : mem[c])
        if (d[u] == k.group_radius) {
          t = u;
          break;
        }
      if (t < 0)
        throw InfeasibleError("a node at group_radius from every ruling node", "ruling node " + id_str(g, r));
      std::vector<int> path{t};
      for (int v = t; v != r;) {
        for (int u : g.neighbors(v))
          if (d[u] == d[v] - 1 && enc.component[u] == c) {
            v = u;
            break;
          }
        path.push_back(v);
      }
      std::reverse(path.begin(), path.end());
      Variable var;
      var.component = c;
      var.ruling = r;
      std::vector<char> used(n, 0);
      for (long i = 1; i <= k.group_candidates; ++i) {
        auto cand = make_candidate(g, greedy, enc.component, path[i * k.candidate_spacing], k);
        if (!cand) continue;
        std::vector<int> all = cand->s;
        all.insert(all.end(), cand->s2.begin(), cand->s2.end());
        for (int x : all)
          if (used[x]) throw InfeasibleError("candidate groups are disjoint", "ruling node " + id_str(g, r));
        for (int x : all) used[x] = 1;
        var.options.push_back(std::move(*cand));
      }
      if (var.options.empty())
        throw InfeasibleError("every ruling node has a candidate group", "ruling node " + id_str(g, r));
      vars.push_back(std::move(var));
    }
  }
  enc.checks.push_back("a node at group_radius from every ruling node");
  enc.checks.push_back("candidate groups are disjoint");

  // Selection: resampling, with an exhaustive fallback for small instances.
  enc.variables = static_cast<int>(vars.size());
  std::mt19937_64 rng(seed);
  std::vector<int> choice(vars.size());
  auto draw = [&](int i) {
    choice[i] = static_cast<int>(std::uniform_int_distribution<int>(0, vars[i].options.size() - 1)(rng));
  };
  for (std::size_t i = 0; i < vars.size(); ++i) draw(static_cast<int>(i));
  const long budget = k.resample_factor * static_cast<long>(vars.size());
  std::vector<int> owners;
  while (violated(g, vars, choice, owners) >= 0 && enc.resample_rounds < budget) {
    for (int i : owners) draw(i);
    ++enc.resample_rounds;
  }
  if (violated(g, vars, choice, owners) >= 0) {
    if (enc.variables > k.exhaustive_limit)
      throw Error(ErrorKind::search_exhausted, "group selection exceeded " + std::to_string(budget) + " resamplings");
    enc.used_exhaustive = true;
    std::vector<int> cur(vars.size(), 0);
    bool found = false;
    while (!found) {
      if (violated(g, vars, cur, owners) < 0) {
        found = true;
        break;
      }
      std::size_t i = 0;
      while (i < cur.size() && ++cur[i] == static_cast<int>(vars[i].options.size())) cur[i++] = 0;
      if (i == cur.size()) break;
    }
    if (!found) throw Error(ErrorKind::search_exhausted, "no group selection keeps color-1 nodes apart");
    choice = cur;
  }

  enc.advice = Advice(n);
  for (int v = 0; v < n; ++v) enc.advice.bits[v] = greedy[v] == 1 ? "1" : "0";
  std::vector<int> group_of(n, -1);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const auto& o = vars[i].options[choice[i]];
    ThreeColorGroup grp;
    grp.component = vars[i].component;
    grp.ruling = vars[i].ruling;
    grp.chosen = o.v;
    grp.s = o.s;
    grp.s2 = o.s2;
    grp.ones = o.ones;
    for (int x : o.ones) {
      enc.advice.bits[x] = "1";
      group_of[x] = static_cast<int>(i);
    }
    enc.groups.push_back(std::move(grp));
  }
  enc.advice.kind = AdviceKind::uniform_fixed;
  enc.advice.bound = 1;

  // Separation checks the decoder relies on.
  for (int v = 0; v < n; ++v) {
    int ones = 0;
    for (int u : g.neighbors(v)) ones += enc.advice.bits[u] == "1";
    if (greedy[v] == 1 && ones > 1)
      throw InfeasibleError("color-1 nodes have at most one bit-1 neighbor", "node " + id_str(g, v));
    if (greedy[v] != 1 && enc.advice.bits[v] == "1" && ones < 2)
      throw InfeasibleError("group nodes have two bit-1 neighbors", "node " + id_str(g, v));
  }
  enc.checks.push_back("color-1 nodes have at most one bit-1 neighbor");
  for (std::size_t i = 0; i < enc.groups.size(); ++i)
    for (int x : enc.groups[i].ones) {
      const auto d = comp_bfs(g, enc.component, x, k.read_radius);
      for (int y : enc.groups[i].ones)
        if (d[y] < 0) throw InfeasibleError("group diameter <= read_radius", "group at " + id_str(g, x));
      for (int y = 0; y < n; ++y)
        if (d[y] >= 0 && group_of[y] >= 0 && group_of[y] != static_cast<int>(i))
          throw InfeasibleError("distinct groups farther than read_radius", "groups at " + id_str(g, x) + " and " +
                                                                                 id_str(g, y));
    }
  enc.checks.push_back("group diameter <= read_radius");
  enc.checks.push_back("distinct groups farther than read_radius");
  for (int c = 0; c < count; ++c) {
    if (!enc.large[c]) continue;
    std::vector<int> lit;
    for (std::size_t i = 0; i < mem[c].size(); ++i)
      if (group_of[mem[c][i]] >= 0) lit.push_back(static_cast<int>(i));
    const auto d = multi_bfs(induced_subgraph(g, mem[c]).first, lit);
    for (std::size_t i = 0; i < mem[c].size(); ++i)
      if (d[i] < 0 || d[i] > k.search_radius)
        throw InfeasibleError("every node sees a group within search_radius", "node " + id_str(g, mem[c][i]));
  }
  enc.checks.push_back("every node sees a group within search_radius");

  const auto dec = decode_impl(g, enc.advice, k, true);
  for (int v = 0; v < n; ++v)
    if ((dec[v] == 1) != (greedy[v] == 1))
      throw Error(ErrorKind::encode_failed, "decoded color-1 set differs at node " + id_str(g, v));
  return enc;
}

std::vector<int> three_color_decode_graph(const Graph& g, const Advice& a, const ColoringConstants& k) {
  if (a.size() != g.size()) throw Error(ErrorKind::invalid_params, "advice size does not match the graph");
  return decode_impl(g, a, k, true);
}

int three_color_decoder_radius(const ColoringConstants& k) {
  const long r = std::max(k.small_diameter + 2, k.search_radius + k.read_radius + 1) + 1;
  return static_cast<int>(std::min<long>(r, INT_MAX / 2));
}

Schema three_coloring_schema(const ColoringConstants& k, std::uint64_t seed) {
  Schema s;
  s.name = "three-coloring";
  s.meta.kind = AdviceKind::uniform_fixed;
  s.meta.beta = 1;
  s.encode = [k, seed](const Graph& g, const std::vector<Solution>& given) {
    std::vector<int> proper;
    if (!given.empty())
      for (const auto& o : given[0]) proper.push_back(o.node);
    return three_color_encode(g, proper, k, seed).advice;
  };
  s.decode.radius = three_color_decoder_radius(k);
  s.decode.eval = [k](const View& view) {
    Advice a(view.size());
    for (int i = 0; i < view.size(); ++i) a.bits[i] = view.nodes[i].advice;
    const auto c = decode_impl(view.as_graph(), a, k, view.closed());
    Solution out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i].node = c[i];
    return out;
  };
  return s;
}

}  // namespace lca
