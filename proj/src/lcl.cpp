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

#include "lca/lcl.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace lca {

namespace {

bool assigned(const Output& o, const LclProblem& p) {
  if (p.node_alphabet > 0 && o.node < 0) return false;
  if (p.edge_alphabet > 0)
    for (int e : o.edge)
      if (e < 0) return false;
  return true;
}

}  // namespace

LclProblem coloring_lcl(int k) {
  if (k < 1) throw Error(ErrorKind::invalid_params, "coloring needs k >= 1");
  LclProblem p;
  p.name = std::to_string(k) + "-coloring";
  p.node_alphabet = k;
  p.radius = 1;
  p.check = [k](const Graph& g, const Solution& s, int v, bool partial) {
    const int c = s[v].node;
    if (c < 0) return partial;
    if (c >= k) return false;
    for (int u : g.neighbors(v)) {
      if (s[u].node < 0 && !partial) return false;
      if (s[u].node == c) return false;
    }
    return true;
  };
  return p;
}

LclProblem mis_lcl() {
  LclProblem p;
  p.name = "mis";
  p.node_alphabet = 2;
  p.radius = 1;
  p.search_order = {1, 0};
  p.check = [](const Graph& g, const Solution& s, int v, bool partial) {
    const int c = s[v].node;
    if (c < 0) return partial;
    if (c > 1) return false;
    bool open = false, covered = false;
    for (int u : g.neighbors(v)) {
      if (s[u].node < 0) {
        open = true;
        continue;
      }
      if (s[u].node == 1) {
        if (c == 1) return false;
        covered = true;
      }
    }
    if (open && !partial) return false;
    return c == 1 || covered || open;
  };
  return p;
}

LclProblem sinkless_orientation_lcl() {
  LclProblem p;
  p.name = "sinkless-orientation";
  p.edge_alphabet = 2;
  p.radius = 1;
  p.check = [](const Graph& g, const Solution& s, int v, bool partial) {
    bool open = false, out = false;
    for (int j = 0; j < g.degree(v); ++j) {
      const int a = s[v].edge[j];
      const int u = g.neighbors(v)[j];
      const int b = s[u].edge[g.slot(u, v)];
      if (a < 0 || b < 0) {
        open = true;
        if (a > 1 || b > 1) return false;
        if (a == 1) out = true;
        continue;
      }
      if (a > 1 || b > 1 || a + b != 1) return false;
      out = out || a == 1;
    }
    if (open) return partial;
    return g.degree(v) < 3 || out;
  };
  return p;
}

LclProblem truth_table_lcl(const std::string& name, int node_alphabet,
                           const std::vector<std::pair<int, std::vector<int>>>& accept) {
  if (node_alphabet < 1) throw Error(ErrorKind::invalid_params, "truth table needs a node alphabet");
  std::set<std::pair<int, std::vector<int>>> table;
  for (auto [own, nb] : accept) {
    std::sort(nb.begin(), nb.end());
    table.emplace(own, nb);
  }
  LclProblem p;
  p.name = name;
  p.node_alphabet = node_alphabet;
  p.radius = 1;
  p.check = [table](const Graph& g, const Solution& s, int v, bool partial) {
    if (s[v].node < 0) return partial;
    std::vector<int> nb;
    for (int u : g.neighbors(v)) {
      if (s[u].node < 0) return partial;
      nb.push_back(s[u].node);
    }
    std::sort(nb.begin(), nb.end());
    return table.count({s[v].node, nb}) > 0;
  };
  return p;
}

std::vector<int> lcl_violations(const Graph& g, const LclProblem& p, const Solution& s) {
  if (static_cast<int>(s.size()) != g.size()) throw Error(ErrorKind::malformed, "labeling size differs from graph");
  for (int v = 0; v < g.size(); ++v)
    if (p.edge_alphabet > 0 && static_cast<int>(s[v].edge.size()) != g.degree(v))
      throw Error(ErrorKind::malformed, "edge labels do not match the degree");
  std::vector<int> bad;
  for (int v = 0; v < g.size(); ++v)
    if (!assigned(s[v], p) || !p.check(g, s, v, false)) bad.push_back(v);
  return bad;
}

int label_bits(int alphabet) { return std::max(1, ceil_log2(static_cast<std::uint64_t>(alphabet))); }

namespace {

// Labels of one node in alphabet order: node label most significant, then
// edge slots in adjacency order.
class Domain {
 public:
  Domain(const LclProblem& p, int degree) : p_(p), degree_(degree) {
    if (p.node_alphabet > 0) {
      node_order_ = p.search_order;
      if (node_order_.empty())
        for (int a = 0; a < p.node_alphabet; ++a) node_order_.push_back(a);
    }
    size_ = std::max<long>(1, static_cast<long>(node_order_.size()));
    for (int j = 0; j < degree && p.edge_alphabet > 0; ++j) {
      size_ *= p.edge_alphabet;
      if (size_ > (1L << 24)) throw Error(ErrorKind::invalid_params, "label domain too large for exact search");
    }
  }
  long size() const { return size_; }
  void apply(long d, Output& o) const {
    if (p_.edge_alphabet > 0) {
      for (int j = degree_ - 1; j >= 0; --j) {
        o.edge[j] = static_cast<int>(d % p_.edge_alphabet);
        d /= p_.edge_alphabet;
      }
    }
    if (p_.node_alphabet > 0) o.node = node_order_[d];
  }

 private:
  const LclProblem& p_;
  int degree_;
  std::vector<int> node_order_;
  long size_ = 1;
};

}  // namespace

std::optional<Solution> exact_search(const Graph& g, const LclProblem& p, const Solution& fixed,
                                     const std::vector<int>& free_nodes, long step_cap) {
  Solution lab = fixed;
  lab.resize(g.size());
  std::vector<char> is_free(g.size(), 0);
  for (int v : free_nodes) is_free[v] = 1;
  for (int v = 0; v < g.size(); ++v) {
    if (p.edge_alphabet > 0) lab[v].edge.resize(g.degree(v), -1);
    if (!is_free[v]) continue;
    lab[v].node = p.node_alphabet > 0 ? -1 : 0;
    if (p.edge_alphabet > 0) std::fill(lab[v].edge.begin(), lab[v].edge.end(), -1);
  }
  // BFS order over the free nodes.
  std::vector<int> order;
  std::vector<char> seen(g.size(), 0);
  for (int root : g.by_id()) {
    if (!is_free[root] || seen[root]) continue;
    std::deque<int> q{root};
    seen[root] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      order.push_back(v);
      for (int u : g.neighbors(v))
        if (is_free[u] && !seen[u]) {
          seen[u] = 1;
          q.push_back(u);
        }
    }
  }
  // Checkers touching each free node, and open labels per checker.
  std::vector<std::vector<int>> touch(g.size());
  std::vector<int> open(g.size(), 0);
  for (int v : order)
    for (const auto& b : ball(g, v, p.radius)) {
      touch[v].push_back(b.node);
      ++open[b.node];
    }
  std::vector<Domain> dom;
  dom.reserve(order.size());
  for (int v : order) dom.emplace_back(p, g.degree(v));
  const int m = static_cast<int>(order.size());
  std::vector<long> choice(m, -1);
  long steps = 0;
  int i = 0;
  while (i >= 0 && i < m) {
    const int v = order[i];
    if (choice[i] >= 0)
      for (int w : touch[v]) ++open[w];
    bool placed = false;
    while (++choice[i] < dom[i].size()) {
      if (++steps > step_cap)
        throw Error(ErrorKind::search_exhausted, "exact search exceeded " + std::to_string(step_cap) + " steps");
      dom[i].apply(choice[i], lab[v]);
      for (int w : touch[v]) --open[w];
      bool ok = true;
      for (int w : touch[v])
        if (!p.check(g, lab, w, open[w] > 0)) {
          ok = false;
          break;
        }
      if (ok) {
        placed = true;
        break;
      }
      for (int w : touch[v]) ++open[w];
    }
    if (placed) {
      ++i;
    } else {
      choice[i] = -1;
      lab[v].node = p.node_alphabet > 0 ? -1 : 0;
      if (p.edge_alphabet > 0) std::fill(lab[v].edge.begin(), lab[v].edge.end(), -1);
      --i;
    }
  }
  if (i < 0) return std::nullopt;
  return lab;
}

std::optional<Solution> solve_lcl(const Graph& g, const LclProblem& p, long step_cap) {
  std::vector<int> all(g.size());
  for (int v = 0; v < g.size(); ++v) all[v] = v;
  return exact_search(g, p, Solution(g.size()), all, step_cap);
}

LclConstants make_lcl_constants(int r, int delta, int x0) {
  if (r < 1 || delta < 1 || x0 < 1) throw Error(ErrorKind::invalid_params, "r, delta and x0 must be positive");
  LclConstants k;
  k.r = r;
  k.delta = delta;
  k.c = std::log2(1.0 + std::pow(static_cast<double>(delta), -r)) / (3.0 * r);
  k.x0 = x0;
  k.x = std::max(4 * r, x0);
  k.palette_bound = std::pow(2.0, std::min(1000.0, 5.0 * k.c * k.x));
  return k;
}

int family_x0(const std::function<double(int)>& ball_size, double c, int max_x) {
  int last_bad = 0;
  for (int x = 1; x <= max_x; ++x) {
    const double lhs = std::log2(ball_size(x)), rhs = c * x;
    if (lhs > rhs) last_bad = x;
    // Past the crossing with a wide margin the exponential stays ahead of
    // the polynomial-type ball sizes used here.
    if (rhs - lhs > 64 && x > 2 * last_bad + 16) break;
  }
  return last_bad + 1;
}

std::vector<int> residual_bfs(const Graph& g, const std::vector<char>& alive, int src, int limit) {
  std::vector<int> d(g.size(), -1);
  if (!alive.empty() && !alive[src]) return d;
  std::deque<int> q{src};
  d[src] = 0;
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    if (limit >= 0 && d[v] >= limit) continue;
    for (int u : g.neighbors(v))
      if (d[u] < 0 && (alive.empty() || alive[u])) {
        d[u] = d[v] + 1;
        q.push_back(u);
      }
  }
  return d;
}

namespace {

// Nodes by residual distance from src, up to limit.
std::vector<std::vector<int>> levels(const Graph& g, const std::vector<char>& alive, int src, int limit) {
  const auto d = residual_bfs(g, alive, src, limit);
  std::vector<std::vector<int>> lv(limit + 1);
  for (int v : g.by_id())
    if (d[v] >= 0) lv[d[v]].push_back(v);
  return lv;
}

double delta_pow_r(const LclConstants& k) { return std::pow(static_cast<double>(k.delta), k.r); }

}  // namespace

int find_alpha(const Graph& g, const std::vector<char>& alive, int v, const LclConstants& k) {
  const auto lv = levels(g, alive, v, 2 * k.x + k.r);
  const double f = delta_pow_r(k);
  long inside = 0;
  for (int a = 0; a <= 2 * k.x; ++a) {
    inside += static_cast<long>(lv[a].size());
    if (a < k.x) continue;
    if (static_cast<double>(inside) >= f * static_cast<double>(lv[a + k.r].size())) return a;
  }
  throw InfeasibleError("|N<=alpha(v)| >= delta^r |N=alpha+r(v)| for some alpha in [x, 2x]",
                        "node " + std::to_string(g.id(v)));
}

ClusterLayout build_clustering(const Graph& g, const LclConstants& k) {
  if (k.x < 4 * k.r) throw InfeasibleError("x >= 4r", "x=" + std::to_string(k.x));
  ClusterLayout L;
  L.distance_color = greedy_distance_coloring(g, 5 * k.x);
  L.cluster_of.assign(g.size(), -1);
  int max_color = 0;
  for (int c : L.distance_color) max_color = std::max(max_color, c);
  if (max_color > k.palette_bound)
    throw Error(ErrorKind::palette_exceeded,
                "distance-5x coloring uses " + std::to_string(max_color) + " colors, above the bound 2^(5cx)");
  std::vector<std::vector<int>> by_color(max_color + 1);
  for (int v : g.by_id()) by_color[L.distance_color[v]].push_back(v);
  std::vector<char> alive(g.size(), 1);
  for (int i = 1; i <= max_color; ++i) {
    std::vector<Cluster> phase;
    for (int v : by_color[i]) {
      if (!alive[v]) continue;
      const auto d = residual_bfs(g, alive, v, 2 * k.x);
      if (std::find(d.begin(), d.end(), 2 * k.x) == d.end()) continue;
      Cluster c;
      c.center = v;
      c.color = i;
      c.alpha = find_alpha(g, alive, v, k);
      const auto dm = residual_bfs(g, alive, v, c.alpha + k.r);
      for (int u : g.by_id()) {
        if (dm[u] < 0) continue;
        c.members.push_back(u);
        if (dm[u] == c.alpha + k.r) c.border.push_back(u);
      }
      phase.push_back(std::move(c));
    }
    for (auto& c : phase) {
      for (int u : c.members) {
        if (L.cluster_of[u] >= 0) throw Error(ErrorKind::encode_failed, "clusters of one color overlap");
        L.cluster_of[u] = static_cast<int>(L.clusters.size());
      }
      L.clusters.push_back(std::move(c));
    }
    for (const auto& c : L.clusters)
      if (c.color == i)
        for (int u : c.members) alive[u] = 0;
  }
  return L;
}

std::string encode_cluster_color(int i, int y) {
  if (i < 1) throw Error(ErrorKind::invalid_params, "cluster colors start at 1");
  std::string digits;
  for (int v = i; v > 0; v /= 2) digits.insert(digits.begin(), static_cast<char>('0' + v % 2));
  std::string s = "11110110";
  for (char d : digits) s += d == '0' ? "110" : "1110";
  s += '0';
  if (static_cast<int>(s.size()) > y)
    throw InfeasibleError("|B''| <= y", "color " + std::to_string(i) + " needs " + std::to_string(s.size()) +
                                            " path nodes, y=" + std::to_string(y));
  return s;
}

std::optional<int> decode_cluster_color(const std::string& bits) {
  if (bits.compare(0, 8, "11110110") != 0 || bits.size() < 9) return std::nullopt;
  std::size_t pos = 8;
  std::uint64_t value = 0;
  int digits = 0;
  while (pos < bits.size() && bits[pos] == '1') {
    if (bits.compare(pos, 3, "110") == 0) {
      value = value * 2;
      pos += 3;
    } else if (bits.compare(pos, 4, "1110") == 0) {
      value = value * 2 + 1;
      pos += 4;
    } else {
      return std::nullopt;
    }
    if (++digits > 30) return std::nullopt;
  }
  if (pos >= bits.size()) return std::nullopt;
  for (; pos < bits.size(); ++pos)
    if (bits[pos] != '0') return std::nullopt;
  if (digits == 0 || value == 0) return std::nullopt;
  return static_cast<int>(value);
}

namespace {

// Residual graph of the phase of color i: nodes not taken by a cluster of a
// smaller color.
std::vector<char> phase_alive(const ClusterLayout& L, int color) {
  std::vector<char> alive(L.cluster_of.size(), 1);
  for (std::size_t v = 0; v < alive.size(); ++v)
    if (L.cluster_of[v] >= 0 && L.clusters[L.cluster_of[v]].color < color) alive[v] = 0;
  return alive;
}

// v_1..v_y: smallest-ID node at residual distance y-1, reached through
// smallest-ID predecessors.
std::vector<int> color_path(const Graph& g, const std::vector<char>& alive, int center, int y) {
  const auto d = residual_bfs(g, alive, center, y - 1);
  int target = -1;
  for (int v : g.by_id())
    if (d[v] == y - 1) {
      target = v;
      break;
    }
  if (target < 0) throw Error(ErrorKind::encode_failed, "no node at distance y-1 from a cluster center");
  std::vector<int> path{target};
  for (int v = target; d[v] > 0;) {
    int best = -1;
    for (int u : g.neighbors(v))
      if (d[u] == d[v] - 1 && (best < 0 || g.id(u) < g.id(best))) best = u;
    v = best;
    path.push_back(v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Labels carried by a cluster's payload: residual nodes within rbar of its
// sphere, and members within rbar (in g) of a non-member.
std::vector<int> fixed_nodes(const Graph& g, const std::vector<char>& alive, const Cluster& c,
                             const std::vector<int>& cluster_of, int self, int rbar) {
  std::vector<char> mark(g.size(), 0);
  std::vector<int> dist(g.size(), -1);
  std::deque<int> q;
  for (int b : c.border) {
    dist[b] = 0;
    q.push_back(b);
  }
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    mark[v] = 1;
    if (dist[v] >= rbar) continue;
    for (int u : g.neighbors(v))
      if (alive[u] && dist[u] < 0) {
        dist[u] = dist[v] + 1;
        q.push_back(u);
      }
  }
  for (int u : c.members) {
    if (mark[u]) continue;
    for (const auto& b : ball(g, u, rbar))
      if (cluster_of[b.node] != self) {
        mark[u] = 1;
        break;
      }
  }
  std::vector<int> out;
  for (int v : g.by_id())
    if (mark[v]) out.push_back(v);
  return out;
}

// Z': greedy independent set (ascending ID) of N<=alpha minus the clustering
// 1s there and their neighbors.
std::vector<int> payload_nodes(const Graph& g, const std::vector<char>& alive, const Cluster& c,
                               const std::vector<char>& cluster_one) {
  const auto d = residual_bfs(g, alive, c.center, c.alpha);
  std::vector<char> blocked(g.size(), 0);
  for (int v = 0; v < g.size(); ++v)
    if (d[v] >= 0 && cluster_one[v]) {
      blocked[v] = 1;
      for (int u : g.neighbors(v)) blocked[u] = 1;
    }
  std::vector<int> z;
  std::vector<char> taken(g.size(), 0);
  for (int v : g.by_id()) {
    if (d[v] < 0 || blocked[v]) continue;
    bool free = true;
    for (int u : g.neighbors(v)) free = free && !taken[u];
    if (!free) continue;
    taken[v] = 1;
    z.push_back(v);
  }
  return z;
}

int node_label_bits(const Graph& g, const LclProblem& p, int v) {
  int b = 0;
  if (p.node_alphabet > 0) b += label_bits(p.node_alphabet);
  if (p.edge_alphabet > 0) b += g.degree(v) * label_bits(p.edge_alphabet);
  return b;
}

std::string labels_to_bits(const Graph& g, const LclProblem& p, const std::vector<int>& nodes, const Solution& s) {
  std::string out;
  for (int v : nodes) {
    if (p.node_alphabet > 0) out += to_binary(static_cast<std::uint64_t>(s[v].node), label_bits(p.node_alphabet));
    if (p.edge_alphabet > 0)
      for (int e : s[v].edge) out += to_binary(static_cast<std::uint64_t>(e), label_bits(p.edge_alphabet));
  }
  (void)g;
  return out;
}

int bfs_levels_have(const std::vector<int>& d, int level) {
  return static_cast<int>(std::count(d.begin(), d.end(), level));
}

}  // namespace

LclEncoding lcl_encode(const Graph& g, const LclProblem& p, const LclConstants& k, const Solution* solution) {
  if (g.max_degree() > k.delta)
    throw InfeasibleError("max degree <= delta", std::to_string(g.max_degree()) + " > " + std::to_string(k.delta));
  const auto growth = check_growth(g, {k.c, k.x0});
  if (!growth.ok)
    throw InfeasibleError("|N<=x(v)| <= 2^(cx) for x >= x0",
                          "node " + std::to_string(g.id(growth.node)) + " x=" + std::to_string(growth.x));
  LclEncoding enc;
  if (solution) {
    enc.solution = *solution;
    if (!lcl_violations(g, p, enc.solution).empty())
      throw Error(ErrorKind::invalid_params, "supplied solution is not valid");
  } else {
    auto s = solve_lcl(g, p, k.search_cap);
    if (!s) throw Error(ErrorKind::encode_failed, "the problem has no solution on this graph");
    enc.solution = std::move(*s);
  }
  enc.layout = build_clustering(g, k);
  auto& L = enc.layout;
  const int y = k.y();
  enc.advice = Advice(g.size());
  std::vector<char> one(g.size(), 0);
  for (auto& c : L.clusters) {
    const auto alive = phase_alive(L, c.color);
    c.path = color_path(g, alive, c.center, y);
    const auto code = encode_cluster_color(c.color, y);
    for (int j = 0; j < static_cast<int>(code.size()); ++j)
      if (code[j] == '1') one[c.path[j]] = 1;
  }
  const auto cluster_one = one;
  for (int ci = 0; ci < static_cast<int>(L.clusters.size()); ++ci) {
    auto& c = L.clusters[ci];
    const auto alive = phase_alive(L, c.color);
    c.fixed = fixed_nodes(g, alive, c, L.cluster_of, ci, p.radius);
    c.payload = payload_nodes(g, alive, c, cluster_one);
    const auto bits = labels_to_bits(g, p, c.fixed, enc.solution);
    if (bits.size() > c.payload.size())
      throw InfeasibleError("|B| <= |Z'|", std::to_string(bits.size()) + " payload bits, " +
                                               std::to_string(c.payload.size()) + " holders at center " +
                                               std::to_string(g.id(c.center)));
    for (std::size_t j = 0; j < bits.size(); ++j)
      if (bits[j] == '1') one[c.payload[j]] = 1;
  }
  long ones = 0;
  for (int v = 0; v < g.size(); ++v) {
    enc.advice.bits[v] = one[v] ? "1" : "0";
    ones += one[v];
  }
  enc.advice.infer_kind();
  if (k.sparsity_eps > 0 && g.size() > 0 && static_cast<double>(ones) / g.size() > k.sparsity_eps)
    throw InfeasibleError("1-ratio <= eps", std::to_string(ones) + " ones on " + std::to_string(g.size()) + " nodes");
  return enc;
}

namespace {

// Color decoded at candidate center v in the residual graph, if v passes
// every center test.
std::optional<int> center_color(const Graph& g, const std::vector<char>& alive, const std::vector<char>& cl1, int v,
                                const LclConstants& k) {
  if (!cl1[v]) return std::nullopt;
  const int y = k.y();
  const auto d = residual_bfs(g, alive, v, 2 * k.x);
  if (bfs_levels_have(d, 2 * k.x) == 0) return std::nullopt;
  std::vector<int> one_at(y, -1);
  for (int u = 0; u < g.size(); ++u) {
    if (d[u] < 0 || d[u] > k.x || !cl1[u]) continue;
    if (d[u] >= y) return std::nullopt;
    if (one_at[d[u]] >= 0) return std::nullopt;
    one_at[d[u]] = u;
  }
  // A geodesic v_1..v_y through every 1.
  std::vector<char> reach(g.size(), 0);
  reach[v] = 1;
  std::vector<int> frontier{v};
  for (int lvl = 1; lvl < y; ++lvl) {
    std::vector<int> next;
    for (int w : frontier)
      for (int u : g.neighbors(w))
        if (d[u] == lvl && !reach[u] && (one_at[lvl] < 0 || one_at[lvl] == u)) {
          reach[u] = 1;
          next.push_back(u);
        }
    if (next.empty()) return std::nullopt;
    frontier = std::move(next);
  }
  std::string s(y, '0');
  for (int j = 0; j < y; ++j)
    if (one_at[j] >= 0) s[j] = '1';
  return decode_cluster_color(s);
}

}  // namespace

Solution lcl_decode_graph(const Graph& g, const Advice& a, const LclProblem& p, const LclConstants& k,
                          ClusterLayout* layout_out) {
  const int n = g.size();
  std::vector<char> one(n, 0), cl1(n, 0);
  for (int v = 0; v < n; ++v) {
    if (a.bits[v] != "0" && a.bits[v] != "1") decode_fail("advice is not one bit");
    one[v] = a.bits[v] == "1";
  }
  for (int v = 0; v < n; ++v)
    if (one[v])
      for (int u : g.neighbors(v)) cl1[v] = cl1[v] || one[u];
  ClusterLayout L;
  L.cluster_of.assign(n, -1);
  std::vector<char> alive(n, 1);
  int last = 0;
  while (true) {
    std::map<int, std::vector<int>> found;
    for (int v : g.by_id()) {
      if (!alive[v] || !cl1[v]) continue;
      const auto c = center_color(g, alive, cl1, v, k);
      if (c && *c > last) found[*c].push_back(v);
    }
    if (found.empty()) break;
    const auto& [color, centers] = *found.begin();
    std::vector<Cluster> phase;
    for (int v : centers) {
      Cluster c;
      c.center = v;
      c.color = color;
      try {
        c.alpha = find_alpha(g, alive, v, k);
      } catch (const Error& e) {
        decode_fail(std::string("cluster radius: ") + e.what());
      }
      const auto dm = residual_bfs(g, alive, v, c.alpha + k.r);
      for (int u : g.by_id()) {
        if (dm[u] < 0) continue;
        c.members.push_back(u);
        if (dm[u] == c.alpha + k.r) c.border.push_back(u);
      }
      phase.push_back(std::move(c));
    }
    for (auto& c : phase) {
      for (int u : c.members) {
        if (L.cluster_of[u] >= 0) decode_fail("decoded clusters overlap");
        L.cluster_of[u] = static_cast<int>(L.clusters.size());
      }
      L.clusters.push_back(std::move(c));
    }
    for (int u = 0; u < n; ++u)
      if (L.cluster_of[u] >= 0) alive[u] = 0;
    last = color;
  }
  // Border labels from the payloads.
  Solution lab(n);
  for (int v = 0; v < n; ++v) {
    lab[v].node = p.node_alphabet > 0 ? -1 : 0;
    if (p.edge_alphabet > 0) lab[v].edge.assign(g.degree(v), -1);
  }
  std::vector<char> fixed(n, 0);
  for (int ci = 0; ci < static_cast<int>(L.clusters.size()); ++ci) {
    auto& c = L.clusters[ci];
    const auto al = phase_alive(L, c.color);
    c.path = color_path(g, al, c.center, k.y());
    c.fixed = fixed_nodes(g, al, c, L.cluster_of, ci, p.radius);
    c.payload = payload_nodes(g, al, c, cl1);
    std::size_t need = 0;
    for (int v : c.fixed) need += static_cast<std::size_t>(node_label_bits(g, p, v));
    if (need > c.payload.size()) decode_fail("payload does not fit the holders");
    std::size_t pos = 0;
    auto take = [&](int alphabet) {
      const int w = label_bits(alphabet);
      std::uint64_t x = 0;
      for (int t = 0; t < w; ++t) x = x * 2 + (one[c.payload[pos++]] ? 1 : 0);
      if (x >= static_cast<std::uint64_t>(alphabet)) decode_fail("payload label outside the alphabet");
      return static_cast<int>(x);
    };
    for (int v : c.fixed) {
      Output o;
      o.node = p.node_alphabet > 0 ? take(p.node_alphabet) : 0;
      if (p.edge_alphabet > 0)
        for (int j = 0; j < g.degree(v); ++j) o.edge.push_back(take(p.edge_alphabet));
      if (fixed[v] && !(lab[v] == o)) decode_fail("clusters disagree on a border label");
      lab[v] = o;
      fixed[v] = 1;
    }
  }
  // Completion of every cluster and every leftover component.
  auto complete = [&](const std::vector<int>& region) {
    std::vector<int> free;
    for (int v : region)
      if (!fixed[v]) free.push_back(v);
    if (free.empty()) return;
    std::optional<Solution> s;
    try {
      s = exact_search(g, p, lab, free, k.search_cap);
    } catch (const Error& e) {
      decode_fail(std::string("completion: ") + e.what());
    }
    if (!s) decode_fail("no completion consistent with the border labels");
    for (int v : free) lab[v] = (*s)[v];
  };
  for (const auto& c : L.clusters) complete(c.members);
  std::vector<char> seen(n, 0);
  for (int root : g.by_id()) {
    if (L.cluster_of[root] >= 0 || seen[root]) continue;
    std::vector<int> comp;
    std::deque<int> q{root};
    seen[root] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      comp.push_back(v);
      for (int u : g.neighbors(v))
        if (L.cluster_of[u] < 0 && !seen[u]) {
          seen[u] = 1;
          q.push_back(u);
        }
    }
    complete(comp);
  }
  if (layout_out) *layout_out = std::move(L);
  return lab;
}

int lcl_decoder_radius(const LclProblem& p, const LclConstants& k) {
  const double phase = 4.0 * k.x + 2.0 * k.r + 1.0;
  const double tail = 2.0 * (2.0 * k.x + k.r + 2.0 * p.radius) + 2.0 * k.x;
  const double r = k.palette_bound * phase + tail;
  const double cap = static_cast<double>(1 << 30);
  return r >= cap ? (1 << 30) : static_cast<int>(std::ceil(r));
}

Schema lcl_schema(const LclProblem& p, const LclConstants& k) {
  Schema s;
  s.name = "lcl-subexp(" + p.name + ")";
  s.meta.kind = AdviceKind::uniform_fixed;
  s.meta.beta = 1;
  s.encode = [p, k](const Graph& g, const std::vector<Solution>& given) {
    return lcl_encode(g, p, k, given.empty() ? nullptr : &given[0]).advice;
  };
  s.decode.radius = lcl_decoder_radius(p, k);
  s.decode.eval = [p, k](const View& view) {
    const Graph h = view.as_graph();
    Advice a(view.size());
    for (int i = 0; i < view.size(); ++i) a.bits[i] = view.nodes[i].advice;
    return lcl_decode_graph(h, a, p, k);
  };
  return s;
}

}  // namespace lca
