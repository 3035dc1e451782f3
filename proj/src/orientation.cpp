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

#include "lca/orientation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <unordered_map>

namespace lca {

namespace {

int partner(int degree, int j) { return (j ^ 1) < degree ? (j ^ 1) : -1; }

// Index of the canonical start of a cycle given by IDs, and the step
// direction (+1 or -1) that follows the canonical orientation.
std::pair<int, int> cycle_start(const std::vector<NodeId>& ids) {
  const int len = static_cast<int>(ids.size());
  const NodeId top = *std::max_element(ids.begin(), ids.end());
  NodeId best = -1;
  std::pair<int, int> res{0, 1};
  for (int i = 0; i < len; ++i) {
    if (ids[i] != top) continue;
    const NodeId next = ids[(i + 1) % len], prev = ids[(i + len - 1) % len];
    if (next > best) {
      best = next;
      res = {i, 1};
    }
    if (prev > best) {
      best = prev;
      res = {i, -1};
    }
  }
  return res;
}

// Follows the chain from v along slot j until it ends or returns to (v, j).
std::vector<int> walk(const Graph& g, int v, int j, bool& cycle) {
  std::vector<int> seq{v};
  cycle = false;
  int cur = v, cj = j;
  while (true) {
    const int u = g.neighbors(cur)[cj];
    const int nj = partner(g.degree(u), g.slot(u, cur));
    if (u == v && nj == j) {
      cycle = true;
      break;
    }
    seq.push_back(u);
    if (nj < 0) break;
    cur = u;
    cj = nj;
  }
  return seq;
}

}  // namespace

CycleDecomposition cycle_decompose(const Graph& g) {
  CycleDecomposition dec;
  dec.chain_of.resize(g.size());
  dec.edge_pos.resize(g.size());
  for (int v = 0; v < g.size(); ++v) {
    dec.chain_of[v].assign(g.degree(v), -1);
    dec.edge_pos[v].assign(g.degree(v), -1);
  }
  for (int v : g.by_id()) {
    for (int j = 0; j < g.degree(v); ++j) {
      if (dec.chain_of[v][j] >= 0) continue;
      Chain ch;
      auto fw = walk(g, v, j, ch.cycle);
      if (ch.cycle) {
        std::vector<NodeId> ids;
        for (int x : fw) ids.push_back(g.id(x));
        auto [s, dir] = cycle_start(ids);
        const int len = static_cast<int>(fw.size());
        for (int i = 0; i < len; ++i) ch.nodes.push_back(fw[((s + dir * i) % len + len) % len]);
      } else {
        std::vector<int> bw{v};
        const int pj = partner(g.degree(v), j);
        bool unused = false;
        if (pj >= 0) bw = walk(g, v, pj, unused);
        ch.nodes.assign(bw.rbegin(), bw.rend());
        ch.nodes.insert(ch.nodes.end(), fw.begin() + 1, fw.end());
        if (g.id(ch.nodes.front()) > g.id(ch.nodes.back())) std::reverse(ch.nodes.begin(), ch.nodes.end());
      }
      const int c = static_cast<int>(dec.chains.size());
      const int len = static_cast<int>(ch.nodes.size());
      for (int k = 0; k < ch.edges(); ++k) {
        const int a = ch.nodes[k], b = ch.nodes[(k + 1) % len];
        dec.chain_of[a][g.slot(a, b)] = dec.chain_of[b][g.slot(b, a)] = c;
        dec.edge_pos[a][g.slot(a, b)] = dec.edge_pos[b][g.slot(b, a)] = k;
      }
      dec.chains.push_back(std::move(ch));
    }
  }
  return dec;
}

std::vector<std::pair<NodeId, NodeId>> orient_short_cycle(const std::vector<NodeId>& cycle) {
  if (cycle.size() < 3) throw Error(ErrorKind::invalid_params, "cycle needs at least 3 nodes");
  auto [s, dir] = cycle_start(cycle);
  const int len = static_cast<int>(cycle.size());
  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (int i = 0; i < len; ++i) {
    const int a = ((s + dir * i) % len + len) % len;
    const int b = ((s + dir * (i + 1)) % len + len) % len;
    arcs.emplace_back(cycle[a], cycle[b]);
  }
  return arcs;
}

Solution canonical_orientation(const Graph& g, const CycleDecomposition& dec) {
  Solution out(g.size());
  for (int v = 0; v < g.size(); ++v) out[v].edge.assign(g.degree(v), 0);
  for (const auto& ch : dec.chains) {
    const int len = static_cast<int>(ch.nodes.size());
    for (int k = 0; k < ch.edges(); ++k) {
      const int a = ch.nodes[k], b = ch.nodes[(k + 1) % len];
      out[a].edge[g.slot(a, b)] = 1;
    }
  }
  return out;
}

std::vector<std::pair<int, int>> orientation_arcs(const Graph& g, const Solution& s) {
  if (static_cast<int>(s.size()) != g.size()) throw Error(ErrorKind::malformed, "orientation has the wrong size");
  for (int v = 0; v < g.size(); ++v)
    if (static_cast<int>(s[v].edge.size()) != g.degree(v))
      throw Error(ErrorKind::malformed, "orientation of node " + std::to_string(g.id(v)) + " has the wrong arity");
  std::vector<std::pair<int, int>> arcs;
  for (auto [u, v] : g.edges()) {
    const int a = s[u].edge[g.slot(u, v)], b = s[v].edge[g.slot(v, u)];
    if (a + b != 1 || a < 0 || b < 0)
      throw Error(ErrorKind::malformed,
                  "edge " + std::to_string(g.id(u)) + "-" + std::to_string(g.id(v)) + " is not oriented exactly once");
    arcs.emplace_back(a ? u : v, a ? v : u);
  }
  return arcs;
}

std::vector<int> balance_violations(const Graph& g, const Solution& s) {
  std::vector<int> bad;
  std::vector<int> out(g.size(), 0);
  for (auto [t, h] : orientation_arcs(g, s)) ++out[t];
  for (int v = 0; v < g.size(); ++v) {
    const int diff = std::abs(2 * out[v] - g.degree(v));
    if (diff > 1) bad.push_back(v);
  }
  return bad;
}

long orientation_r(const OrientationParams& p, int max_degree) {
  if (p.r > 0) return p.r;
  const long base = std::max(2, max_degree);
  long r = 1;
  for (int i = 0; i < p.params.alpha / 2 && r <= p.r_cap; ++i) r *= base;
  return std::min(r, p.r_cap);
}

namespace {

// Membership tests for balls of radius rad, cached per source.
class NearOracle {
 public:
  NearOracle(const Graph& g, int rad) : g_(g), rad_(rad) {}
  bool near(int x, int y) {
    if (x == y) return true;
    if (rad_ <= 0) return false;
    auto it = cache_.find(x);
    if (it == cache_.end()) {
      std::vector<int> members;
      for (const auto& b : ball(g_, x, rad_)) members.push_back(b.node);
      std::sort(members.begin(), members.end());
      it = cache_.emplace(x, std::move(members)).first;
    }
    return std::binary_search(it->second.begin(), it->second.end(), y);
  }

 private:
  const Graph& g_;
  int rad_;
  std::unordered_map<int, std::vector<int>> cache_;
};

struct ShiftVar {
  int chain = 0;
  std::vector<int> positions;  // candidate positions after the shift
};

std::vector<int> seeds_for(const Chain& ch, long rb) {
  std::vector<int> seeds;
  const long len = ch.cycle ? static_cast<long>(ch.nodes.size()) : ch.edges();
  if (ch.cycle) {
    seeds.push_back(0);
    long s = 2 * rb + 1;
    while (s < len - 2 * rb) {
      const long q = std::min(s + 2 * rb, len - 2 * rb - 1);
      seeds.push_back(static_cast<int>(q));
      s = q + 2 * rb + 1;
    }
  } else {
    long s = 0;
    while (s <= len) {
      const long q = std::min(s + 2 * rb, len);
      seeds.push_back(static_cast<int>(q));
      s = q + 2 * rb + 1;
    }
  }
  return seeds;
}

ShiftVar make_var(int c, const Chain& ch, int seed, long rb) {
  ShiftVar v;
  v.chain = c;
  const long len = static_cast<long>(ch.nodes.size());
  for (long s = 1; s <= rb; ++s) {
    if (ch.cycle)
      v.positions.push_back(static_cast<int>((seed + s) % len));
    else if (seed + s < len)
      v.positions.push_back(static_cast<int>(seed + s));
  }
  if (v.positions.empty()) v.positions.push_back(seed);
  return v;
}

struct Search {
  const Graph& g;
  const CycleDecomposition& dec;
  std::vector<ShiftVar> vars;
  NearOracle& oracle;

  int image(int i, int value) const { return dec.chains[vars[i].chain].nodes[vars[i].positions[value]]; }

  // First conflicting pair under the assignment, or {-1,-1}.
  std::pair<int, int> first_conflict(const std::vector<int>& val) {
    for (int i = 0; i < static_cast<int>(vars.size()); ++i)
      for (int j = i + 1; j < static_cast<int>(vars.size()); ++j)
        if (oracle.near(image(i, val[i]), image(j, val[j]))) return {i, j};
    return {-1, -1};
  }
};

bool random_search(Search& s, std::mt19937_64& rng, int budget, std::vector<int>& val, int& attempts,
                   std::pair<int, int>& conflict) {
  auto draw = [&](int i) {
    std::uniform_int_distribution<int> d(0, static_cast<int>(s.vars[i].positions.size()) - 1);
    val[i] = d(rng);
  };
  val.assign(s.vars.size(), 0);
  for (int i = 0; i < static_cast<int>(s.vars.size()); ++i) draw(i);
  attempts = 0;
  while (true) {
    auto c = s.first_conflict(val);
    if (c.first < 0) return true;
    conflict = c;
    if (attempts >= budget) return false;
    ++attempts;
    draw(c.first);
    draw(c.second);
  }
}

// Backtracking over distinct images with forward checking, branching on the
// variable with the fewest remaining values. Sets exhausted when the step
// budget runs out before the search space is covered.
bool exhaustive_search(Search& s, long step_budget, std::vector<int>& val, bool& exhausted) {
  const int m = static_cast<int>(s.vars.size());
  std::vector<std::vector<int>> dom(m);
  for (int i = 0; i < m; ++i) {
    std::vector<int> seen;
    for (int k = 0; k < static_cast<int>(s.vars[i].positions.size()); ++k) {
      const int x = s.image(i, k);
      if (std::find(seen.begin(), seen.end(), x) != seen.end()) continue;
      seen.push_back(x);
      dom[i].push_back(k);
    }
  }
  val.assign(m, -1);
  long steps = 0;
  exhausted = false;
  std::function<bool(std::vector<std::vector<int>>&)> go = [&](std::vector<std::vector<int>>& d) {
    int pick = -1;
    for (int i = 0; i < m; ++i)
      if (val[i] < 0 && (pick < 0 || d[i].size() < d[pick].size())) pick = i;
    if (pick < 0) return true;
    for (int k : d[pick]) {
      if (++steps > step_budget) {
        exhausted = true;
        return false;
      }
      const int x = s.image(pick, k);
      auto next = d;
      bool dead = false;
      for (int j = 0; j < m && !dead; ++j) {
        if (val[j] >= 0 || j == pick) continue;
        auto& dj = next[j];
        dj.erase(std::remove_if(dj.begin(), dj.end(), [&](int q) { return s.oracle.near(x, s.image(j, q)); }),
                 dj.end());
        dead = dj.empty();
      }
      if (dead) continue;
      val[pick] = k;
      if (go(next)) return true;
      val[pick] = -1;
      if (exhausted) return false;
    }
    return false;
  };
  return go(dom);
}

}  // namespace

ShiftOutcome select_s2(const Graph& g, const CycleDecomposition& dec, const OrientationParams& p, long r) {
  ShiftOutcome res;
  res.ok = true;
  const long rb = r / 3;
  const auto comp = components(g);
  int ncomp = 0;
  for (int c : comp) ncomp = std::max(ncomp, c + 1);
  std::vector<std::vector<int>> long_by_comp(ncomp);
  for (int c = 0; c < static_cast<int>(dec.chains.size()); ++c)
    if (dec.chains[c].edges() > r) long_by_comp[comp[dec.chains[c].nodes[0]]].push_back(c);
  NearOracle oracle(g, 3 * p.params.alpha - 1);
  std::vector<int> first_id(ncomp, -1);
  for (int v : g.by_id())
    if (first_id[comp[v]] < 0) first_id[comp[v]] = v;
  for (int k = 0; k < ncomp; ++k) {
    if (long_by_comp[k].empty()) continue;
    if (rb < 1) throw InfeasibleError("r/3 >= 1", "r=" + std::to_string(r) + " with long chains present");
    Search s{g, dec, {}, oracle};
    for (int c : long_by_comp[k])
      for (int seed : seeds_for(dec.chains[c], rb)) s.vars.push_back(make_var(c, dec.chains[c], seed, rb));
    const int m = static_cast<int>(s.vars.size());
    res.variables += m;
    std::mt19937_64 rng(p.seed ^ (static_cast<std::uint64_t>(g.id(first_id[k])) * 0x9E3779B97F4A7C15ULL));
    std::vector<int> val;
    int attempts = 0;
    std::pair<int, int> conflict{-1, -1};
    bool ok = false;
    if (p.mode != ShiftMode::exhaustive) {
      ok = random_search(s, rng, p.retry_budget, val, attempts, conflict);
      res.attempts = std::max(res.attempts, attempts);
    }
    if (!ok && (p.mode == ShiftMode::exhaustive || (p.mode == ShiftMode::automatic && m <= p.exhaustive_limit))) {
      res.used_exhaustive = true;
      bool exhausted = false;
      ok = exhaustive_search(s, p.exhaustive_steps, val, exhausted);
      res.budget_exhausted = res.budget_exhausted || exhausted;
      if (!ok && conflict.first < 0 && m >= 2) conflict = {0, 1};
    }
    if (!ok) {
      res.ok = false;
      if (conflict.first >= 0) {
        std::vector<int> vv = val;
        vv.resize(m, 0);
        for (int& x : vv) x = std::max(x, 0);
        res.conflict = {g.id(s.image(conflict.first, vv[conflict.first])),
                        g.id(s.image(conflict.second, vv[conflict.second]))};
      }
      continue;
    }
    for (int i = 0; i < m; ++i) res.selected.emplace_back(s.vars[i].chain, s.vars[i].positions[val[i]]);
  }
  return res;
}

bool check_s2(const Graph& g, const CycleDecomposition& dec, const std::vector<std::pair<int, int>>& selected,
              long r, int alpha) {
  std::vector<std::vector<int>> on(dec.chains.size());
  for (auto [c, pos] : selected) {
    if (dec.chains[c].edges() <= r) return false;
    on[c].push_back(pos);
  }
  for (int c = 0; c < static_cast<int>(dec.chains.size()); ++c) {
    const auto& ch = dec.chains[c];
    if (ch.edges() <= r) continue;
    if (on[c].empty()) return false;
    auto& s = on[c];
    std::sort(s.begin(), s.end());
    const long len = static_cast<long>(ch.nodes.size());
    for (long x = 0; x < len; ++x) {
      long best = len;
      auto it = std::lower_bound(s.begin(), s.end(), x);
      if (it != s.end()) best = std::min(best, *it - x);
      if (it != s.begin()) best = std::min(best, x - *std::prev(it));
      if (ch.cycle) {
        best = std::min(best, len - x + s.front());
        best = std::min(best, x + len - s.back());
      }
      if (best > r) return false;
    }
  }
  NearOracle oracle(g, 3 * alpha - 1);
  for (std::size_t i = 0; i < selected.size(); ++i)
    for (std::size_t j = i + 1; j < selected.size(); ++j) {
      const int a = dec.chains[selected[i].first].nodes[selected[i].second];
      const int b = dec.chains[selected[j].first].nodes[selected[j].second];
      if (oracle.near(a, b)) return false;
    }
  return true;
}

namespace {

bool valid_orientation_string(const std::string& s) { return s.empty() || s == "1" || s == "10" || s == "11"; }

// Direction of a traced chain relative to the listed order: true when every
// edge goes from nodes[k] to nodes[k+1]. complete: the whole chain is
// listed (a cycle or a path with both endpoints).
bool chain_forward(const View& view, const std::vector<int>& nodes, bool cycle, bool complete, long r) {
  const int len = static_cast<int>(nodes.size());
  const int edges = cycle ? len : len - 1;
  if (complete && edges <= r) {
    if (!cycle) return view.nodes[nodes.front()].id < view.nodes[nodes.back()].id;
    std::vector<NodeId> ids;
    for (int x : nodes) ids.push_back(view.nodes[x].id);
    return cycle_start(ids).second == 1;
  }
  bool found = false, fwd = false;
  std::pair<NodeId, NodeId> best{0, 0};
  for (int k = 0; k < edges; ++k) {
    const int a = nodes[k], b = nodes[(k + 1) % len];
    const auto& la = view.nodes[a].advice;
    const auto& lb = view.nodes[b].advice;
    auto consider = [&](int holder, int other, bool f) {
      std::pair<NodeId, NodeId> key{view.nodes[holder].id, view.nodes[other].id};
      if (!found || key < best) {
        found = true;
        best = key;
        fwd = f;
      }
    };
    if (la.size() == 2 && lb == "1") consider(a, b, la[1] == '1');
    if (lb.size() == 2 && la == "1") consider(b, a, lb[1] == '0');
  }
  if (!found) decode_fail("no advice pair within r on a long chain");
  return fwd;
}

// Traces the chain through the center's slot j inside a view. Returns the
// node sequence and the index of the center in it.
struct Trace {
  std::vector<int> nodes;
  int at = 0;
  bool cycle = false;
  bool complete = false;
};

Trace trace_from_center(const View& view, int j, long r) {
  auto walk_view = [&](int start_slot, bool& cyc, bool& ended) {
    std::vector<int> seq{0};
    cyc = ended = false;
    int cur = 0, cj = start_slot;
    long steps = 0;
    while (true) {
      const int u = view.adj[cur][cj];
      ++steps;
      if (!view.complete(u)) {
        seq.push_back(u);
        break;
      }
      const int nj = partner(view.nodes[u].degree, view.slot(u, cur));
      if (u == 0 && nj == start_slot) {
        cyc = true;
        break;
      }
      seq.push_back(u);
      if (nj < 0) {
        ended = true;
        break;
      }
      if (steps > r + 1) break;
      cur = u;
      cj = nj;
    }
    return seq;
  };
  Trace t;
  bool end_f = false, end_b = false, unused = false;
  auto fw = walk_view(j, t.cycle, end_f);
  if (t.cycle) {
    t.nodes = fw;
    t.at = 0;
    t.complete = true;
    return t;
  }
  std::vector<int> bw{0};
  const int pj = partner(view.nodes[0].degree, j);
  if (pj >= 0)
    bw = walk_view(pj, unused, end_b);
  else
    end_b = true;
  t.nodes.assign(bw.rbegin(), bw.rend());
  t.at = static_cast<int>(bw.size()) - 1;
  t.nodes.insert(t.nodes.end(), fw.begin() + 1, fw.end());
  t.complete = end_f && end_b;
  return t;
}

Solution decode_orientation_view(const View& view, long r) {
  const int n = view.size();
  Solution out(n);
  for (int i = 0; i < n; ++i) {
    out[i].edge.assign(view.adj[i].size(), 0);
    if (!valid_orientation_string(view.nodes[i].advice)) decode_fail("orientation advice must be empty, 1, 10 or 11");
  }
  if (view.closed()) {
    const Graph h = view.as_graph();
    const auto dec = cycle_decompose(h);
    for (const auto& ch : dec.chains) {
      const bool fwd = chain_forward(view, ch.nodes, ch.cycle, true, r);
      const int len = static_cast<int>(ch.nodes.size());
      for (int k = 0; k < ch.edges(); ++k) {
        const int a = ch.nodes[k], b = ch.nodes[(k + 1) % len];
        if (fwd)
          out[a].edge[view.slot(a, b)] = 1;
        else
          out[b].edge[view.slot(b, a)] = 1;
      }
    }
    return out;
  }
  if (!view.complete(0)) decode_fail("orientation decoder needs radius >= 1");
  for (int j = 0; j < static_cast<int>(view.adj[0].size()); ++j) {
    const auto t = trace_from_center(view, j, r);
    const bool fwd = chain_forward(view, t.nodes, t.cycle, t.complete, r);
    // Slot j of the center leads to nodes[at + 1] in the traced order.
    out[0].edge[j] = fwd ? 1 : 0;
  }
  return out;
}

double orientation_threshold(double c, int gamma) {
  const double g3 = std::pow(gamma, 3);
  return std::max(2 * g3 / c, 2 * g3);
}

}  // namespace

Schema orientation_schema(const OrientationParams& p, int max_degree) {
  const long r = orientation_r(p, max_degree);
  Schema s;
  s.name = "orientation";
  s.meta.kind = AdviceKind::variable;
  s.meta.beta = 2;
  s.meta.composable = true;
  s.meta.gamma0 = 2;
  s.meta.params = p.params;
  s.meta.threshold = orientation_threshold;
  s.encode = [p, r](const Graph& g, const std::vector<Solution>&) {
    const double thr = orientation_threshold(p.params.c, p.params.gamma);
    if (p.params.alpha < thr) {
      std::ostringstream d;
      d << "alpha=" << p.params.alpha << " A=" << thr;
      throw InfeasibleError("alpha >= max(2 gamma^3/c, 2 gamma^3)", d.str());
    }
    const auto dec = cycle_decompose(g);
    const auto sel = select_s2(g, dec, p, r);
    if (!sel.ok) {
      std::ostringstream d;
      d << "no valid shift of " << sel.variables << " seeds; images " << sel.conflict.first << " and "
        << sel.conflict.second << " within 3*alpha";
      if (sel.budget_exhausted) d << " (exhaustive step budget reached)";
      throw Error(ErrorKind::search_exhausted, d.str());
    }
    Advice a(g.size());
    for (auto [c, pos] : sel.selected) {
      const auto& ch = dec.chains[c];
      const int len = static_cast<int>(ch.nodes.size());
      const int v = ch.nodes[pos];
      int next = -1, prev = -1;
      if (ch.cycle || pos + 1 < len) next = (pos + 1) % len;
      if (ch.cycle || pos > 0) prev = (pos + len - 1) % len;
      bool use_next = next >= 0;
      if (next >= 0 && prev >= 0) use_next = g.id(ch.nodes[next]) < g.id(ch.nodes[prev]);
      const int u = ch.nodes[use_next ? next : prev];
      if (!a.bits[v].empty() || !a.bits[u].empty()) throw Error(ErrorKind::encode_failed, "advice pairs overlap");
      a.bits[v] = std::string("1") + (use_next ? '1' : '0');
      a.bits[u] = "1";
    }
    a.kind = AdviceKind::variable;
    a.bound = 2;
    return a;
  };
  s.decode.radius = static_cast<int>(std::min<long>(r + 2, 1L << 30));
  s.decode.eval = [r](const View& view) { return decode_orientation_view(view, r); };
  return s;
}

std::vector<int> canonical_two_coloring(const Graph& g) {
  std::vector<int> color(g.size(), -1);
  for (int v : g.by_id()) {
    if (color[v] >= 0) continue;
    color[v] = 0;
    std::vector<int> q{v};
    for (std::size_t h = 0; h < q.size(); ++h)
      for (int u : g.neighbors(q[h])) {
        if (color[u] < 0) {
          color[u] = 1 - color[q[h]];
          q.push_back(u);
        } else if (color[u] == color[q[h]]) {
          throw Error(ErrorKind::invalid_params, "graph is not bipartite");
        }
      }
  }
  return color;
}

namespace {

// Colors from holder bits: parity of the distance to a holder. Closed views
// use a multi-source BFS from all holders (ID order); otherwise the center
// takes its nearest holder, ties to the smaller ID.
std::vector<int> colors_from_holders(const View& view, const std::vector<int>& bit) {
  const int n = view.size();
  std::vector<int> color(n, -1);
  if (view.closed()) {
    const Graph h = view.as_graph();
    std::vector<int> src;
    for (int v : h.by_id())
      if (bit[v] >= 0) src.push_back(v);
    std::vector<int> from(n, -1), dist(n, -1);
    std::vector<int> q;
    for (int v : src) {
      from[v] = v;
      dist[v] = 0;
      q.push_back(v);
    }
    for (std::size_t k = 0; k < q.size(); ++k)
      for (int u : view.adj[q[k]])
        if (dist[u] < 0) {
          dist[u] = dist[q[k]] + 1;
          from[u] = from[q[k]];
          q.push_back(u);
        }
    for (int v = 0; v < n; ++v) {
      if (dist[v] < 0) decode_fail("component without a color holder");
      color[v] = bit[from[v]] ^ (dist[v] & 1);
    }
    return color;
  }
  std::vector<int> dist(n, -1);
  std::vector<int> q{0};
  dist[0] = 0;
  int best = -1;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const int x = q[k];
    if (best >= 0 && dist[x] > dist[best]) break;
    if (bit[x] >= 0 && (best < 0 || view.nodes[x].id < view.nodes[best].id)) best = x;
    for (int u : view.adj[x])
      if (dist[u] < 0) {
        dist[u] = dist[x] + 1;
        q.push_back(u);
      }
  }
  if (best < 0) decode_fail("no color holder in view");
  color[0] = bit[best] ^ (dist[best] & 1);
  return color;
}

// 2alpha+1 spaced holders, extending an existing holder set.
std::vector<int> spaced_holders(const Graph& g, const std::vector<int>& existing, int alpha) {
  std::vector<char> covered(g.size(), 0);
  if (!existing.empty()) {
    auto d = multi_bfs(g, existing, 2 * alpha);
    for (int v = 0; v < g.size(); ++v) covered[v] = d[v] >= 0;
  }
  std::vector<int> out;
  for (int v : g.by_id()) {
    if (covered[v]) continue;
    out.push_back(v);
    for (const auto& b : ball(g, v, 2 * alpha)) covered[b.node] = 1;
  }
  return out;
}

int color_bit(const std::string& s) {
  if (s == "0") return 0;
  if (s == "1") return 1;
  decode_fail("color advice must be a single bit");
}

void require_even_bipartite(const Graph& g) {
  for (int v = 0; v < g.size(); ++v)
    if (g.degree(v) % 2) throw Error(ErrorKind::invalid_params, "splitting needs even degrees");
  canonical_two_coloring(g);
}

// red iff the edge leaves a color-0 node.
int red_of(int out, int my_color, int other_color) { return out ? my_color == 0 : other_color == 0; }

}  // namespace

Schema two_coloring_schema(const ComposableParams& p) {
  Schema s;
  s.name = "two_coloring";
  s.meta.kind = AdviceKind::subset_fixed;
  s.meta.beta = 1;
  s.meta.composable = true;
  s.meta.gamma0 = 1;
  s.meta.params = p;
  s.meta.threshold = [](double c, int gamma) {
    const double g3 = std::pow(gamma, 3);
    return std::max(g3 / c, g3);
  };
  s.encode = [p](const Graph& g, const std::vector<Solution>&) {
    const auto color = canonical_two_coloring(g);
    Advice a(g.size());
    for (int h : spaced_holders(g, {}, p.alpha)) a.bits[h] = color[h] ? "1" : "0";
    a.kind = AdviceKind::subset_fixed;
    a.bound = 1;
    return a;
  };
  s.decode.radius = 2 * p.alpha;
  s.decode.eval = [](const View& view) {
    std::vector<int> bit(view.size(), -1);
    for (int v = 0; v < view.size(); ++v)
      if (!view.nodes[v].advice.empty()) bit[v] = color_bit(view.nodes[v].advice);
    auto color = colors_from_holders(view, bit);
    Solution out(view.size());
    for (int v = 0; v < view.size(); ++v) out[v].node = std::max(color[v], 0);
    return out;
  };
  return s;
}

Schema splitting_combiner() {
  Schema s;
  s.name = "splitting_combiner";
  s.inputs = 2;
  s.meta.kind = AdviceKind::variable;
  s.meta.composable = true;
  s.meta.threshold = [](double, int) { return 0.0; };
  s.encode = [](const Graph& g, const std::vector<Solution>&) { return Advice(g.size()); };
  s.decode.radius = 1;
  s.decode.eval = [](const View& view) {
    Solution out(view.size());
    for (int i = 0; i < view.size(); ++i) {
      out[i].edge.assign(view.adj[i].size(), 0);
      if (!view.must_resolve(i)) continue;
      const auto& o = view.nodes[i].given.at(0);
      const int mine = view.nodes[i].given.at(1).node;
      for (int j = 0; j < static_cast<int>(view.adj[i].size()); ++j)
        out[i].edge[j] = red_of(o.edge.at(j), mine, view.nodes[view.adj[i][j]].given.at(1).node);
    }
    return out;
  };
  return s;
}

Schema splitting_schema(const OrientationParams& p, int max_degree) {
  const Schema orient = orientation_schema(p, max_degree);
  const int alpha = p.params.alpha;
  Schema s;
  s.name = "splitting";
  s.meta.kind = AdviceKind::variable;
  s.meta.beta = 3;
  s.meta.composable = true;
  s.meta.gamma0 = 2;
  s.meta.params = p.params;
  s.meta.threshold = [](double c, int gamma) {
    const double g3 = std::pow(gamma, 3);
    return std::max(3 * g3 / c, 3 * g3);
  };
  s.encode = [orient, alpha](const Graph& g, const std::vector<Solution>&) {
    require_even_bipartite(g);
    const auto color = canonical_two_coloring(g);
    Advice a = orient.encode(g, {});
    std::vector<int> holders;
    for (int v = 0; v < g.size(); ++v)
      if (!a.bits[v].empty()) holders.push_back(v);
    for (int v : holders) a.bits[v] += color[v] ? '1' : '0';
    for (int v : spaced_holders(g, holders, alpha)) a.bits[v] = color[v] ? "1" : "0";
    a.kind = AdviceKind::variable;
    a.bound = a.max_bits();
    return a;
  };
  s.decode.radius = std::max(orient.decode.radius, 2 * alpha) + 1;
  s.decode.eval = [orient, alpha](const View& view) {
    const int n = view.size();
    View ov = view;
    std::vector<int> bit(n, -1);
    for (int v = 0; v < n; ++v) {
      const auto& l = view.nodes[v].advice;
      if (l.size() > 3) decode_fail("splitting advice longer than 3 bits");
      if (!l.empty()) bit[v] = color_bit(l.substr(l.size() - 1));
      ov.nodes[v].advice = l.empty() ? "" : l.substr(0, l.size() - 1);
    }
    const auto orientation = orient.decode.eval(ov);
    Solution out(n);
    for (int i = 0; i < n; ++i) out[i].edge.assign(view.adj[i].size(), 0);
    if (view.closed()) {
      const auto color = colors_from_holders(view, bit);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < static_cast<int>(view.adj[i].size()); ++j)
          out[i].edge[j] = red_of(orientation[i].edge[j], color[i], color[view.adj[i][j]]);
      return out;
    }
    const int mine = colors_from_holders(view, bit)[0];
    for (int j = 0; j < static_cast<int>(view.adj[0].size()); ++j) {
      const int u = view.adj[0][j];
      View around = view.recenter(u, 2 * alpha);
      std::vector<int> ub(around.size(), -1);
      for (int v = 0; v < around.size(); ++v) {
        const auto& l = around.nodes[v].advice;
        if (!l.empty()) ub[v] = color_bit(l.substr(l.size() - 1));
      }
      const int theirs = colors_from_holders(around, ub)[0];
      out[0].edge[j] = red_of(orientation[0].edge[j], mine, theirs);
    }
    return out;
  };
  return s;
}

SplittingParts splitting_parts(const OrientationParams& p, int max_degree) {
  SplittingParts parts;
  parts.schemas = {orientation_schema(p, max_degree), two_coloring_schema(p.params), splitting_combiner()};
  parts.dag.k = 3;
  parts.dag.deps = {{}, {}, {0, 1}};
  return parts;
}

Schema splitting_composed(const OrientationParams& p, int max_degree, const ComposeOptions& opt) {
  auto parts = splitting_parts(p, max_degree);
  Schema s = compose_schemas(parts.schemas, parts.dag, opt, 2);
  auto inner = s.encode;
  s.encode = [inner](const Graph& g, const std::vector<Solution>& given) {
    require_even_bipartite(g);
    return inner(g, given);
  };
  return s;
}

std::vector<int> splitting_violations(const Graph& g, const Solution& s) {
  std::vector<int> bad;
  for (int v = 0; v < g.size(); ++v) {
    bool ok = static_cast<int>(s[v].edge.size()) == g.degree(v);
    int red = 0;
    for (int j = 0; ok && j < g.degree(v); ++j) {
      const int u = g.neighbors(v)[j];
      const int e = s[v].edge[j];
      if (e != 0 && e != 1) ok = false;
      if (static_cast<int>(s[u].edge.size()) != g.degree(u) || s[u].edge[g.slot(u, v)] != e) ok = false;
      red += e;
    }
    if (!ok || 2 * red != g.degree(v)) bad.push_back(v);
  }
  return bad;
}

namespace {

bool power_of_two(int x) { return x >= 1 && (x & (x - 1)) == 0; }

// Splits every color class of the previous level (all edges at level 1).
Schema split_level(const OrientationParams& p, int level, int delta, const ComposeOptions& opt) {
  const int classes = 1 << (level - 1);
  OrientationParams q = p;
  q.r = orientation_r(p, delta);
  const Schema split = splitting_schema(q, delta);
  (void)opt;
  Schema s;
  s.name = "split_level_" + std::to_string(level);
  s.inputs = level == 1 ? 0 : 1;
  s.meta.kind = AdviceKind::variable;
  s.meta.composable = true;
  s.meta.gamma0 = 2 * classes;
  s.meta.params = p.params;
  s.meta.threshold = split.meta.threshold;
  auto class_of = [level](const Output& o, int j) { return level == 1 ? 0 : o.edge.at(j) - 1; };
  s.encode = [split, classes, class_of](const Graph& g, const std::vector<Solution>& given) {
    std::vector<std::vector<FrameEntry>> entries(g.size());
    for (int c = 0; c < classes; ++c) {
      std::vector<std::pair<int, int>> e;
      for (auto [u, v] : g.edges()) {
        const int a = class_of(given.empty() ? Output{} : given[0][u], g.slot(u, v));
        if (a == c) e.emplace_back(u, v);
      }
      Graph sub(g.ids(), e);
      Advice a = split.encode(sub, {});
      for (int v = 0; v < g.size(); ++v)
        if (!a.bits[v].empty()) entries[v].emplace_back(c + 1, a.bits[v]);
    }
    Advice out(g.size());
    for (int v = 0; v < g.size(); ++v) out.bits[v] = frame_encode(entries[v], classes);
    out.kind = AdviceKind::variable;
    out.bound = out.max_bits();
    return out;
  };
  s.decode.radius = split.decode.radius;
  s.decode.eval = [split, classes, class_of](const View& view) {
    const int n = view.size();
    std::vector<std::vector<std::string>> bits(classes, std::vector<std::string>(n));
    for (int v = 0; v < n; ++v)
      for (auto& [c, l] : frame_decode(view.nodes[v].advice, classes)) bits[c - 1][v] = l;
    auto cls = [&](int i, int j) {
      if (view.nodes[i].given.empty()) return 0;
      return class_of(view.nodes[i].given[0], j);
    };
    Solution out(n);
    for (int i = 0; i < n; ++i) out[i].edge.assign(view.adj[i].size(), 0);
    for (int c = 0; c < classes; ++c) {
      View sub = view.filter_edges([&](int i, int j) {
        const int u = view.adj[i][j];
        return cls(i, j) == c && cls(u, view.slot(u, i)) == c;
      });
      for (int v = 0; v < n; ++v) {
        sub.nodes[v].advice = bits[c][v];
        sub.nodes[v].given.clear();
      }
      const auto red = split.decode.eval(sub);
      for (int i = 0; i < n; ++i) {
        if (!view.must_resolve(i)) continue;
        int k = 0;
        for (int j = 0; j < static_cast<int>(view.adj[i].size()); ++j) {
          const int u = view.adj[i][j];
          if (!(cls(i, j) == c && cls(u, view.slot(u, i)) == c)) continue;
          out[i].edge[j] = 2 * c + (red[i].edge[k++] ? 1 : 2);
        }
      }
    }
    return out;
  };
  return s;
}

}  // namespace

Schema edge_coloring_schema(const OrientationParams& p, int delta, const ComposeOptions& opt) {
  if (!power_of_two(delta) || delta < 2) throw Error(ErrorKind::invalid_params, "delta must be a power of two >= 2");
  int levels = 0;
  while ((1 << levels) < delta) ++levels;
  std::vector<Schema> schemas;
  DependencyDag dag;
  dag.k = levels;
  for (int l = 1; l <= levels; ++l) {
    schemas.push_back(split_level(p, l, delta, opt));
    dag.deps.push_back(l == 1 ? std::vector<int>{} : std::vector<int>{l - 2});
  }
  Schema s = compose_schemas(schemas, dag, opt);
  s.name = "edge_coloring";
  auto inner = s.encode;
  s.encode = [inner, delta](const Graph& g, const std::vector<Solution>& given) {
    for (int v = 0; v < g.size(); ++v)
      if (g.degree(v) != delta) throw Error(ErrorKind::invalid_params, "graph is not delta-regular");
    canonical_two_coloring(g);
    return inner(g, given);
  };
  return s;
}

std::string edge_coloring_problem(const Graph& g, const Solution& s, int delta) {
  for (int v = 0; v < g.size(); ++v) {
    if (static_cast<int>(s[v].edge.size()) != g.degree(v)) return "wrong arity at node " + std::to_string(g.id(v));
    std::vector<int> seen(delta + 1, 0);
    for (int j = 0; j < g.degree(v); ++j) {
      const int c = s[v].edge[j];
      const int u = g.neighbors(v)[j];
      if (c < 1 || c > delta) return "color out of range at node " + std::to_string(g.id(v));
      if (s[u].edge.at(g.slot(u, v)) != c) return "endpoints disagree on an edge at node " + std::to_string(g.id(v));
      if (seen[c]++) return "color repeated at node " + std::to_string(g.id(v));
    }
    if (g.degree(v) != delta) return "node " + std::to_string(g.id(v)) + " misses a color class";
  }
  return "";
}

Advice EdgeSubsetCodec::encode(const Graph& g, const EdgeSubset& x) const {
  for (auto [u, v] : x)
    if (u < 0 || v < 0 || u >= g.size() || v >= g.size() || u >= v || !g.adjacent(u, v))
      throw Error(ErrorKind::invalid_params, "subset entries must be edges (smaller index, larger index)");
  Advice a = one_bit.encode(g, {});
  const auto orient = run_local(g, a, one_bit.decode).out;
  for (int v = 0; v < g.size(); ++v)
    for (int j = 0; j < g.degree(v); ++j) {
      if (!orient[v].edge[j]) continue;
      const int u = g.neighbors(v)[j];
      a.bits[v] += x.count({std::min(u, v), std::max(u, v)}) ? '1' : '0';
    }
  a.infer_kind();
  return a;
}

LocalAlgorithm EdgeSubsetCodec::decoder() const {
  const Schema ob = one_bit;
  LocalAlgorithm alg;
  alg.radius = ob.decode.radius + 1;
  alg.eval = [ob](const View& view) {
    const int n = view.size();
    View first = view;
    for (int v = 0; v < n; ++v) {
      if (view.nodes[v].advice.empty()) decode_fail("edge subset advice is empty");
      first.nodes[v].advice = view.nodes[v].advice.substr(0, 1);
    }
    Solution out(n);
    for (int i = 0; i < n; ++i) out[i].edge.assign(view.adj[i].size(), 0);
    // Membership bit of v's edge in slot j, given v's orientation.
    auto member = [&](int v, const Output& o, int j) {
      int rank = 0, outdeg = 0;
      for (int k = 0; k < static_cast<int>(o.edge.size()); ++k) {
        if (k < j && o.edge[k]) ++rank;
        outdeg += o.edge[k];
      }
      const auto& l = view.nodes[v].advice;
      if (static_cast<int>(l.size()) != 1 + outdeg) decode_fail("membership bits do not match the outdegree");
      return l[1 + rank] == '1' ? 1 : 0;
    };
    if (view.closed()) {
      const auto o = ob.decode.eval(first);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < static_cast<int>(view.adj[i].size()); ++j) {
          const int u = view.adj[i][j];
          out[i].edge[j] = o[i].edge[j] ? member(i, o[i], j) : member(u, o[u], view.slot(u, i));
        }
      return out;
    }
    const auto o0 = ob.decode.eval(first.recenter(0, ob.decode.radius))[0];
    for (int j = 0; j < static_cast<int>(view.adj[0].size()); ++j) {
      const int u = view.adj[0][j];
      if (o0.edge[j]) {
        out[0].edge[j] = member(0, o0, j);
        continue;
      }
      View around = first.recenter(u, ob.decode.radius);
      const auto ou = ob.decode.eval(around)[0];
      // around keeps u's full adjacency in the same order.
      out[0].edge[j] = member(u, ou, view.slot(u, 0));
    }
    return out;
  };
  return alg;
}

EdgeSubset EdgeSubsetCodec::decode(const Graph& g, const Advice& a) const {
  const auto out = run_local(g, a, decoder()).out;
  EdgeSubset x;
  for (auto [u, v] : g.edges()) {
    const int p = out[u].edge[g.slot(u, v)], q = out[v].edge[g.slot(v, u)];
    if (p != q) throw Error(ErrorKind::decode_failed, "endpoints disagree on membership");
    if (p) x.insert({std::min(u, v), std::max(u, v)});
  }
  return x;
}

EdgeSubsetCodec edge_subset_codec(const OrientationParams& p, const OneBitOptions& ob, int max_degree) {
  return EdgeSubsetCodec{to_one_bit(orientation_schema(p, max_degree), ob)};
}

}  // namespace lca
