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

#include "lca/schema.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lca {

Roundtrip roundtrip(const Schema& s, const Graph& g, const std::vector<Solution>& given) {
  Roundtrip r;
  r.advice = s.encode(g, given);
  r.run = run_local(g, r.advice, s.decode, given);
  return r;
}

int max_holders_per_ball(const Graph& g, const Advice& a, int alpha) {
  int best = 0;
  std::vector<int> holders;
  for (int v = 0; v < g.size(); ++v)
    if (!a.bits[v].empty()) holders.push_back(v);
  if (holders.empty()) return 0;
  // A ball's holders are all within alpha of its center; scanning centers
  // within alpha of some holder covers every nonempty ball.
  std::vector<char> relevant(g.size(), 0);
  for (int h : holders)
    for (const auto& b : ball(g, h, alpha)) relevant[b.node] = 1;
  for (int v = 0; v < g.size(); ++v) {
    if (!relevant[v]) continue;
    int cnt = 0;
    for (const auto& b : ball(g, v, alpha))
      if (!a.bits[b.node].empty()) ++cnt;
    best = std::max(best, cnt);
  }
  return best;
}

std::vector<int> topological_order(const DependencyDag& dag) {
  if (static_cast<int>(dag.deps.size()) != dag.k) throw Error(ErrorKind::invalid_params, "dag size mismatch");
  std::vector<int> state(dag.k, 0), order;
  // Repeatedly take the smallest index whose dependencies are all placed.
  for (int placed = 0; placed < dag.k; ++placed) {
    int pick = -1;
    for (int i = 0; i < dag.k && pick < 0; ++i) {
      if (state[i]) continue;
      bool ready = true;
      for (int j : dag.deps[i]) {
        if (j < 0 || j >= dag.k || j == i) throw Error(ErrorKind::invalid_params, "bad dag edge");
        if (!state[j]) ready = false;
      }
      if (ready) pick = i;
    }
    if (pick < 0) throw Error(ErrorKind::invalid_params, "dependency dag is cyclic");
    state[pick] = 1;
    order.push_back(pick);
  }
  return order;
}

namespace {

std::vector<Solution> deps_of(const std::vector<Solution>& sols, const std::vector<int>& deps) {
  std::vector<Solution> out;
  for (int j : deps) out.push_back(sols[j]);
  return out;
}

int composed_radius(const std::vector<Schema>& schemas, const DependencyDag& dag, const std::vector<int>& order) {
  std::vector<int> cost(dag.k, 0);
  int best = 0;
  for (int i : order) {
    int base = 0;
    for (int j : dag.deps[i]) base = std::max(base, cost[j]);
    cost[i] = base + schemas[i].decode.radius;
    best = std::max(best, cost[i]);
  }
  return best;
}

}  // namespace

Schema compose_schemas(const std::vector<Schema>& schemas, const DependencyDag& dag, const ComposeOptions& opt,
                       int output_slot) {
  const int k = dag.k;
  if (k < 1 || static_cast<int>(schemas.size()) != k) throw Error(ErrorKind::invalid_params, "compose needs k schemas");
  const auto order = topological_order(dag);
  for (int i = 0; i < k; ++i)
    if (schemas[i].inputs != static_cast<int>(dag.deps[i].size()))
      throw Error(ErrorKind::invalid_params, "slot " + std::to_string(i + 1) + " input count does not match the dag");
  if (output_slot < 0) output_slot = k - 1;
  const auto p = opt.params;

  Schema s;
  s.name = "compose(";
  for (int i = 0; i < k; ++i) s.name += (i ? "," : "") + schemas[i].name;
  s.name += ")";
  s.meta.kind = AdviceKind::variable;
  s.meta.composable = true;
  s.meta.params = p;
  s.meta.gamma0 = 0;
  for (const auto& x : schemas) s.meta.gamma0 += x.meta.gamma0;
  s.meta.beta = static_cast<int>(std::floor(p.c * p.alpha / std::pow(p.gamma, 3)));
  s.meta.threshold = [schemas, k](double c, int gamma) {
    const double kg = 2.0 * k * gamma;
    double a = kg * kg * kg * std::max(1, ceil_log2(k)) / c;
    for (const auto& x : schemas)
      if (x.meta.threshold) a = std::max(a, x.meta.threshold(c, static_cast<int>(kg)));
    return a;
  };

  s.encode = [schemas, dag, order, opt, k](const Graph& g, const std::vector<Solution>&) {
    std::vector<Solution> sols(k);
    std::vector<Advice> advs(k);
    const auto p = opt.params;
    const double slot_bound = p.c * p.alpha / std::pow(2.0 * k * p.gamma, 3);
    for (int i : order) {
      auto given = deps_of(sols, dag.deps[i]);
      advs[i] = schemas[i].encode(g, given);
      if (opt.check_slot_bound && advs[i].max_bits() > slot_bound) {
        std::ostringstream d;
        d << "slot " << i + 1 << " holds " << advs[i].max_bits() << " bits, bound " << slot_bound;
        throw InfeasibleError("|l_i(v)| <= c*alpha/(2k*gamma)^3", d.str());
      }
      sols[i] = run_local(g, advs[i], schemas[i].decode, given).out;
    }
    Advice out(g.size());
    for (int v = 0; v < g.size(); ++v) {
      std::vector<FrameEntry> entries;
      for (int i = 0; i < k; ++i)
        if (!advs[i].bits[v].empty()) entries.emplace_back(i + 1, advs[i].bits[v]);
      out.bits[v] = frame_encode(entries, k);
    }
    out.kind = AdviceKind::variable;
    out.bound = out.max_bits();
    if (opt.check_slot_bound && out.bound > std::floor(p.c * p.alpha / std::pow(p.gamma, 3))) {
      std::ostringstream d;
      d << "composed strings reach " << out.bound << " bits";
      throw InfeasibleError("|l(v)| <= c*alpha/gamma^3", d.str());
    }
    return out;
  };

  s.decode.radius = composed_radius(schemas, dag, order);
  s.decode.eval = [schemas, dag, order, k, output_slot](const View& view) {
    const int n = view.size();
    std::vector<std::vector<std::string>> slot_bits(k, std::vector<std::string>(n));
    for (int v = 0; v < n; ++v)
      for (auto& [i, l] : frame_decode(view.nodes[v].advice, k)) slot_bits[i - 1][v] = l;
    std::vector<Solution> sols(k, Solution(n));
    // A slot's view with its own advice and the outputs it depends on.
    auto slot_view = [&](int i) {
      View sv = view;
      for (int v = 0; v < n; ++v) {
        sv.nodes[v].advice = slot_bits[i][v];
        sv.nodes[v].given.clear();
        for (int j : dag.deps[i]) sv.nodes[v].given.push_back(sols[j][v]);
      }
      return sv;
    };
    if (view.closed()) {
      for (int i : order) {
        sols[i] = schemas[i].decode.eval(slot_view(i));
        if (static_cast<int>(sols[i].size()) != n) decode_fail("slot decoder returned the wrong size");
      }
      return sols[output_slot];
    }
    // need[i]: distance from the center up to which slot i is decoded, one
    // recentered view per node.
    std::vector<int> need(k, -1);
    need[output_slot] = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int i = *it;
      if (need[i] < 0) continue;
      for (int j : dag.deps[i]) need[j] = std::max(need[j], need[i] + schemas[i].decode.radius);
    }
    for (int i : order) {
      if (need[i] < 0) continue;
      const View sv = slot_view(i);
      for (int w = 0; w < n; ++w) {
        if (view.nodes[w].dist > need[i]) continue;
        auto out = schemas[i].decode.eval(sv.recenter(w, schemas[i].decode.radius));
        if (out.empty()) decode_fail("slot decoder returned the wrong size");
        sols[i][w] = out[0];
      }
    }
    return sols[output_slot];
  };
  return s;
}

std::vector<Solution> decode_all_slots(const std::vector<Schema>& schemas, const DependencyDag& dag, const Graph& g,
                                       const Advice& composed) {
  const int k = dag.k;
  std::vector<Advice> advs(k, Advice(g.size()));
  for (int v = 0; v < g.size(); ++v)
    for (auto& [i, l] : frame_decode(composed.bits[v], k)) advs[i - 1].bits[v] = l;
  std::vector<Solution> sols(k);
  for (int i : topological_order(dag)) sols[i] = run_local(g, advs[i], schemas[i].decode, deps_of(sols, dag.deps[i])).out;
  return sols;
}

OneBitGeometry one_bit_geometry(const ComposableParams& p) {
  OneBitGeometry geo;
  geo.d = p.alpha / (10 * p.gamma);
  geo.d4 = geo.d / 4;
  geo.d8 = geo.d / 8;
  // Cluster span plus absorption slack plus the ray region, and the
  // diameter of a ray-less component.
  geo.radius_extra = std::max((p.gamma + 1) * geo.d + geo.d4 + p.gamma + 12, 2 * (geo.d8 + 10) + p.gamma * geo.d + 2);
  return geo;
}

namespace {

// Groups holders into clusters: components of the relation dist <= d.
// Holders are visited in ascending ID, clusters are returned with members
// sorted by ID.
std::vector<std::vector<int>> absorb_clusters(const Graph& g, const std::vector<int>& holders_by_id, int d) {
  std::vector<int> cl(g.size(), -1);
  std::vector<char> is_holder(g.size(), 0);
  for (int h : holders_by_id) is_holder[h] = 1;
  std::vector<std::vector<int>> out;
  for (int h : holders_by_id) {
    if (cl[h] >= 0) continue;
    const int id = static_cast<int>(out.size());
    std::vector<int> members{h};
    cl[h] = id;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (const auto& b : ball(g, members[i], d))
        if (is_holder[b.node] && cl[b.node] < 0) {
          cl[b.node] = id;
          members.push_back(b.node);
        }
    std::sort(members.begin(), members.end(), [&](int a, int b) { return g.id(a) < g.id(b); });
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

Schema to_one_bit(const Schema& wrapped, const OneBitOptions& opt) {
  if (wrapped.inputs != 0) throw Error(ErrorKind::invalid_params, "to_one_bit wraps schemas without inputs");
  const auto p = opt.params;
  if (p.gamma < 2) throw Error(ErrorKind::invalid_params, "to_one_bit needs gamma >= 2");
  const auto geo = one_bit_geometry(p);

  Schema s;
  s.name = "one_bit(" + wrapped.name + ")";
  s.meta.kind = AdviceKind::uniform_fixed;
  s.meta.beta = 1;
  s.meta.params = p;

  s.encode = [wrapped, opt, geo](const Graph& g, const std::vector<Solution>&) {
    const auto p = opt.params;
    if (wrapped.meta.threshold && p.alpha < wrapped.meta.threshold(p.c, p.gamma)) {
      std::ostringstream d;
      d << "alpha=" << p.alpha << " A=" << wrapped.meta.threshold(p.c, p.gamma);
      throw InfeasibleError("alpha >= A(c,gamma)", d.str());
    }
    if (geo.d < 1) throw InfeasibleError("d = alpha/(10 gamma) >= 1", "alpha=" + std::to_string(p.alpha));
    Advice w = wrapped.encode(g, {});
    const double per_node = p.c * p.alpha / std::pow(p.gamma, 3);
    if (w.max_bits() > per_node) {
      std::ostringstream d;
      d << w.max_bits() << " bits > " << per_node;
      throw InfeasibleError("per-node bits <= c*alpha/gamma^3", d.str());
    }
    std::vector<int> holders;
    for (int v : g.by_id())
      if (!w.bits[v].empty()) holders.push_back(v);
    Advice out(g.size());
    for (int v = 0; v < g.size(); ++v) out.bits[v] = w.bits[v].empty() ? "0" : "1";
    const auto comp = components(g);
    for (const auto& members : absorb_clusters(g, holders, geo.d)) {
      if (static_cast<int>(members.size()) > p.gamma)
        throw InfeasibleError("cluster size <= gamma", "cluster of " + std::to_string(members.size()) + " holders");
      std::vector<std::string> parts;
      for (int m : members) parts.push_back(w.bits[m]);
      const std::string lp = runlength_encode(length_frame(parts), p.gamma);
      const auto x = multi_bfs(g, members, geo.d4);
      int z = -1;
      for (int v : g.by_id())
        if (x[v] >= geo.d8 + 10 && x[v] <= geo.d4) {
          z = v;
          break;
        }
      if (z < 0) {
        // Every node of the component is close to the cluster; the decoder
        // solves it by brute force.
        int size = 0;
        bool near = true;
        const auto full = multi_bfs(g, members);
        for (int v = 0; v < g.size(); ++v)
          if (comp[v] == comp[members[0]]) {
            ++size;
            if (full[v] > geo.d8 + 9) near = false;
          }
        if (!near) throw InfeasibleError("d/4 >= d/8 + 10", "no ray start although the component is large");
        if (size > opt.brute_force_cap)
          throw InfeasibleError("brute-force component <= cap", std::to_string(size) + " nodes");
        continue;
      }
      if (static_cast<int>(lp.size()) > geo.d8) {
        std::ostringstream d;
        d << "|L'|=" << lp.size() << " > d/8=" << geo.d8;
        throw InfeasibleError("|L'| <= d/8", d.str());
      }
      int cur = z;
      for (int i = 0; i < geo.d8; ++i) {
        out.bits[cur] = i < static_cast<int>(lp.size()) ? std::string(1, lp[i]) : "0";
        if (i + 1 == geo.d8) break;
        int next = -1;
        for (int u : g.neighbors(cur))
          if (x[u] == x[cur] - 1) {
            next = u;
            break;
          }
        cur = next;
      }
    }
    out.kind = AdviceKind::uniform_fixed;
    out.bound = 1;
    return out;
  };

  s.decode.radius = wrapped.decode.radius + geo.radius_extra;
  const int margin = geo.d + geo.d4 + p.gamma + 8;
  s.decode.eval = [wrapped, opt, geo, margin](const View& view) {
    const int gamma = opt.params.gamma;
    const int n = view.size();
    const Graph h = view.as_graph();
    std::vector<char> one(n, 0);
    for (int v = 0; v < n; ++v) {
      const auto& a = view.nodes[v].advice;
      if (a != "0" && a != "1") decode_fail("advice is not a single bit");
      one[v] = a == "1";
    }
    // 1-components by size.
    std::vector<int> comp(n, -1), comp_size;
    for (int v : h.by_id()) {
      if (!one[v] || comp[v] >= 0) continue;
      const int id = static_cast<int>(comp_size.size());
      std::vector<int> st{v};
      comp[v] = id;
      int sz = 0;
      while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        ++sz;
        for (int u : h.neighbors(x))
          if (one[u] && comp[u] < 0) {
            comp[u] = id;
            st.push_back(u);
          }
      }
      comp_size.push_back(sz);
    }
    std::vector<int> holders;
    for (int v : h.by_id())
      if (one[v] && comp_size[comp[v]] <= gamma) holders.push_back(v);

    View inner = view;
    for (auto& x : inner.nodes) x.advice.clear();
    bool brute = false;
    for (const auto& members : absorb_clusters(h, holders, geo.d)) {
      bool inside = view.closed();
      if (!inside) {
        inside = true;
        for (int m : members)
          if (view.nodes[m].dist > view.radius - margin) inside = false;
      }
      if (!inside) continue;
      if (static_cast<int>(members.size()) > gamma) decode_fail("cluster larger than gamma");
      const auto x = multi_bfs(h, members, geo.d4);
      // Payload runs near the cluster, farthest first.
      std::vector<std::pair<int, int>> runs;  // (max x, comp)
      std::vector<char> seen(comp_size.size(), 0);
      std::vector<int> max_x(comp_size.size(), -1);
      std::vector<char> within(comp_size.size(), 1);
      for (int v = 0; v < n; ++v) {
        if (!one[v] || comp_size[comp[v]] <= gamma) continue;
        const int c = comp[v];
        if (x[v] < 0) within[c] = 0;
        max_x[c] = std::max(max_x[c], x[v]);
        seen[c] = 1;
      }
      for (int c = 0; c < static_cast<int>(comp_size.size()); ++c)
        if (seen[c] && max_x[c] >= 0) {
          if (!within[c]) decode_fail("payload run straddles the ray region");
          if (comp_size[c] != gamma + 1 && comp_size[c] != gamma + 2) decode_fail("payload run of bad length");
          runs.emplace_back(max_x[c], c);
        }
      if (runs.empty()) {
        brute = true;
        continue;
      }
      std::sort(runs.begin(), runs.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      std::string l;
      for (auto [mx, c] : runs) l.push_back(comp_size[c] == gamma + 2 ? '1' : '0');
      std::vector<std::string> parts;
      try {
        parts = length_unframe(l, members.size());
      } catch (const Error& e) {
        decode_fail(std::string("cluster payload: ") + e.what());
      }
      for (std::size_t i = 0; i < members.size(); ++i) inner.nodes[members[i]].advice = parts[i];
    }
    if (brute) {
      if (!view.closed()) decode_fail("cluster without a ray in a component larger than the view");
      if (n > opt.brute_force_cap) decode_fail("component exceeds the brute-force cap");
      Advice a = wrapped.encode(h, {});
      return run_local(h, a, wrapped.decode).out;
    }
    return wrapped.decode.eval(inner);
  };
  return s;
}

}  // namespace lca
