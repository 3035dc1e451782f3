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

#include "lca/generators.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_set>

#include "lca/errors.hpp"

namespace lca {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

std::pair<int, int> key(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

void need(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::invalid_params, what);
}

std::vector<NodeId> seq_ids(int n) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{1});
  return ids;
}

// Random cross-class edges under a degree cap. Stops after `limit`
// consecutive rejected pairs.
EdgeList planted_edges(const std::vector<int>& cls, int delta, std::mt19937_64& rng) {
  const int n = static_cast<int>(cls.size());
  std::vector<int> deg(n, 0);
  std::set<std::pair<int, int>> have;
  EdgeList e;
  std::uniform_int_distribution<int> pick(0, n - 1);
  int fails = 0;
  const int limit = 40 * n + 200;
  while (fails < limit) {
    int a = pick(rng), b = pick(rng);
    if (a == b || cls[a] == cls[b] || deg[a] >= delta || deg[b] >= delta || have.count(key(a, b))) {
      ++fails;
      continue;
    }
    fails = 0;
    have.insert(key(a, b));
    e.emplace_back(a, b);
    ++deg[a];
    ++deg[b];
  }
  return e;
}

// Line of n nodes with class i mod k at position i: the path, the
// distance-2 chords between distinct classes, then random chords of length
// at most `width` between distinct classes, degrees capped at delta.
EdgeList planted_band_edges(int n, int k, int delta, int width, std::mt19937_64& rng) {
  std::vector<int> deg(n, 0);
  std::set<std::pair<int, int>> have;
  EdgeList e;
  auto add = [&](int a, int b) {
    if (b >= n || a % k == b % k || deg[a] >= delta || deg[b] >= delta || have.count(key(a, b))) return;
    have.insert(key(a, b));
    e.emplace_back(a, b);
    ++deg[a];
    ++deg[b];
  };
  for (int i = 0; i + 1 < n; ++i) add(i, i + 1);
  for (int i = 0; i + 2 < n; ++i) add(i, i + 2);
  std::uniform_int_distribution<int> len(3, std::max(3, width));
  for (int i = 0; i < n; ++i)
    if (rng() % 2) add(i, i + len(rng));
  return e;
}

}  // namespace

std::vector<NodeId> random_ids(int n, std::mt19937_64& rng, int exponent) {
  need(exponent >= 1, "id_exponent must be >= 1");
  if (exponent == 1) {
    auto ids = seq_ids(n);
    std::shuffle(ids.begin(), ids.end(), rng);
    return ids;
  }
  const double top = std::pow(static_cast<double>(std::max(n, 2)), exponent);
  const NodeId hi = top > 4e18 ? NodeId{4000000000000000000} : static_cast<NodeId>(top);
  std::uniform_int_distribution<NodeId> pick(1, hi);
  std::unordered_set<NodeId> seen;
  std::vector<NodeId> ids;
  while (static_cast<int>(ids.size()) < n) {
    NodeId x = pick(rng);
    if (seen.insert(x).second) ids.push_back(x);
  }
  return ids;
}

Generated generate_graph(const std::string& kind, const std::vector<int>& p, std::uint64_t seed,
                         const GenOptions& opt) {
  std::mt19937_64 rng(seed);
  Generated out;
  EdgeList e;
  int n = 0;
  if (kind == "cycle") {
    need(p.size() == 1 && p[0] >= 3, "cycle needs [n] with n >= 3");
    n = p[0];
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  } else if (kind == "path") {
    need(p.size() == 1 && p[0] >= 1, "path needs [n] with n >= 1");
    n = p[0];
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  } else if (kind == "grid2d") {
    need(p.size() == 2 && p[0] >= 1 && p[1] >= 1, "grid2d needs [width height]");
    const int w = p[0], h = p[1];
    n = w * h;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (x + 1 < w) e.emplace_back(y * w + x, y * w + x + 1);
        if (y + 1 < h) e.emplace_back(y * w + x, (y + 1) * w + x);
      }
  } else if (kind == "even_degree_random") {
    need(p.size() == 2 && p[0] >= 3 && p[1] >= 2 && p[1] % 2 == 0,
         "even_degree_random needs [n d] with n >= 3 and d even >= 2");
    n = p[0];
    std::set<std::pair<int, int>> have;
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    // d/2 rounds; each adds one random cycle on a random subset, rejecting
    // candidates that would repeat an edge.
    for (int round = 0; round < p[1] / 2; ++round) {
      for (int attempt = 0; attempt < 50; ++attempt) {
        std::shuffle(all.begin(), all.end(), rng);
        int len = std::uniform_int_distribution<int>(3, n)(rng);
        if (round == 0) len = n;
        bool ok = true;
        for (int i = 0; i < len && ok; ++i) ok = !have.count(key(all[i], all[(i + 1) % len]));
        if (!ok) continue;
        for (int i = 0; i < len; ++i) {
          have.insert(key(all[i], all[(i + 1) % len]));
          e.emplace_back(all[i], all[(i + 1) % len]);
        }
        break;
      }
    }
  } else if (kind == "bipartite_regular_pow2") {
    need(p.size() == 2 && p[1] >= 1 && (p[1] & (p[1] - 1)) == 0 && p[0] >= p[1],
         "bipartite_regular_pow2 needs [n_per_side delta] with delta a power of 2 and delta <= n_per_side");
    const int side = p[0], d = p[1];
    n = 2 * side;
    std::vector<int> right(side);
    std::iota(right.begin(), right.end(), side);
    std::shuffle(right.begin(), right.end(), rng);
    std::vector<int> shifts(side);
    std::iota(shifts.begin(), shifts.end(), 0);
    std::shuffle(shifts.begin(), shifts.end(), rng);
    for (int i = 0; i < side; ++i)
      for (int j = 0; j < d; ++j) e.emplace_back(i, right[(i + shifts[j]) % side]);
  } else if (kind == "three_colorable_random" || kind == "delta_colorable_random") {
    const bool three = kind == "three_colorable_random";
    need(p.size() == 2 && p[0] >= 1 && p[1] >= (three ? 1 : 2), kind + " needs [n delta]");
    n = p[0];
    const int k = three ? 3 : p[1];
    std::vector<int> cls(n);
    for (int i = 0; i < n; ++i) cls[i] = i % k;
    std::shuffle(cls.begin(), cls.end(), rng);
    e = planted_edges(cls, p[1], rng);
    out.planted.resize(n);
    for (int i = 0; i < n; ++i) out.planted[i] = cls[i] + 1;
  } else if (kind == "three_colorable_band" || kind == "delta_colorable_band") {
    const bool three = kind == "three_colorable_band";
    need(p.size() == 2 && p[0] >= 1 && p[1] >= (three ? 2 : 3), kind + " needs [n delta]");
    n = p[0];
    const int k = three ? 3 : p[1];
    e = planted_band_edges(n, k, p[1], 8, rng);
    out.planted.resize(n);
    for (int i = 0; i < n; ++i) out.planted[i] = i % k + 1;
  } else if (kind == "complete" || kind == "complete_bipartite" || kind == "star" || kind == "binary_tree" ||
             kind == "random_bounded_degree" || kind == "random_band") {
    Graph h;
    if (kind == "complete") {
      need(p.size() == 1 && p[0] >= 1, "complete needs [n]");
      h = complete_graph(p[0]);
    } else if (kind == "complete_bipartite") {
      need(p.size() == 2 && p[0] >= 1 && p[1] >= 1, "complete_bipartite needs [a b]");
      h = complete_bipartite(p[0], p[1]);
    } else if (kind == "star") {
      need(p.size() == 1 && p[0] >= 1, "star needs [leaves]");
      h = star_graph(p[0]);
    } else if (kind == "binary_tree") {
      need(p.size() == 1 && p[0] >= 0 && p[0] <= 20, "binary_tree needs [depth] with depth <= 20");
      h = complete_binary_tree(p[0]);
    } else if (kind == "random_band") {
      need(p.size() == 3 && p[0] >= 1 && p[1] >= 1 && p[2] >= 1, "random_band needs [n delta width]");
      h = random_band(p[0], p[1], p[2], rng());
    } else {
      need(p.size() == 3 && p[0] >= 1 && p[1] >= 1 && p[2] >= 0, "random_bounded_degree needs [n delta edges]");
      h = random_bounded_degree(p[0], p[1], p[2], rng());
    }
    n = h.size();
    e = h.edges();
  } else {
    throw Error(ErrorKind::invalid_params, "unknown generator kind '" + kind + "'");
  }
  out.graph = Graph(random_ids(n, rng, opt.id_exponent), e);
  return out;
}

Graph path_graph(const std::vector<NodeId>& ids) {
  EdgeList e;
  for (int i = 0; i + 1 < static_cast<int>(ids.size()); ++i) e.emplace_back(i, i + 1);
  return Graph(ids, e);
}

Graph cycle_graph(const std::vector<NodeId>& ids) {
  EdgeList e;
  const int n = static_cast<int>(ids.size());
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(ids, e);
}

Graph complete_graph(int n) {
  EdgeList e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(seq_ids(n), e);
}

Graph complete_bipartite(int a, int b) {
  EdgeList e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return Graph(seq_ids(a + b), e);
}

Graph star_graph(int leaves) {
  EdgeList e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(seq_ids(leaves + 1), e);
}

Graph grid_graph(int w, int h) { return generate_graph("grid2d", {w, h}, 0).graph; }

Graph complete_binary_tree(int depth) {
  const int n = (1 << (depth + 1)) - 1;
  EdgeList e;
  for (int i = 1; i < n; ++i) e.emplace_back((i - 1) / 2, i);
  return Graph(seq_ids(n), e);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<NodeId> ids = a.ids();
  NodeId off = 0;
  for (NodeId x : a.ids()) off = std::max(off, x);
  for (NodeId x : b.ids()) ids.push_back(x + off);
  EdgeList e;
  for (auto [u, v] : a.edges()) e.emplace_back(u, v);
  for (auto [u, v] : b.edges()) e.emplace_back(u + a.size(), v + a.size());
  return Graph(ids, e);
}

Graph random_bounded_degree(int n, int delta, int edges, std::uint64_t seed) {
  need(n >= 1 && delta >= 1, "random_bounded_degree needs n >= 1, delta >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> deg(n, 0);
  std::set<std::pair<int, int>> have;
  EdgeList e;
  int fails = 0;
  while (static_cast<int>(e.size()) < edges && fails < 20 * n + 100) {
    int a = pick(rng), b = pick(rng);
    if (a == b || deg[a] >= delta || deg[b] >= delta || have.count(key(a, b))) {
      ++fails;
      continue;
    }
    fails = 0;
    have.insert(key(a, b));
    e.emplace_back(a, b);
    ++deg[a];
    ++deg[b];
  }
  return Graph(random_ids(n, rng), e);
}

Graph random_band(int n, int delta, int width, std::uint64_t seed) {
  need(n >= 2 && delta >= 2 && width >= 1, "random_band needs n >= 2, delta >= 2, width >= 1");
  std::mt19937_64 rng(seed);
  std::vector<int> deg(n, 0);
  std::set<std::pair<int, int>> have;
  EdgeList e;
  auto add = [&](int a, int b) {
    if (a == b || deg[a] >= delta || deg[b] >= delta || have.count(key(a, b))) return;
    have.insert(key(a, b));
    e.emplace_back(a, b);
    ++deg[a];
    ++deg[b];
  };
  for (int i = 0; i + 1 < n; ++i) add(i, i + 1);
  std::uniform_int_distribution<int> extra(0, delta - 2);
  for (int i = 0; i < n; ++i) {
    int k = extra(rng);
    for (int j = 0; j < k; ++j) {
      int t = i + std::uniform_int_distribution<int>(2, width + 1)(rng);
      if (t < n) add(i, t);
    }
  }
  return Graph(random_ids(n, rng), e);
}

Graph relabel(const Graph& g, std::uint64_t seed, int id_exponent) {
  std::mt19937_64 rng(seed);
  return Graph(random_ids(g.size(), rng, id_exponent), g.edges());
}

void write_graph(std::ostream& os, const Graph& g) {
  os << g.size() << ' ' << g.edge_count() << ' ' << g.max_degree() << '\n';
  for (auto [u, v] : g.edges()) os << g.id(u) << ' ' << g.id(v) << '\n';
  for (int v : g.by_id())
    if (g.degree(v) == 0) os << "node " << g.id(v) << '\n';
  for (const auto& [k, l] : g.labels()) os << "label " << g.id(k.first) << ' ' << g.id(k.second) << ' ' << l << '\n';
}

Graph read_graph(std::istream& is) {
  std::string line;
  auto bad = [](const std::string& w) { return Error(ErrorKind::malformed, "graph file: " + w); };
  if (!std::getline(is, line)) throw bad("missing header");
  std::istringstream hs(line);
  long n = -1, m = -1, delta = -1;
  if (!(hs >> n >> m >> delta) || n < 0 || m < 0) throw bad("header must be 'n m delta'");
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::tuple<NodeId, NodeId, std::string>> labels;
  std::vector<NodeId> ids;
  std::unordered_set<NodeId> seen;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line.rfind("label", 0) == 0) {
      std::string tag, l;
      NodeId a, b;
      if (!(ls >> tag >> a >> b)) throw bad("bad label line '" + line + "'");
      ls >> l;
      labels.emplace_back(a, b, l);
      continue;
    }
    if (line.rfind("node", 0) == 0) {
      std::string tag;
      NodeId a;
      if (!(ls >> tag >> a)) throw bad("bad node line '" + line + "'");
      if (seen.insert(a).second) ids.push_back(a);
      continue;
    }
    NodeId a, b;
    if (!(ls >> a >> b)) throw bad("bad edge line '" + line + "'");
    edges.emplace_back(a, b);
    for (NodeId x : {a, b})
      if (seen.insert(x).second) ids.push_back(x);
  }
  if (static_cast<long>(edges.size()) != m) throw bad("edge count does not match header");
  if (static_cast<long>(ids.size()) > n) throw bad("more IDs than nodes");
  // Isolated nodes are not listed; they take the smallest unused IDs.
  for (NodeId x = 1; static_cast<long>(ids.size()) < n; ++x)
    if (seen.insert(x).second) ids.push_back(x);
  std::sort(ids.begin(), ids.end());
  Graph g = Graph::from_id_edges(ids, edges);
  for (auto& [a, b, l] : labels) g.set_label(g.index_of(a), g.index_of(b), l);
  if (g.max_degree() != delta) throw bad("declared max degree does not match");
  return g;
}

}  // namespace lca
