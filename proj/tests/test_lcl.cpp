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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <regex>

#include "lca/generators.hpp"
#include "lca/lcl.hpp"
#include "oracles.hpp"

using namespace lca;

namespace {

double cycle_ball(int x) { return 2.0 * x + 1; }

LclConstants cycle_constants(int r) {
  const double c = std::log2(1.0 + std::pow(2.0, -r)) / (3.0 * r);
  return make_lcl_constants(r, 2, family_x0(cycle_ball, c));
}

LclConstants grid_constants(int r) {
  const double c = std::log2(1.0 + std::pow(4.0, -r)) / (3.0 * r);
  return make_lcl_constants(r, 4, family_x0([](int x) { return 2.0 * x * x + 2.0 * x + 1; }, c));
}

// Constants that bypass the derived c, for layout tests only.
LclConstants loose_constants(int r, int delta, int x) {
  LclConstants k;
  k.r = r;
  k.delta = delta;
  k.c = 0.5;
  k.x0 = 1;
  k.x = x;
  k.palette_bound = 1e18;
  return k;
}

Solution node_labels(const std::vector<int>& v) {
  Solution s(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) s[i].node = v[i];
  return s;
}

// Brute-force oracle for find_alpha on the whole graph.
int alpha_oracle(const Graph& g, int v, const LclConstants& k) {
  const auto d = bfs(g, v);
  for (int a = k.x; a <= 2 * k.x; ++a) {
    long in = 0, sphere = 0;
    for (int u = 0; u < g.size(); ++u) {
      in += d[u] >= 0 && d[u] <= a;
      sphere += d[u] == a + k.r;
    }
    if (in >= std::pow(k.delta, k.r) * sphere) return a;
  }
  return -1;
}

}  // namespace

TEST(LclCheckers, ColoringMisSinkless) {
  auto c4 = cycle_graph({1, 2, 3, 4});
  auto col = coloring_lcl(3);
  EXPECT_TRUE(lcl_violations(c4, col, node_labels({0, 1, 0, 1})).empty());
  EXPECT_EQ(lcl_violations(c4, col, node_labels({0, 0, 1, 2})).size(), 2u);
  EXPECT_FALSE(lcl_violations(c4, col, node_labels({0, 1, 0, 3})).empty());
  auto mis = mis_lcl();
  EXPECT_TRUE(lcl_violations(c4, mis, node_labels({1, 0, 1, 0})).empty());
  EXPECT_FALSE(lcl_violations(c4, mis, node_labels({1, 0, 0, 0})).empty());
  EXPECT_FALSE(lcl_violations(c4, mis, node_labels({1, 1, 0, 0})).empty());
  // Partial: an uncovered out-node with an open neighbor is still fine.
  auto part = node_labels({0, -1, 0, 0});
  EXPECT_TRUE(mis.check(c4, part, 0, true));
  EXPECT_FALSE(mis.check(c4, part, 3, true));

  auto k4 = complete_graph(4);
  auto so = sinkless_orientation_lcl();
  Solution s(4);
  for (int v = 0; v < 4; ++v) s[v].edge.assign(3, 0);
  // Cyclic orientation 0->1->2->3->0 plus 0->2, 1->3.
  auto orient = [&](int a, int b) {
    s[a].edge[k4.slot(a, b)] = 1;
    s[b].edge[k4.slot(b, a)] = 0;
  };
  orient(0, 1);
  orient(1, 2);
  orient(2, 3);
  orient(3, 0);
  orient(0, 2);
  orient(1, 3);
  EXPECT_TRUE(lcl_violations(k4, so, s).empty());
  orient(3, 0);
  s[0].edge[k4.slot(0, 3)] = 1;
  EXPECT_FALSE(lcl_violations(k4, so, s).empty());
}

TEST(LclCheckers, TruthTableMatchesBuiltinColoring) {
  std::vector<std::pair<int, std::vector<int>>> accept;
  for (int a = 0; a < 2; ++a) accept.push_back({a, {1 - a, 1 - a}});
  auto tt = truth_table_lcl("2-coloring-c", 2, accept);
  auto col = coloring_lcl(2);
  auto c6 = generate_graph("cycle", {6}, 1).graph;
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::vector<int> l(6);
    for (int& x : l) x = static_cast<int>(rng() % 2);
    EXPECT_EQ(lcl_violations(c6, tt, node_labels(l)), lcl_violations(c6, col, node_labels(l)));
  }
}

TEST(LclCheckers, CheckerIsLocal) {
  auto g = random_bounded_degree(60, 4, 90, 5);
  auto col = coloring_lcl(5);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    std::vector<int> l(60);
    for (int& x : l) x = static_cast<int>(rng() % 5);
    const int v = static_cast<int>(rng() % 60);
    auto d = bfs(g, v);
    auto m = l;
    for (int u = 0; u < 60; ++u)
      if (d[u] < 0 || d[u] > col.radius) m[u] = static_cast<int>(rng() % 5);
    EXPECT_EQ(col.check(g, node_labels(l), v, false), col.check(g, node_labels(m), v, false));
  }
}

TEST(ExactSearch, SolvesAndRespectsFixedLabels) {
  auto c7 = generate_graph("cycle", {7}, 2).graph;
  auto s = solve_lcl(c7, coloring_lcl(3), 100000);
  ASSERT_TRUE(s);
  EXPECT_TRUE(lcl_violations(c7, coloring_lcl(3), *s).empty());
  EXPECT_FALSE(solve_lcl(c7, coloring_lcl(2), 100000));
  auto grid = grid_graph(12, 12);
  auto m = solve_lcl(grid, mis_lcl(), 100000);
  ASSERT_TRUE(m);
  EXPECT_TRUE(lcl_violations(grid, mis_lcl(), *m).empty());
  // Fixed labels are kept; conflicting fixed labels leave no completion.
  const int a = 0, b = c7.neighbors(0)[0];
  Solution fixed(7);
  fixed[a].node = 2;
  fixed[b].node = 1;
  std::vector<int> free;
  for (int v = 0; v < 7; ++v)
    if (v != a && v != b) free.push_back(v);
  auto f = exact_search(c7, coloring_lcl(3), fixed, free, 100000);
  ASSERT_TRUE(f);
  EXPECT_EQ((*f)[a].node, 2);
  EXPECT_EQ((*f)[b].node, 1);
  EXPECT_TRUE(lcl_violations(c7, coloring_lcl(3), *f).empty());
  fixed[b].node = 2;
  EXPECT_FALSE(exact_search(c7, coloring_lcl(3), fixed, free, 100000));
  auto k4 = complete_graph(4);
  auto so = solve_lcl(k4, sinkless_orientation_lcl(), 100000);
  ASSERT_TRUE(so);
  EXPECT_TRUE(lcl_violations(k4, sinkless_orientation_lcl(), *so).empty());
  EXPECT_THROW(solve_lcl(generate_graph("cycle", {41}, 1).graph, coloring_lcl(2), 50), Error);
}

TEST(ExactSearch, Deterministic) {
  auto g = random_bounded_degree(80, 4, 120, 7);
  auto a = solve_lcl(g, coloring_lcl(5), 1000000);
  auto b = solve_lcl(g, coloring_lcl(5), 1000000);
  ASSERT_TRUE(a && b);
  EXPECT_EQ(*a, *b);
}

TEST(LclConstantsTest, DerivedValues) {
  auto k = make_lcl_constants(1, 2, 31);
  EXPECT_NEAR(k.c, std::log2(1.5) / 3, 1e-12);
  EXPECT_EQ(k.x, 31);
  EXPECT_EQ(make_lcl_constants(10, 2, 3).x, 40);
  const int x0 = family_x0(cycle_ball, k.c);
  EXPECT_GT(cycle_ball(x0 - 1), std::pow(2.0, k.c * (x0 - 1)));
  for (int x = x0; x < x0 + 2000; ++x) EXPECT_LE(cycle_ball(x), std::pow(2.0, k.c * x));
  EXPECT_THROW(make_lcl_constants(0, 2, 3), Error);
}

TEST(FindAlpha, Examples) {
  auto path = generate_graph("path", {200}, 1).graph;
  auto k = loose_constants(1, 2, 10);
  for (int v = 0; v < path.size(); v += 17) EXPECT_EQ(find_alpha(path, {}, v, k), alpha_oracle(path, v, k));
  auto small = generate_graph("cycle", {12}, 1).graph;
  EXPECT_EQ(find_alpha(small, {}, 0, k), k.x);
  auto grid = grid_graph(30, 30);
  auto kg = loose_constants(1, 4, 6);
  for (int v = 0; v < grid.size(); v += 37) {
    const int want = alpha_oracle(grid, v, kg);
    if (want < 0)
      EXPECT_THROW(find_alpha(grid, {}, v, kg), InfeasibleError);
    else
      EXPECT_EQ(find_alpha(grid, {}, v, kg), want);
  }
}

TEST(BuildClustering, SmallDiameterHasNoClusters) {
  auto g = grid_graph(10, 10);
  auto L = build_clustering(g, loose_constants(1, 4, 10));
  EXPECT_TRUE(L.clusters.empty());
  for (int c : L.cluster_of) EXPECT_EQ(c, -1);
}

TEST(BuildClustering, C200TilesDisjointly) {
  auto g = generate_graph("cycle", {200}, 4).graph;
  auto k = loose_constants(1, 2, 20);
  auto L = build_clustering(g, k);
  ASSERT_GT(L.clusters.size(), 0u);
  std::vector<int> count(g.size(), 0);
  for (const auto& c : L.clusters) {
    for (int u : c.members) ++count[u];
    // Members within alpha + r of the center in the residual graph.
    std::vector<char> alive(g.size(), 1);
    for (int u = 0; u < g.size(); ++u)
      if (L.cluster_of[u] >= 0 && L.clusters[L.cluster_of[u]].color < c.color) alive[u] = 0;
    auto d = residual_bfs(g, alive, c.center, -1);
    for (int u : c.members) EXPECT_LE(d[u], c.alpha + k.r);
  }
  for (int x : count) EXPECT_LE(x, 1);
  // Leftovers see their whole residual component within 2x.
  std::vector<char> left(g.size(), 0);
  for (int u = 0; u < g.size(); ++u) left[u] = L.cluster_of[u] < 0;
  for (int u = 0; u < g.size(); ++u) {
    if (!left[u]) continue;
    auto d = residual_bfs(g, left, u, -1);
    for (int w = 0; w < g.size(); ++w) EXPECT_LT(d[w], 2 * k.x);
  }
}

TEST(BuildClustering, IdenticalComponentsGetIdenticalLayouts) {
  // disjoint_union shifts the second graph's IDs by the first's maximum.
  std::vector<NodeId> a;
  for (int i = 1; i <= 150; ++i) a.push_back(i);
  auto ga = cycle_graph(a);
  auto both = disjoint_union(ga, ga);
  auto k = loose_constants(1, 2, 15);
  auto La = build_clustering(ga, k);
  auto Lb = build_clustering(both, k);
  std::vector<int> ca, cb1, cb2;
  for (const auto& c : La.clusters) ca.push_back(static_cast<int>(ga.id(c.center)));
  for (const auto& c : Lb.clusters) {
    const auto id = static_cast<int>(both.id(c.center));
    (id > 150 ? cb2 : cb1).push_back(id > 150 ? id - 150 : id);
  }
  std::sort(ca.begin(), ca.end());
  std::sort(cb1.begin(), cb1.end());
  std::sort(cb2.begin(), cb2.end());
  EXPECT_EQ(ca, cb1);
  EXPECT_EQ(ca, cb2);
}

TEST(ClusterColor, Examples) {
  EXPECT_EQ(encode_cluster_color(5, 40), "11110110" "11101101110" "0");
  EXPECT_EQ(encode_cluster_color(1, 13), "11110110" "1110" "0");
  EXPECT_THROW(encode_cluster_color(1, 12), InfeasibleError);
  EXPECT_THROW(encode_cluster_color(0, 40), Error);
  const std::regex tail("(110|1110)*00*");
  for (int i = 1; i <= 2000; ++i) {
    auto s = encode_cluster_color(i, 60);
    EXPECT_TRUE(std::regex_match(s.substr(8), tail));
    s.resize(60, '0');
    EXPECT_EQ(decode_cluster_color(s), i);
  }
  EXPECT_FALSE(decode_cluster_color("11110110" "0"));
  EXPECT_FALSE(decode_cluster_color("11110110" "1111" "0"));
  EXPECT_FALSE(decode_cluster_color("11110111" "1110" "0"));
  EXPECT_FALSE(decode_cluster_color("11110110" "1110" "01"));
}

TEST(LclSchema, NoClustersMeansPureSearch) {
  auto g = generate_graph("cycle", {300}, 2).graph;
  auto k = cycle_constants(2);
  auto p = coloring_lcl(3);
  auto enc = lcl_encode(g, p, k);
  EXPECT_TRUE(enc.layout.clusters.empty());
  for (const auto& b : enc.advice.bits) EXPECT_EQ(b, "0");
  EXPECT_TRUE(lcl_violations(g, p, lcl_decode_graph(g, enc.advice, p, k)).empty());
}

TEST(LclSchema, CyclesWithClusters) {
  auto k = cycle_constants(2);
  for (auto p : {coloring_lcl(3), mis_lcl()}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto g = generate_graph("cycle", {1000}, seed).graph;
      auto enc = lcl_encode(g, p, k);
      ASSERT_GT(enc.layout.clusters.size(), 0u);
      ClusterLayout dec;
      auto out = lcl_decode_graph(g, enc.advice, p, k, &dec);
      EXPECT_TRUE(lcl_violations(g, p, out).empty());
      ASSERT_EQ(dec.clusters.size(), enc.layout.clusters.size());
      EXPECT_EQ(dec.cluster_of, enc.layout.cluster_of);
      std::vector<char> one(g.size(), 0);
      for (int v = 0; v < g.size(); ++v) one[v] = enc.advice.bits[v] == "1";
      for (std::size_t i = 0; i < dec.clusters.size(); ++i) {
        const auto& c = enc.layout.clusters[i];
        EXPECT_EQ(dec.clusters[i].center, c.center);
        EXPECT_EQ(dec.clusters[i].fixed, c.fixed);
        // Border labels roundtrip exactly.
        for (int v : c.fixed) EXPECT_EQ(out[v], enc.solution[v]);
        // Members near another region carry fixed labels.
        for (int u : c.members)
          for (const auto& b : ball(g, u, p.radius))
            if (enc.layout.cluster_of[b.node] != static_cast<int>(i))
              EXPECT_TRUE(std::binary_search(c.fixed.begin(), c.fixed.end(), u,
                                             [&](int a, int b2) { return g.id(a) < g.id(b2); }));
        // Payload 1s are isolated and within N<=alpha.
        std::vector<char> alive(g.size(), 1);
        for (int u = 0; u < g.size(); ++u)
          if (enc.layout.cluster_of[u] >= 0 && enc.layout.clusters[enc.layout.cluster_of[u]].color < c.color)
            alive[u] = 0;
        auto d = residual_bfs(g, alive, c.center, c.alpha);
        for (int z : c.payload) {
          EXPECT_GE(d[z], 0);
          if (!one[z]) continue;
          for (int u : g.neighbors(z)) EXPECT_FALSE(one[u]);
        }
      }
      // Components of 1s: singletons or path blocks of 2, 3 or 4.
      std::vector<char> seen(g.size(), 0);
      for (int v = 0; v < g.size(); ++v) {
        if (!one[v] || seen[v]) continue;
        int size = 0;
        std::vector<int> st{v};
        seen[v] = 1;
        while (!st.empty()) {
          int u = st.back();
          st.pop_back();
          ++size;
          for (int w : g.neighbors(u))
            if (one[w] && !seen[w]) {
              seen[w] = 1;
              st.push_back(w);
            }
        }
        EXPECT_LE(size, 4);
      }
    }
  }
}

TEST(LclSchema, GridMisAndRadiusIndependentOfSize) {
  auto k = grid_constants(1);
  auto p = mis_lcl();
  auto g = grid_graph(20, 20);
  auto s = lcl_schema(p, k);
  auto rt = roundtrip(s, g);
  EXPECT_TRUE(lcl_violations(g, p, rt.run.out).empty());
  EXPECT_EQ(rt.advice.kind, AdviceKind::uniform_fixed);
  EXPECT_EQ(s.decode.radius, lcl_schema(p, cycle_constants(2)).decode.radius);
  EXPECT_EQ(lcl_schema(p, k).decode.radius, s.decode.radius);
}

TEST(LclSchema, InfeasibleConstantsAreReported) {
  auto g = generate_graph("cycle", {1000}, 1).graph;
  EXPECT_THROW(lcl_encode(g, coloring_lcl(3), cycle_constants(1)), InfeasibleError);
  auto grid = grid_graph(10, 10);
  EXPECT_THROW(lcl_encode(grid, coloring_lcl(3), cycle_constants(2)), InfeasibleError);
  auto small = loose_constants(1, 2, 20);
  small.c = 0.01;
  small.x0 = 1;
  EXPECT_THROW(lcl_encode(generate_graph("cycle", {50}, 1).graph, coloring_lcl(3), small), InfeasibleError);
}

TEST(LclSchema, SuppliedSolutionIsUsed) {
  auto g = generate_graph("cycle", {700}, 8).graph;
  auto k = cycle_constants(2);
  auto p = coloring_lcl(3);
  auto base = solve_lcl(g, p, 1000000);
  ASSERT_TRUE(base);
  Solution shifted = *base;
  for (auto& o : shifted) o.node = (o.node + 1) % 3;
  auto enc = lcl_encode(g, p, k, &shifted);
  auto out = lcl_decode_graph(g, enc.advice, p, k);
  EXPECT_TRUE(lcl_violations(g, p, out).empty());
  for (const auto& c : enc.layout.clusters)
    for (int v : c.fixed) EXPECT_EQ(out[v].node, shifted[v].node);
  Solution bad(g.size());
  EXPECT_THROW(lcl_encode(g, p, k, &bad), Error);
}
