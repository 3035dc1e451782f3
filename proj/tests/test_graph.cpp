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

#include <set>
#include <sstream>

#include "lca/errors.hpp"
#include "lca/generators.hpp"
#include "lca/graph.hpp"
#include "oracles.hpp"

using namespace lca;

namespace {

std::vector<Graph> small_family() {
  std::vector<Graph> gs;
  for (std::uint64_t s = 0; s < 6; ++s) {
    gs.push_back(random_bounded_degree(30 + 10 * static_cast<int>(s), 5, 60, s));
    gs.push_back(generate_graph("cycle", {5 + static_cast<int>(s) * 7}, s).graph);
    gs.push_back(generate_graph("grid2d", {3 + static_cast<int>(s), 4}, s).graph);
    gs.push_back(generate_graph("three_colorable_random", {40, 4}, s).graph);
    gs.push_back(random_band(60, 4, 3, s));
  }
  gs.push_back(Graph({7}, {}));
  gs.push_back(complete_graph(6));
  return gs;
}

std::set<std::pair<NodeId, NodeId>> id_edges(const Graph& g) {
  std::set<std::pair<NodeId, NodeId>> s;
  for (auto [u, v] : g.edges()) s.insert({g.id(u), g.id(v)});
  return s;
}

}  // namespace

TEST(Generate, CycleHasSixNodesOfDegreeTwo) {
  auto g = generate_graph("cycle", {6}, 3).graph;
  EXPECT_EQ(g.size(), 6);
  for (int v = 0; v < 6; ++v) EXPECT_EQ(g.degree(v), 2);
  EXPECT_EQ(g.edge_count(), 6u);
}

TEST(Generate, Grid3x3) {
  auto g = generate_graph("grid2d", {3, 3}, 1).graph;
  EXPECT_EQ(g.size(), 9);
  EXPECT_EQ(g.max_degree(), 4);
  EXPECT_EQ(g.edge_count(), 12u);
}

TEST(Generate, ThreeColorablePlantsAPartition) {
  auto gen = generate_graph("three_colorable_random", {50, 4}, 11);
  ASSERT_EQ(gen.planted.size(), 50u);
  for (int c : gen.planted) EXPECT_TRUE(c >= 1 && c <= 3);
  for (auto [u, v] : gen.graph.edges()) EXPECT_NE(gen.planted[u], gen.planted[v]);
  EXPECT_LE(gen.graph.max_degree(), 4);
}

TEST(Generate, DeltaColorablePlantsAPartition) {
  auto gen = generate_graph("delta_colorable_random", {120, 5}, 2);
  for (auto [u, v] : gen.graph.edges()) EXPECT_NE(gen.planted[u], gen.planted[v]);
  EXPECT_LE(oracle::palette(gen.planted), 5);
  EXPECT_EQ(gen.graph.max_degree(), 5);
}

TEST(Generate, DeterministicAndIdsArePermutation) {
  for (const char* kind : {"cycle", "path", "even_degree_random"}) {
    std::vector<int> p = std::string(kind) == "even_degree_random" ? std::vector<int>{40, 6} : std::vector<int>{40};
    auto a = generate_graph(kind, p, 99).graph;
    auto b = generate_graph(kind, p, 99).graph;
    EXPECT_TRUE(a == b);
    std::set<NodeId> ids(a.ids().begin(), a.ids().end());
    EXPECT_EQ(ids.size(), 40u);
    EXPECT_EQ(*ids.begin(), 1);
    EXPECT_EQ(*ids.rbegin(), 40);
  }
}

TEST(Generate, InflatedIdsStayBelowPolyBound) {
  GenOptions opt;
  opt.id_exponent = 2;
  auto g = generate_graph("cycle", {30}, 5, opt).graph;
  for (NodeId id : g.ids()) {
    EXPECT_GE(id, 1);
    EXPECT_LE(id, 900);
  }
}

TEST(Generate, EvenDegreeRandomHasEvenDegrees) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto g = generate_graph("even_degree_random", {25 + static_cast<int>(s), 6}, s).graph;
    for (int v = 0; v < g.size(); ++v) {
      EXPECT_EQ(g.degree(v) % 2, 0);
      EXPECT_LE(g.degree(v), 6);
    }
  }
}

TEST(Generate, BipartiteRegularPow2) {
  auto g = generate_graph("bipartite_regular_pow2", {16, 4}, 8).graph;
  for (int v = 0; v < g.size(); ++v) EXPECT_EQ(g.degree(v), 4);
  std::vector<int> side(32, -1);
  side[0] = 0;
  auto d = bfs(g, 0);
  for (auto [u, v] : g.edges()) EXPECT_NE(d[u] % 2, d[v] % 2);
}

TEST(Generate, InvalidParams) {
  EXPECT_THROW(generate_graph("even_degree_random", {20, 3}, 1), Error);
  EXPECT_THROW(generate_graph("bipartite_regular_pow2", {16, 3}, 1), Error);
  EXPECT_THROW(generate_graph("cycle", {2}, 1), Error);
  EXPECT_THROW(generate_graph("hypercube", {3}, 1), Error);
  try {
    generate_graph("bipartite_regular_pow2", {16, 6}, 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_params);
  }
}

TEST(GraphInvariants, SymmetricSortedNoLoops) {
  for (const auto& g : small_family()) {
    int maxdeg = 0;
    for (int v = 0; v < g.size(); ++v) {
      maxdeg = std::max(maxdeg, g.degree(v));
      const auto& nb = g.neighbors(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        EXPECT_NE(nb[i], v);
        EXPECT_TRUE(g.adjacent(nb[i], v));
        if (i) EXPECT_LT(g.id(nb[i - 1]), g.id(nb[i]));
      }
    }
    EXPECT_EQ(maxdeg, g.max_degree());
  }
}

TEST(GraphInvariants, RejectsMultiEdgesAndLoops) {
  EXPECT_THROW(Graph({1, 2}, {{0, 1}, {1, 0}}), Error);
  EXPECT_THROW(Graph({1, 2}, {{0, 0}}), Error);
  EXPECT_THROW(Graph({1, 1}, {}), Error);
}

TEST(Ball, PathExamples) {
  auto g = path_graph({1, 2, 3});
  auto b1 = ball(g, g.index_of(1), 1);
  ASSERT_EQ(b1.size(), 2u);
  EXPECT_EQ(g.id(b1[0].node), 1);
  EXPECT_EQ(b1[0].dist, 0);
  EXPECT_EQ(g.id(b1[1].node), 2);
  EXPECT_EQ(b1[1].dist, 1);
  auto b2 = ball(g, g.index_of(2), 1);
  ASSERT_EQ(b2.size(), 3u);
  std::map<NodeId, int> m;
  for (auto e : b2) m[g.id(e.node)] = e.dist;
  EXPECT_EQ(m, (std::map<NodeId, int>{{1, 1}, {2, 0}, {3, 1}}));
  EXPECT_EQ(ball(g, 0, 0).size(), 1u);
  EXPECT_THROW(ball(g, 7, 1), Error);
}

TEST(Ball, GridCenterRadiusTwo) {
  auto g = grid_graph(5, 5);
  EXPECT_EQ(ball(g, 12, 2).size(), 13u);
}

TEST(Ball, MatchesFloydWarshall) {
  for (const auto& g : small_family()) {
    if (g.size() > 120) continue;
    auto d = oracle::all_pairs(g);
    for (int v = 0; v < g.size(); v += 3)
      for (int r : {0, 1, 2, 5}) {
        auto b = ball(g, v, r);
        std::size_t expect = 0;
        for (int u = 0; u < g.size(); ++u) expect += d[v][u] <= r;
        ASSERT_EQ(b.size(), expect);
        for (auto e : b) EXPECT_EQ(e.dist, d[v][e.node]);
      }
  }
}

TEST(Distances, SymmetryAndTriangleInequality) {
  std::mt19937_64 rng(5);
  for (const auto& g : small_family()) {
    if (g.size() < 3) continue;
    std::uniform_int_distribution<int> pick(0, g.size() - 1);
    for (int t = 0; t < 40; ++t) {
      int a = pick(rng), b = pick(rng), c = pick(rng);
      auto da = bfs(g, a), db = bfs(g, b);
      EXPECT_EQ(da[b], db[a]);
      EXPECT_EQ(da[a], 0);
      if (da[b] >= 0 && db[c] >= 0) EXPECT_LE(da[c], da[b] + db[c]);
    }
  }
}

TEST(PowerGraph, Examples) {
  auto c6 = cycle_graph({1, 2, 3, 4, 5, 6});
  EXPECT_EQ(id_edges(power_graph(c6, 1)), id_edges(c6));
  auto p2 = power_graph(c6, 2);
  for (int v = 0; v < 6; ++v) EXPECT_EQ(p2.degree(v), 4);
  auto tri = power_graph(path_graph({1, 2, 3}), 2);
  EXPECT_EQ(tri.edge_count(), 3u);
  EXPECT_THROW(power_graph(c6, 0), Error);
}

TEST(PowerGraph, EdgesAreExactlyPairsWithinK) {
  for (const auto& g : small_family()) {
    if (g.size() > 100) continue;
    auto d = oracle::all_pairs(g);
    for (int k : {1, 2, 3}) {
      auto p = power_graph(g, k);
      std::set<std::pair<NodeId, NodeId>> expect;
      for (int u = 0; u < g.size(); ++u)
        for (int v = 0; v < g.size(); ++v)
          if (g.id(u) < g.id(v) && d[u][v] >= 1 && d[u][v] <= k) expect.insert({g.id(u), g.id(v)});
      EXPECT_EQ(id_edges(p), expect);
      EXPECT_EQ(id_edges(power_graph(power_graph(g, 1), k)), id_edges(p));
    }
  }
}

TEST(RulingSet, C8MisExample) {
  auto g = cycle_graph({1, 2, 3, 4, 5, 6, 7, 8});
  auto s = ruling_set(g, 2, 1);
  EXPECT_GE(s.size(), 3u);
  std::vector<char> in(8, 0);
  for (int v : s) in[v] = 1;
  for (auto [u, v] : g.edges()) EXPECT_FALSE(in[u] && in[v]);
  for (int v = 0; v < 8; ++v) {
    bool dom = in[v];
    for (int u : g.neighbors(v)) dom = dom || in[u];
    EXPECT_TRUE(dom);
  }
}

TEST(RulingSet, SingleNode) {
  Graph g({42}, {});
  EXPECT_EQ(ruling_set(g, 5, 9), std::vector<int>{0});
  EXPECT_THROW(ruling_set(Graph(), 2, 1), Error);
  EXPECT_THROW(ruling_set(g, 4, 1), Error);
}

TEST(RulingSet, BruteForceVerification) {
  auto check = [](const Graph& g, int alpha, int beta) {
    auto s = ruling_set(g, alpha, beta);
    auto d = oracle::all_pairs(g);
    for (int a : s)
      for (int b : s)
        if (a != b) ASSERT_GE(d[a][b], alpha);
    for (int v = 0; v < g.size(); ++v) {
      int best = oracle::kInf;
      for (int a : s) best = std::min(best, d[v][a]);
      ASSERT_LE(best, beta);
    }
  };
  check(cycle_graph({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}), 4, 4);
  for (const auto& g : small_family())
    if (g.size() <= 200)
      for (int alpha : {2, 3, 5}) check(g, alpha, alpha - 1);
}

TEST(GreedyColoring, Examples) {
  auto tri = cycle_graph({1, 2, 3});
  EXPECT_EQ(greedy_coloring(tri), (std::vector<int>{1, 2, 3}));
  auto c4 = cycle_graph({1, 2, 3, 4});
  EXPECT_EQ(greedy_coloring(c4), (std::vector<int>{1, 2, 1, 2}));
  Graph empty({3, 1, 2}, {});
  EXPECT_EQ(greedy_coloring(empty), (std::vector<int>{1, 1, 1}));
  try {
    greedy_coloring(tri, {}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::palette_exceeded);
  }
}

TEST(GreedyColoring, ProperWithinDeltaPlusOneAndHasLowerColors) {
  for (const auto& g : small_family()) {
    auto c = greedy_coloring(g);
    EXPECT_TRUE(oracle::proper(g, c));
    for (int v = 0; v < g.size(); ++v) {
      EXPECT_LE(c[v], g.max_degree() + 1);
      std::set<int> below;
      for (int u : g.neighbors(v))
        if (c[u] < c[v]) below.insert(c[u]);
      EXPECT_EQ(static_cast<int>(below.size()), c[v] - 1);
    }
  }
}

TEST(GreedyDistanceColoring, ProperOnPowerGraph) {
  for (const auto& g : small_family()) {
    if (g.size() > 150) continue;
    for (int k : {2, 3}) {
      auto c = greedy_distance_coloring(g, k);
      EXPECT_EQ(c, greedy_coloring(power_graph(g, k)));
    }
  }
}

// An interior radius-x ball of the grid holds 2x^2+2x+1 nodes, which is
// below 2^x only from x = 7 on.
TEST(Growth, GridPassesFromSeven) {
  auto g = grid_graph(10, 10);
  EXPECT_TRUE(check_growth(g, {1.0, 7}).ok);
  auto r = check_growth(g, {1.0, 4});
  ASSERT_FALSE(r.ok);
  EXPECT_EQ(r.x, 4);
  EXPECT_EQ(static_cast<std::size_t>(r.ball_size), ball(g, r.node, 4).size());
  EXPECT_TRUE(check_growth(g, {1.5, 4}).ok);
}

TEST(Growth, SingleNodePasses) { EXPECT_TRUE(check_growth(Graph({1}, {}), {0.01, 1}).ok); }

TEST(Growth, BinaryTreeFailsWithWitness) {
  auto g = complete_binary_tree(8);
  auto r = check_growth(g, {0.5, 4});
  ASSERT_FALSE(r.ok);
  EXPECT_GE(r.x, 4);
  EXPECT_EQ(static_cast<std::size_t>(r.ball_size), ball(g, r.node, r.x).size());
  EXPECT_GT(static_cast<double>(r.ball_size), std::pow(2.0, 0.5 * r.x));
}

TEST(GraphIo, RoundTrip) {
  for (const auto& g0 : small_family()) {
    Graph g = g0;
    if (g.edge_count() > 0) {
      auto [u, v] = g.edges()[0];
      g.set_label(u, v, "x1");
    }
    std::stringstream ss;
    write_graph(ss, g);
    Graph h = read_graph(ss);
    EXPECT_TRUE(g == h);
    EXPECT_EQ(h.labels().size(), g.labels().size());
  }
  std::stringstream bad("3 2 2\n1 2\n");
  EXPECT_THROW(read_graph(bad), Error);
}

TEST(Components, NumberedByFirstId) {
  auto g = disjoint_union(cycle_graph({1, 2, 3}), path_graph({1, 2}));
  auto c = components(g);
  EXPECT_EQ(c[0], c[1]);
  EXPECT_NE(c[0], c[3]);
  EXPECT_EQ(c[3], c[4]);
}
