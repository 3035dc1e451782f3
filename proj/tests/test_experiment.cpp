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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "lca/experiment.hpp"
#include "lca/generators.hpp"

using namespace lca;

namespace {

ExperimentConfig config(const std::string& graph, const std::string& schema, Json params = Json::object(),
                        std::uint64_t seed = 1) {
  ExperimentConfig c;
  c.seed = seed;
  c.graph = parse_graph_spec(graph, seed);
  c.schema = schema;
  c.params = std::move(params);
  return c;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("lca_test_" + name);
}

// Every edge oriented exactly once and |in - out| <= 1.
bool valid_orientation(const Graph& g, const Solution& s) {
  if (static_cast<int>(s.size()) != g.size()) return false;
  for (int v = 0; v < g.size(); ++v) {
    if (static_cast<int>(s[v].edge.size()) != g.degree(v)) return false;
    int out = 0;
    for (int j = 0; j < g.degree(v); ++j) {
      const int u = g.neighbors(v)[j];
      if (s[v].edge[j] + s[u].edge[g.slot(u, v)] != 1) return false;
      out += s[v].edge[j];
    }
    if (std::abs(2 * out - g.degree(v)) > 1) return false;
  }
  return true;
}

}  // namespace

TEST(GraphSpec, GeneratorCallsAndFiles) {
  auto s = parse_graph_spec("grid2d:4,5", 7);
  EXPECT_EQ(s.kind, "grid2d");
  EXPECT_EQ(s.params, (std::vector<int>{4, 5}));
  EXPECT_EQ(s.seed, 7u);
  EXPECT_EQ(parse_graph_spec("dir/g.txt", 1).file, "dir/g.txt");
  EXPECT_THROW(parse_graph_spec("cycle:x", 1), Error);
  EXPECT_THROW(parse_graph_spec(":3", 1), Error);
}

TEST(Config, RoundTrips) {
  auto c = config("cycle:12", "orientation", Json{{"alpha", 16}}, 4);
  c.advice_out = "a.txt";
  const auto j = config_to_json(c);
  EXPECT_EQ(config_to_json(config_from_json(j)), j);
  EXPECT_THROW(config_from_json(Json{{"schema", "x"}}), Error);
}

TEST(Instance, PlantedSidecarRoundTrips) {
  Instance inst;
  auto gen = generate_graph("three_colorable_random", {40, 4}, 3);
  inst.graph = gen.graph;
  inst.planted = gen.planted;
  const auto path = temp_path("planted.graph");
  save_instance(path.string(), inst);
  GraphSpec s;
  s.file = path.string();
  auto back = load_instance(s);
  EXPECT_EQ(back.graph, inst.graph);
  ASSERT_EQ(back.planted.size(), inst.planted.size());
  for (int v = 0; v < inst.graph.size(); ++v)
    EXPECT_EQ(back.planted[back.graph.index_of(inst.graph.id(v))], inst.planted[v]);
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".planted");
}

TEST(Run, OneBitOrientationOnC6) {
  auto r = run_experiment(config("cycle:6", "orientation-1bit"));
  EXPECT_EQ(r["verdict"], "pass");
  EXPECT_EQ(r["advice"]["sparsity"], 0.0);
  EXPECT_EQ(r["advice"]["max_bits"], 1);
  EXPECT_EQ(r["version"], kReportVersion);
  EXPECT_EQ(report_exit_code(r), 0);
}

TEST(Run, EdgeSubsetOnK5) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto r = run_experiment(config("complete:5", "edge-subset", Json::object(), seed));
    EXPECT_EQ(r["verdict"], "pass");
    EXPECT_LE(r["advice"]["max_bits"].get<int>(), 3);
  }
}

TEST(Run, EdgeSubsetBitsFollowDegree) {
  for (int d = 2; d <= 8; ++d) {
    auto r = run_experiment(config("random_bounded_degree:60," + std::to_string(d) + ",200", "edge-subset",
                                   Json::object(), d));
    EXPECT_EQ(r["verdict"], "pass");
    EXPECT_LE(r["advice"]["max_bits_over_half_degree"].get<int>(), 1);
  }
}

TEST(Run, RadiusIndependentOfN) {
  std::vector<int> radii;
  for (int n : {100, 200, 400}) {
    auto r = run_experiment(config("cycle:" + std::to_string(n), "orientation"));
    ASSERT_EQ(r["verdict"], "pass");
    radii.push_back(r["locality"]["declared_radius"].get<int>());
  }
  EXPECT_EQ(radii[0], radii[1]);
  EXPECT_EQ(radii[1], radii[2]);
}

TEST(Run, ReportsAreDeterministic) {
  auto c = config("three_colorable_band:300,4", "three-coloring", Json::object(), 2);
  EXPECT_EQ(canonical_report(run_experiment(c)), canonical_report(run_experiment(c)));
  auto d = config("cycle:100", "orientation", Json{{"r", 40}}, 5);
  EXPECT_EQ(canonical_report(run_experiment(d)), canonical_report(run_experiment(d)));
}

TEST(Run, ExitCodesPartitionOutcomes) {
  EXPECT_EQ(report_exit_code(run_experiment(config("cycle:6", "orientation"))), 0);
  EXPECT_EQ(report_exit_code(run_experiment(config("cycle:6", "no-such-schema"))), 1);
  EXPECT_EQ(report_exit_code(run_experiment(config("cycle:6", "orientation", Json{{"bogus", 1}}))), 1);
  EXPECT_EQ(report_exit_code(run_experiment(config("grid2d:10,10", "orientation-1bit", Json{{"alpha", 16}}))), 2);
  auto odd = run_experiment(config("cycle:7", "delta-coloring"));
  EXPECT_EQ(odd["verdict"], "fail");
  EXPECT_EQ(report_exit_code(odd), 3);
  EXPECT_EQ(report_exit_code(run_experiment(config("missing/graph.txt", "orientation"))), 4);
}

TEST(Run, ThreeColoringReportsEncoderChecks) {
  auto r = run_experiment(config("three_colorable_band:400,5", "three-coloring"));
  ASSERT_EQ(r["verdict"], "pass");
  EXPECT_FALSE(r["encoder"]["checks"].empty());
  EXPECT_TRUE(r["schema"]["params"]["use_planted"].get<bool>());
  EXPECT_EQ(r["advice"]["max_bits"], 1);
}

TEST(Run, DeltaColoringReportsStages) {
  auto r = run_experiment(config("delta_colorable_random:200,4", "delta-coloring"));
  ASSERT_EQ(r["verdict"], "pass");
  ASSERT_EQ(r["stages"].size(), 4u);
  for (const auto& st : r["stages"]) EXPECT_TRUE(st["ok"].get<bool>());
}

TEST(Run, LclPicksSmallestFeasibleR) {
  auto r = run_experiment(config("cycle:400", "lcl", Json{{"problem", "3-coloring"}}));
  ASSERT_EQ(r["verdict"], "pass");
  EXPECT_EQ(r["schema"]["params"]["r"], 2);
  EXPECT_EQ(r["advice"]["kind"], "uniform-fixed");
}

TEST(ConstantsProfile, EnvironmentThenParams) {
  const auto path = temp_path("profile.json");
  {
    std::ofstream out(path);
    out << R"({"profile": "desk", "constants": {"marker_spacing": 20}})";
  }
  setenv(kConstantsProfileEnv, path.c_str(), 1);
  EXPECT_EQ(coloring_constants_from(Json::object(), 4).marker_spacing, 20);
  EXPECT_EQ(coloring_constants_from(Json{{"constants", {{"marker_spacing", 30}}}}, 4).marker_spacing, 30);
  EXPECT_THROW(coloring_constants_from(Json{{"constants", {{"nope", 1}}}}, 4), Error);
  setenv(kConstantsProfileEnv, (path.string() + ".missing").c_str(), 1);
  EXPECT_THROW(coloring_constants_from(Json::object(), 4), Error);
  unsetenv(kConstantsProfileEnv);
  std::filesystem::remove(path);
  const auto j = coloring_constants_to_json(desk_coloring_constants(4));
  EXPECT_EQ(j["profile"], "desk");
  EXPECT_TRUE(j.contains("relay_spacing"));
}

TEST(Verify, HonestAdviceIsAccepted) {
  for (const auto& [graph, schema, params] :
       std::vector<std::tuple<std::string, std::string, Json>>{{"cycle:100", "orientation", Json{{"r", 40}}},
                                                               {"cycle:200", "two-coloring", Json::object()},
                                                               {"three_colorable_band:300,4", "three-coloring",
                                                                Json::object()}}) {
    auto c = config(graph, schema, params);
    auto inst = load_instance(c.graph);
    auto s = make_setup(schema, params, inst, c.seed);
    auto r = verify_advice(s, inst, s.encode());
    EXPECT_EQ(r["verdict"], "pass") << schema;
    EXPECT_EQ(r["rejecting_count"], 0);
  }
}

TEST(Verify, AllZeroAdviceOnLongCycleFails) {
  auto c = config("cycle:300", "orientation", Json{{"r", 40}});
  auto inst = load_instance(c.graph);
  auto s = make_setup(c.schema, c.params, inst, c.seed);
  auto r = verify_advice(s, inst, Advice(inst.graph.size()));
  EXPECT_EQ(r["verdict"], "fail");
  EXPECT_EQ(r["failure"]["kind"], "decode-failed");
  EXPECT_EQ(report_exit_code(r), 3);
}

TEST(Verify, PassImpliesValidUnderSingleBitFlips) {
  auto c = config("cycle:100", "orientation", Json{{"r", 40}}, 3);
  auto inst = load_instance(c.graph);
  auto s = make_setup(c.schema, c.params, inst, c.seed);
  const auto honest = s.encode();
  std::vector<std::pair<int, int>> positions;
  for (int v = 0; v < honest.size(); ++v)
    for (int i = 0; i < static_cast<int>(honest.bits[v].size()); ++i) positions.emplace_back(v, i);
  ASSERT_FALSE(positions.empty());
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    auto a = honest;
    auto [v, i] = positions[rng() % positions.size()];
    a.bits[v][i] = a.bits[v][i] == '0' ? '1' : '0';
    auto r = verify_advice(s, inst, a);
    if (r["verdict"] != "pass") continue;
    EXPECT_TRUE(valid_orientation(inst.graph, run_local(inst.graph, a, s.decoder).out));
  }
}

TEST(Stats, OneRowPerReport) {
  auto r = run_experiment(config("cycle:6", "orientation-1bit"));
  const auto csv = stats_csv({r});
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_NE(csv.find("orientation-1bit,cycle:6,6,6,2"), std::string::npos);
  EXPECT_THROW(stats_csv({}), Error);
}
