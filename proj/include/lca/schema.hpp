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

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lca/advice.hpp"
#include "lca/local.hpp"

namespace lca {

struct ComposableParams {
  double c = 1.0;
  int gamma = 2;
  int alpha = 16;
};

struct SchemaMeta {
  AdviceKind kind = AdviceKind::variable;
  // Per-node bit bound.
  int beta = 0;
  // Composable schemas only: at most gamma0 bit-holders per alpha-ball.
  bool composable = false;
  int gamma0 = 0;
  ComposableParams params;
  // Threshold A(c, gamma) on alpha.
  std::function<double(double, int)> threshold;
};

// Encoder: whole-graph oracle, given the solutions of the problems this one
// depends on. Decoder: a LOCAL algorithm reading advice and the same inputs.
struct Schema {
  std::string name;
  SchemaMeta meta;
  int inputs = 0;
  std::function<Advice(const Graph&, const std::vector<Solution>&)> encode;
  LocalAlgorithm decode;
};

// Encode, then decode with run_local.
struct Roundtrip {
  Advice advice;
  RunResult run;
};
Roundtrip roundtrip(const Schema& s, const Graph& g, const std::vector<Solution>& given = {});

// Bit-holders per alpha-ball, by exhaustive scan. Returns the largest count.
int max_holders_per_ball(const Graph& g, const Advice& a, int alpha);

// deps[i] lists the slots whose solutions slot i consumes (0-based).
struct DependencyDag {
  int k = 0;
  std::vector<std::vector<int>> deps;
};

// Topological order (dependencies first, ties by index); throws
// invalid_params when the DAG has a cycle.
std::vector<int> topological_order(const DependencyDag& dag);

struct ComposeOptions {
  ComposableParams params;
  // Check |l_i(v)| <= c*alpha/(2k*gamma)^3 on every slot string.
  bool check_slot_bound = true;
};

// Composed schema; its decoder outputs the solution of slot `output_slot`
// (default: the last slot).
Schema compose_schemas(const std::vector<Schema>& schemas, const DependencyDag& dag,
                       const ComposeOptions& opt = {}, int output_slot = -1);

// Decodes every slot of a composed advice assignment and returns all slot
// solutions (used by tests and the CLI).
std::vector<Solution> decode_all_slots(const std::vector<Schema>& schemas, const DependencyDag& dag,
                                       const Graph& g, const Advice& composed);

struct OneBitOptions {
  ComposableParams params;
  // Largest component solved by brute force when a cluster has no ray.
  int brute_force_cap = 10000;
};

// Converts a composable schema to uniform 1-bit advice.
Schema to_one_bit(const Schema& wrapped, const OneBitOptions& opt);

// Geometry constants of the 1-bit conversion.
struct OneBitGeometry {
  int d = 0;     // absorption distance alpha/(10 gamma)
  int d4 = 0;    // d/4: reach of a cluster's ray region
  int d8 = 0;    // d/8: ray length
  int radius_extra = 0;
};
OneBitGeometry one_bit_geometry(const ComposableParams& p);

}  // namespace lca
