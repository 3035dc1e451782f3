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

// Experiment harness behind the command line tool: instance loading, the
// schema catalog with one verification predicate per schema, encode ->
// decode -> verify runs, advice verification and CSV aggregation.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lca/coloring.hpp"
#include "lca/schema.hpp"

namespace lca {

using Json = nlohmann::json;

inline constexpr int kReportVersion = 1;

// Environment variable naming a JSON constants profile applied to the
// coloring schemas before --params.
inline constexpr const char* kConstantsProfileEnv = "LCA_CONSTANTS_PROFILE";

// A generator call ("kind:p1,p2,...") or a graph file.
struct GraphSpec {
  std::string kind;
  std::vector<int> params;
  std::uint64_t seed = 1;
  int id_exponent = 1;
  std::string file;
};

// Text that names an existing file, or contains '/' or '.' but no ':', is a
// file; anything else is parsed as a generator call. Throws invalid_params on a malformed call.
GraphSpec parse_graph_spec(const std::string& text, std::uint64_t seed);

struct ExperimentConfig {
  GraphSpec graph;
  std::string schema;
  Json params = Json::object();
  std::uint64_t seed = 1;
  // Output paths; empty means not written.
  std::string advice_out;
  std::string report_out;
};

Json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const Json& j);

struct Instance {
  Graph graph;
  // Planted coloring by node index; empty when unknown.
  std::vector<int> planted;
};

// Generates or reads the graph. A file "<path>.planted" with lines
// "id color" next to a graph file supplies the planted coloring.
Instance load_instance(const GraphSpec& s);
// Writes the graph file and, when a coloring is planted, its sidecar.
void save_instance(const std::string& path, const Instance& inst);

std::vector<std::string> schema_names();

// The edge-subset schema's input: every edge independently with
// probability density, as (smaller index, larger index) pairs.
std::set<std::pair<int, int>> random_edge_subset(const Graph& g, double density, std::uint64_t seed);

// A runnable schema: encoder on the instance, LOCAL decoder, and the
// verification predicate returning the rejecting nodes.
struct SchemaSetup {
  std::string name;
  SchemaMeta meta;
  // Resolved parameters, including the active constants profile.
  Json resolved;
  std::function<Advice()> encode;
  LocalAlgorithm decoder;
  std::function<std::vector<int>(const Solution&)> reject;
  // Encoder diagnostics, filled by encode when the schema has any.
  std::shared_ptr<Json> notes = std::make_shared<Json>();
  // Optional per-stage checks of a pipeline on the encoded advice.
  std::function<Json(const Advice&)> stages;
};

// Throws invalid_params for an unknown schema or bad parameters, io when
// the constants profile cannot be read. `inst` must outlive the setup.
SchemaSetup make_setup(const std::string& schema, const Json& params, const Instance& inst, std::uint64_t seed);

// Coloring constants from a profile JSON ({"profile": "desk"|"paper",
// "constants": {...}} or flat overrides), then from params.
ColoringConstants coloring_constants_from(const Json& params, int delta);
Json coloring_constants_to_json(const ColoringConstants& k);

// Report of one run. "timing" holds wall-clock values and is the only
// nondeterministic part.
Json run_experiment(const ExperimentConfig& c);

// Runs the decoder on supplied advice and applies the predicate at every
// node. Verdict "pass" only when decoding succeeds and no node rejects.
Json verify_advice(const ExperimentConfig& c, const Advice& advice);
Json verify_advice(const SchemaSetup& s, const Instance& inst, const Advice& advice);

// Report without its timing, serialized canonically.
std::string canonical_report(const Json& report);

// Process exit code of a report: 0 pass, 1 bad parameters or unknown
// schema, 2 constants infeasible, 3 verification or other schema failure,
// 4 I/O or parse failure.
int report_exit_code(const Json& report);

// CSV over reports, one row each. Throws invalid_params on empty input.
std::string stats_csv(const std::vector<Json>& reports);

}  // namespace lca
