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

// lca_cli: generate instances, run encode -> decode -> verify for a schema,
// verify supplied advice, and aggregate reports into CSV.
//
// Exit codes: 0 pass, 1 usage or unknown schema, 2 constants infeasible,
// 3 verification or other schema failure, 4 I/O or parse failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lca/experiment.hpp"

namespace {

using lca::Json;

constexpr int kUsage = 1;
constexpr int kIo = 4;

int exit_for(const lca::Error& e) {
  switch (e.kind()) {
    case lca::ErrorKind::io:
    case lca::ErrorKind::malformed:
      return kIo;
    case lca::ErrorKind::invalid_params:
      return kUsage;
    case lca::ErrorKind::constants_infeasible:
      return 2;
    default:
      return 3;
  }
}

// Inline JSON, or "@path" for a file.
Json parse_params(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw lca::Error(lca::ErrorKind::io, "cannot read " + text.substr(1));
    body.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw lca::Error(lca::ErrorKind::malformed, std::string("--params: ") + e.what());
  }
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lca::Error(lca::ErrorKind::io, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw lca::Error(lca::ErrorKind::malformed, path + ": " + e.what());
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out || !(out << text)) throw lca::Error(lca::ErrorKind::io, "cannot write " + path);
}

struct RunOptions {
  std::string config;
  std::string graph;
  std::string schema;
  std::string params;
  std::uint64_t seed = 1;
  bool seed_set = false;
  int id_exponent = 1;
  std::string out;
  std::string advice;
  std::string advice_out;
};

lca::ExperimentConfig make_config(const RunOptions& o) {
  lca::ExperimentConfig c;
  if (!o.config.empty()) c = lca::config_from_json(read_json(o.config));
  if (o.seed_set) {
    c.seed = o.seed;
    c.graph.seed = o.seed;
  }
  if (!o.graph.empty()) {
    c.graph = lca::parse_graph_spec(o.graph, c.seed);
    c.graph.id_exponent = o.id_exponent;
  }
  if (!o.schema.empty()) c.schema = o.schema;
  if (!o.params.empty()) c.params = parse_params(o.params);
  if (!o.out.empty()) c.report_out = o.out;
  if (!o.advice_out.empty()) c.advice_out = o.advice_out;
  if (c.graph.kind.empty() && c.graph.file.empty()) throw lca::Error(lca::ErrorKind::invalid_params, "--graph is required");
  if (c.schema.empty()) throw lca::Error(lca::ErrorKind::invalid_params, "--schema is required");
  return c;
}

int cmd_generate(const RunOptions& o) {
  auto spec = lca::parse_graph_spec(o.graph, o.seed);
  if (!spec.file.empty()) throw lca::Error(lca::ErrorKind::invalid_params, "generate needs a generator call");
  spec.id_exponent = o.id_exponent;
  lca::save_instance(o.out, lca::load_instance(spec));
  return 0;
}

int cmd_run(const RunOptions& o) {
  const auto c = make_config(o);
  const auto report = lca::run_experiment(c);
  emit(c.report_out, report.dump(2) + "\n");
  return lca::report_exit_code(report);
}

int cmd_verify(const RunOptions& o) {
  auto c = make_config(o);
  c.advice_out.clear();
  const auto inst = lca::load_instance(c.graph);
  std::ifstream in(o.advice);
  if (!in) throw lca::Error(lca::ErrorKind::io, "cannot read " + o.advice);
  const auto advice = lca::read_advice(in, inst.graph);
  const auto report = lca::verify_advice(c, advice);
  emit(c.report_out, report.dump(2) + "\n");
  return lca::report_exit_code(report);
}

int cmd_stats(const std::vector<std::string>& files, const std::string& out) {
  std::vector<Json> reports;
  for (const auto& f : files) reports.push_back(read_json(f));
  emit(out, lca::stats_csv(reports));
  return 0;
}

void add_run_flags(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--config", o.config, "ExperimentConfig JSON; flags override its fields");
  cmd->add_option("--graph", o.graph, "graph file or generator call kind:p1,p2,...");
  cmd->add_option("--schema", o.schema, "schema name");
  cmd->add_option("--params", o.params, "schema parameters as JSON, or @file");
  cmd->add_option("--id-exponent", o.id_exponent, "IDs drawn from 1..n^k for generated graphs");
  cmd->add_option("--out", o.out, "report path (stdout when absent)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph problems with advice: encode, decode and verify experiments"};
  app.require_subcommand(1);
  RunOptions o;
  std::vector<std::string> reports;
  std::string stats_out;

  auto* gen = app.add_subcommand("generate", "write a generated graph file");
  gen->add_option("--graph", o.graph, "generator call kind:p1,p2,...")->required();
  gen->add_option("--id-exponent", o.id_exponent, "IDs drawn from 1..n^k");
  gen->add_option("--out", o.out, "graph file")->required();

  auto* run = app.add_subcommand("run", "encode, decode with the LOCAL simulator and verify");
  add_run_flags(run, o);
  run->add_option("--advice-out", o.advice_out, "write the encoded advice");

  auto* verify = app.add_subcommand("verify", "decode supplied advice and check every node");
  add_run_flags(verify, o);
  verify->add_option("--advice", o.advice, "advice file (lines 'id bits')")->required();

  auto* stats = app.add_subcommand("stats", "aggregate reports into CSV");
  stats->add_option("reports", reports, "report JSON files")->required();
  stats->add_option("--out", stats_out, "CSV path (stdout when absent)");

  for (auto* cmd : {gen, run, verify})
    cmd->add_option_function<std::uint64_t>(
        "--seed",
        [&o](const std::uint64_t& s) {
          o.seed = s;
          o.seed_set = true;
        },
        "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(o);
    if (run->parsed()) return cmd_run(o);
    if (verify->parsed()) return cmd_verify(o);
    return cmd_stats(reports, stats_out);
  } catch (const lca::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
