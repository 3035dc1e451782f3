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

#include "lca/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include "lca/generators.hpp"
#include "lca/lcl.hpp"
#include "lca/orientation.hpp"

namespace lca {

namespace {

constexpr int kMaxListedNodes = 20;

Error bad_params(const std::string& what) { return Error(ErrorKind::invalid_params, what); }

// Rejects keys outside `allowed`.
void check_keys(const Json& j, const std::vector<std::string>& allowed, const std::string& schema) {
  if (!j.is_object()) throw bad_params("params must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw bad_params("unknown parameter '" + key + "' for schema " + schema);
}

template <class T>
T get(const Json& j, const char* key, T def) {
  if (!j.contains(key)) return def;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw bad_params(std::string("parameter '") + key + "' has the wrong type");
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Json id_list(const Graph& g, const std::vector<int>& nodes) {
  Json out = Json::array();
  for (int i = 0; i < static_cast<int>(nodes.size()) && i < kMaxListedNodes; ++i) out.push_back(g.id(nodes[i]));
  return out;
}

std::vector<int> node_values(const Solution& s) {
  std::vector<int> c;
  c.reserve(s.size());
  for (const auto& o : s) c.push_back(o.node);
  return c;
}

// ------------------------------------------------------------ predicates

bool sized(const Graph& g, const Solution& s) { return static_cast<int>(s.size()) == g.size(); }

std::vector<int> all_nodes(const Graph& g) {
  std::vector<int> v(g.size());
  for (int i = 0; i < g.size(); ++i) v[i] = i;
  return v;
}

// Proper coloring with colors in 1..palette (0..palette-1 when zero_based).
std::vector<int> coloring_rejects(const Graph& g, const Solution& s, long palette, bool zero_based = false) {
  if (!sized(g, s)) return all_nodes(g);
  const long lo = zero_based ? 0 : 1, hi = zero_based ? palette - 1 : palette;
  std::vector<int> bad;
  for (int v = 0; v < g.size(); ++v) {
    bool ok = s[v].node >= lo && s[v].node <= hi;
    for (int u : g.neighbors(v)) ok = ok && s[u].node != s[v].node;
    if (!ok) bad.push_back(v);
  }
  return bad;
}

// Both halves of every edge agree on the direction, and |in - out| <= 1.
std::vector<int> orientation_rejects(const Graph& g, const Solution& s) {
  if (!sized(g, s)) return all_nodes(g);
  std::vector<int> bad;
  for (int v = 0; v < g.size(); ++v) {
    bool ok = static_cast<int>(s[v].edge.size()) == g.degree(v);
    int out = 0;
    for (int j = 0; ok && j < g.degree(v); ++j) {
      const int u = g.neighbors(v)[j];
      const int e = s[v].edge[j];
      ok = (e == 0 || e == 1) && static_cast<int>(s[u].edge.size()) == g.degree(u) &&
           s[u].edge[g.slot(u, v)] + e == 1;
      out += e;
    }
    if (!ok || std::abs(2 * out - g.degree(v)) > 1) bad.push_back(v);
  }
  return bad;
}

// Proper edge coloring on colors 1..delta covering every color at v.
std::vector<int> edge_coloring_rejects(const Graph& g, const Solution& s, int delta) {
  if (!sized(g, s)) return all_nodes(g);
  std::vector<int> bad;
  for (int v = 0; v < g.size(); ++v) {
    bool ok = static_cast<int>(s[v].edge.size()) == g.degree(v) && g.degree(v) == delta;
    std::vector<char> seen(delta + 1, 0);
    for (int j = 0; ok && j < g.degree(v); ++j) {
      const int u = g.neighbors(v)[j];
      const int c = s[v].edge[j];
      ok = c >= 1 && c <= delta && !seen[c] && static_cast<int>(s[u].edge.size()) == g.degree(u) &&
           s[u].edge[g.slot(u, v)] == c;
      if (ok) seen[c] = 1;
    }
    if (!ok) bad.push_back(v);
  }
  return bad;
}

// Both halves agree with membership in x.
std::vector<int> subset_rejects(const Graph& g, const Solution& s, const EdgeSubset& x) {
  if (!sized(g, s)) return all_nodes(g);
  std::vector<int> bad;
  for (int v = 0; v < g.size(); ++v) {
    bool ok = static_cast<int>(s[v].edge.size()) == g.degree(v);
    for (int j = 0; ok && j < g.degree(v); ++j) {
      const int u = g.neighbors(v)[j];
      const int want = x.count({std::min(u, v), std::max(u, v)}) ? 1 : 0;
      ok = s[v].edge[j] == want && static_cast<int>(s[u].edge.size()) == g.degree(u) &&
           s[u].edge[g.slot(u, v)] == want;
    }
    if (!ok) bad.push_back(v);
  }
  return bad;
}

// ------------------------------------------------------------ parameters

const std::vector<std::string> kOrientKeys = {"c",    "gamma",           "alpha",           "r",
                                              "r_cap", "retry_budget",   "exhaustive_limit", "mode",
                                              "max_degree", "brute_force_cap", "composed", "check_slot_bound",
                                              "density", "delta"};

OrientationParams orient_params(const Json& j, int default_alpha, std::uint64_t seed) {
  OrientationParams p;
  p.params.c = get(j, "c", 1.0);
  p.params.gamma = get(j, "gamma", 2);
  p.params.alpha = get(j, "alpha", default_alpha);
  p.r = get(j, "r", 0L);
  p.r_cap = get(j, "r_cap", p.r_cap);
  p.seed = seed;
  p.retry_budget = get(j, "retry_budget", p.retry_budget);
  p.exhaustive_limit = get(j, "exhaustive_limit", p.exhaustive_limit);
  const auto mode = get<std::string>(j, "mode", "automatic");
  if (mode == "automatic") {
    p.mode = ShiftMode::automatic;
  } else if (mode == "random") {
    p.mode = ShiftMode::random;
  } else if (mode == "exhaustive") {
    p.mode = ShiftMode::exhaustive;
  } else {
    throw bad_params("mode must be automatic, random or exhaustive");
  }
  if (p.params.alpha < 1 || p.params.gamma < 1 || p.params.c <= 0) throw bad_params("need c > 0, gamma >= 1, alpha >= 1");
  return p;
}

Json orient_json(const OrientationParams& p, int max_degree) {
  static const char* modes[] = {"automatic", "random", "exhaustive"};
  return Json{{"c", p.params.c},
              {"gamma", p.params.gamma},
              {"alpha", p.params.alpha},
              {"r", orientation_r(p, max_degree)},
              {"r_cap", p.r_cap},
              {"seed", p.seed},
              {"retry_budget", p.retry_budget},
              {"exhaustive_limit", p.exhaustive_limit},
              {"mode", modes[static_cast<int>(p.mode)]},
              {"max_degree", max_degree}};
}

template <class K, class F>
void visit_constants(K& k, F&& f) {
  f("cluster_radius", k.cluster_radius);
  f("high_degree", k.high_degree);
  f("broken_volume", k.broken_volume);
  f("max_bucket", k.max_bucket);
  f("cluster_reach", k.cluster_reach);
  f("far_distance", k.far_distance);
  f("relay_spacing", k.relay_spacing);
  f("marker_spacing", k.marker_spacing);
  f("plan_radius", k.plan_radius);
  f("small_diameter", k.small_diameter);
  f("ruling_spacing", k.ruling_spacing);
  f("group_radius", k.group_radius);
  f("group_candidates", k.group_candidates);
  f("candidate_spacing", k.candidate_spacing);
  f("path_reach", k.path_reach);
  f("read_radius", k.read_radius);
  f("search_radius", k.search_radius);
  f("resample_factor", k.resample_factor);
  f("exhaustive_limit", k.exhaustive_limit);
}

void apply_overrides(ColoringConstants& k, const Json& o) {
  if (!o.is_object()) throw bad_params("constants must be a JSON object");
  std::set<std::string> used;
  visit_constants(k, [&](const char* name, auto& field) {
    if (!o.contains(name)) return;
    try {
      field = o.at(name).get<std::remove_reference_t<decltype(field)>>();
    } catch (const nlohmann::json::exception&) {
      throw bad_params(std::string("constant '") + name + "' has the wrong type");
    }
    used.insert(name);
  });
  for (const auto& [key, value] : o.items())
    if (!used.count(key)) throw bad_params("unknown constant '" + key + "'");
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::malformed, path + ": " + e.what());
  }
}

// Splits a profile into its name and constant overrides.
std::pair<std::string, Json> split_profile(const Json& j) {
  if (!j.is_object()) throw bad_params("a constants profile must be a JSON object");
  const std::string name = get<std::string>(j, "profile", "");
  Json overrides = Json::object();
  if (j.contains("constants")) {
    overrides = j.at("constants");
  } else {
    for (const auto& [key, value] : j.items())
      if (key != "profile") overrides[key] = value;
  }
  return {name, overrides};
}

// ------------------------------------------------------------ LCL setup

LclProblem lcl_problem_from(const Json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "3-coloring") return coloring_lcl(3);
    if (name == "mis") return mis_lcl();
    if (name == "sinkless") return sinkless_orientation_lcl();
    if (name.size() > 9 && name.substr(name.size() - 9) == "-coloring") {
      const int k = std::atoi(name.c_str());
      if (k >= 1) return coloring_lcl(k);
    }
    throw bad_params("unknown LCL '" + name + "'");
  }
  if (!j.is_object() || !j.contains("alphabet") || !j.contains("accept"))
    throw bad_params("a truth-table LCL needs alphabet and accept");
  std::vector<std::pair<int, std::vector<int>>> accept;
  try {
    for (const auto& row : j.at("accept")) accept.emplace_back(row.at(0).get<int>(), row.at(1).get<std::vector<int>>());
    return truth_table_lcl(j.value("name", std::string("truth-table")), j.at("alphabet").get<int>(), accept);
  } catch (const nlohmann::json::exception& e) {
    throw bad_params(std::string("truth-table LCL: ") + e.what());
  }
}

LclConstants lcl_constants_for(const Json& j, int r, int max_degree) {
  const int delta = get(j, "delta", std::max(2, max_degree));
  const auto growth = get<std::string>(j, "growth", max_degree <= 2 ? "linear" : "quadratic");
  const double c = std::log2(1.0 + std::pow(static_cast<double>(delta), -r)) / (3.0 * r);
  int x0 = get(j, "x0", 0);
  if (x0 <= 0) {
    if (growth == "linear") {
      x0 = family_x0([](int x) { return 2.0 * x + 1; }, c);
    } else if (growth == "quadratic") {
      x0 = family_x0([](int x) { return 2.0 * x * x + 2.0 * x + 1; }, c);
    } else {
      throw bad_params("growth must be linear or quadratic unless x0 is given");
    }
  }
  auto k = make_lcl_constants(r, delta, x0);
  k.search_cap = get(j, "search_cap", k.search_cap);
  k.sparsity_eps = get(j, "sparsity_eps", k.sparsity_eps);
  return k;
}

Json lcl_constants_json(const LclConstants& k) {
  return Json{{"r", k.r}, {"delta", k.delta}, {"c", k.c}, {"x0", k.x0}, {"x", k.x}, {"y", k.y()},
              {"palette_bound", k.palette_bound}, {"search_cap", k.search_cap}, {"sparsity_eps", k.sparsity_eps}};
}

int solution_max(const Solution& s) {
  int m = 0;
  for (const auto& o : s) m = std::max(m, o.node);
  return m;
}

}  // namespace

// ------------------------------------------------------------ instances

GraphSpec parse_graph_spec(const std::string& text, std::uint64_t seed) {
  GraphSpec s;
  s.seed = seed;
  std::error_code ec;
  // Existing files, and names that look like paths, are files.
  const bool pathlike = text.find(':') == std::string::npos && text.find_first_of("/.") != std::string::npos;
  if (pathlike || std::filesystem::is_regular_file(text, ec)) {
    s.file = text;
    return s;
  }
  const auto colon = text.find(':');
  s.kind = text.substr(0, colon);
  if (s.kind.empty()) throw bad_params("graph spec needs a generator kind or an existing file: '" + text + "'");
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        s.params.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw bad_params("graph parameter '" + item + "' is not an integer");
      }
    }
  }
  return s;
}

Json config_to_json(const ExperimentConfig& c) {
  Json g{{"seed", c.graph.seed}, {"id_exponent", c.graph.id_exponent}};
  if (!c.graph.file.empty()) {
    g["file"] = c.graph.file;
  } else {
    g["kind"] = c.graph.kind;
    g["params"] = c.graph.params;
  }
  Json j{{"graph", g}, {"schema", c.schema}, {"params", c.params}, {"seed", c.seed}};
  if (!c.advice_out.empty()) j["advice_out"] = c.advice_out;
  if (!c.report_out.empty()) j["report_out"] = c.report_out;
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  try {
    const auto& g = j.at("graph");
    c.graph.seed = g.value("seed", std::uint64_t{1});
    c.graph.id_exponent = g.value("id_exponent", 1);
    c.graph.file = g.value("file", std::string());
    c.graph.kind = g.value("kind", std::string());
    c.graph.params = g.value("params", std::vector<int>{});
    c.schema = j.at("schema").get<std::string>();
    c.params = j.value("params", Json::object());
    c.seed = j.value("seed", std::uint64_t{1});
    c.advice_out = j.value("advice_out", std::string());
    c.report_out = j.value("report_out", std::string());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::malformed, std::string("config: ") + e.what());
  }
  if (c.graph.file.empty() && c.graph.kind.empty()) throw Error(ErrorKind::malformed, "config: graph needs kind or file");
  return c;
}

Instance load_instance(const GraphSpec& s) {
  Instance inst;
  if (s.file.empty()) {
    GenOptions opt;
    opt.id_exponent = s.id_exponent;
    auto gen = generate_graph(s.kind, s.params, s.seed, opt);
    inst.graph = std::move(gen.graph);
    inst.planted = std::move(gen.planted);
    return inst;
  }
  std::ifstream in(s.file);
  if (!in) throw Error(ErrorKind::io, "cannot read " + s.file);
  inst.graph = read_graph(in);
  std::ifstream pl(s.file + ".planted");
  if (pl) {
    inst.planted.assign(inst.graph.size(), 0);
    NodeId id;
    int color;
    while (pl >> id >> color) {
      if (!inst.graph.contains(id)) throw Error(ErrorKind::malformed, "planted coloring names unknown node");
      inst.planted[inst.graph.index_of(id)] = color;
    }
    if (std::count(inst.planted.begin(), inst.planted.end(), 0))
      throw Error(ErrorKind::malformed, "planted coloring misses nodes");
  }
  return inst;
}

void save_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path);
  write_graph(out, inst.graph);
  if (inst.planted.empty()) return;
  std::ofstream pl(path + ".planted");
  if (!pl) throw Error(ErrorKind::io, "cannot write " + path + ".planted");
  for (int v : inst.graph.by_id()) pl << inst.graph.id(v) << ' ' << inst.planted[v] << '\n';
}

// ------------------------------------------------------------ constants

Json coloring_constants_to_json(const ColoringConstants& k) {
  Json j{{"profile", k.profile}, {"delta", k.delta}, {"alpha", k.alpha}};
  ColoringConstants copy = k;
  visit_constants(copy, [&](const char* name, auto& field) { j[name] = field; });
  return j;
}

ColoringConstants coloring_constants_from(const Json& params, int delta) {
  std::string name = "desk";
  std::vector<Json> layers;
  if (const char* path = std::getenv(kConstantsProfileEnv); path && *path) {
    auto [n, o] = split_profile(read_json_file(path));
    if (!n.empty()) name = n;
    layers.push_back(o);
  }
  if (params.contains("profile")) name = get<std::string>(params, "profile", name);
  if (params.contains("constants")) layers.push_back(params.at("constants"));
  const int alpha = get(params, "alpha", 2);
  ColoringConstants k;
  if (name == "desk") {
    k = desk_coloring_constants(delta, alpha);
  } else if (name == "paper") {
    k = paper_coloring_constants(delta, alpha);
  } else {
    throw bad_params("constants profile must be desk or paper");
  }
  for (const auto& o : layers) apply_overrides(k, o);
  return k;
}

// ------------------------------------------------------------ catalog

std::vector<std::string> schema_names() {
  return {"orientation",  "orientation-1bit", "two-coloring",  "splitting",      "edge-coloring",
          "edge-subset",  "lcl",              "initial-coloring", "delta-coloring", "three-coloring"};
}

std::set<std::pair<int, int>> random_edge_subset(const Graph& g, double density, std::uint64_t seed) {
  std::set<std::pair<int, int>> x;
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  for (auto [u, v] : g.edges())
    if (coin(rng)) x.insert({std::min(u, v), std::max(u, v)});
  return x;
}

SchemaSetup make_setup(const std::string& name, const Json& params, const Instance& inst, std::uint64_t seed) {
  const Graph* g = &inst.graph;
  const int maxdeg = g->max_degree();
  SchemaSetup s;
  s.name = name;
  auto from_schema = [&](const Schema& sch) {
    s.meta = sch.meta;
    s.decoder = sch.decode;
    auto enc = sch.encode;
    s.encode = [enc, g]() { return enc(*g, {}); };
  };

  if (name == "orientation" || name == "orientation-1bit" || name == "two-coloring" || name == "splitting" ||
      name == "edge-coloring" || name == "edge-subset") {
    check_keys(params, kOrientKeys, name);
    const bool one_bit = name == "orientation-1bit" || name == "edge-subset";
    // Edge coloring with three splitting rounds (delta 8 and up) needs a
    // larger alpha for the per-slot bound.
    const int default_alpha = name == "edge-coloring" ? (maxdeg > 4 ? 96000 : 12000) : one_bit ? 8320 : 16;
    const auto p = orient_params(params, default_alpha, seed);
    const int d = get(params, "max_degree", maxdeg);
    s.resolved = orient_json(p, d);
    OneBitOptions ob;
    ob.params = p.params;
    ob.brute_force_cap = get(params, "brute_force_cap", ob.brute_force_cap);
    ComposeOptions opt;
    opt.params = p.params;
    opt.check_slot_bound = get(params, "check_slot_bound", false);
    if (name == "orientation") {
      from_schema(orientation_schema(p, d));
      s.reject = [g](const Solution& out) { return orientation_rejects(*g, out); };
    } else if (name == "orientation-1bit") {
      s.resolved["brute_force_cap"] = ob.brute_force_cap;
      from_schema(to_one_bit(orientation_schema(p, d), ob));
      s.reject = [g](const Solution& out) { return orientation_rejects(*g, out); };
    } else if (name == "two-coloring") {
      from_schema(two_coloring_schema(p.params));
      s.reject = [g](const Solution& out) { return coloring_rejects(*g, out, 2, true); };
    } else if (name == "splitting") {
      const bool composed = get(params, "composed", false);
      s.resolved["composed"] = composed;
      from_schema(composed ? splitting_composed(p, d, opt) : splitting_schema(p, d));
      s.reject = [g](const Solution& out) { return splitting_violations(*g, out); };
    } else if (name == "edge-coloring") {
      const int delta = get(params, "delta", maxdeg);
      s.resolved["delta"] = delta;
      from_schema(edge_coloring_schema(p, delta, opt));
      s.reject = [g, delta](const Solution& out) { return edge_coloring_rejects(*g, out, delta); };
    } else {
      const double density = get(params, "density", 0.5);
      if (density < 0 || density > 1) throw bad_params("density must lie in [0, 1]");
      s.resolved["density"] = density;
      s.resolved["brute_force_cap"] = ob.brute_force_cap;
      auto x = std::make_shared<EdgeSubset>(random_edge_subset(*g, density, seed));
      auto codec = std::make_shared<EdgeSubsetCodec>(edge_subset_codec(p, ob, d));
      s.meta = codec->one_bit.meta;
      s.meta.kind = AdviceKind::variable;
      s.meta.beta = (d + 1) / 2 + 1;
      s.decoder = codec->decoder();
      s.encode = [codec, x, g]() { return codec->encode(*g, *x); };
      s.reject = [g, x](const Solution& out) { return subset_rejects(*g, out, *x); };
    }
    return s;
  }

  if (name == "lcl") {
    check_keys(params, {"problem", "r", "delta", "growth", "x0", "search_cap", "sparsity_eps", "max_r"}, name);
    const auto problem = lcl_problem_from(params.value("problem", Json("3-coloring")));
    const Json rj = params.value("r", Json("auto"));
    LclConstants k;
    std::shared_ptr<LclEncoding> cached;
    if (rj.is_string() && rj.get<std::string>() == "auto") {
      // Smallest r whose constants pass every inequality on this instance.
      const int max_r = get(params, "max_r", 6);
      for (int r = 1; r <= max_r && !cached; ++r) {
        k = lcl_constants_for(params, r, maxdeg);
        try {
          cached = std::make_shared<LclEncoding>(lcl_encode(*g, problem, k));
        } catch (const InfeasibleError&) {
          if (r == max_r) throw;
        }
      }
    } else if (rj.is_number_integer() && rj.get<int>() >= 1) {
      k = lcl_constants_for(params, rj.get<int>(), maxdeg);
    } else {
      throw bad_params("r must be a positive integer or \"auto\"");
    }
    s.resolved = lcl_constants_json(k);
    s.resolved["problem"] = problem.name;
    from_schema(lcl_schema(problem, k));
    if (cached) s.encode = [cached]() { return cached->advice; };
    s.reject = [g, problem](const Solution& out) {
      if (!sized(*g, out)) return all_nodes(*g);
      return lcl_violations(*g, problem, out);
    };
    return s;
  }

  if (name == "initial-coloring" || name == "delta-coloring" || name == "three-coloring") {
    check_keys(params, {"delta", "alpha", "profile", "constants", "use_planted"}, name);
    const int delta = get(params, "delta", std::max(2, maxdeg));
    if (delta < maxdeg) throw bad_params("delta is below the maximum degree");
    const auto k = coloring_constants_from(params, delta);
    s.resolved = Json{{"constants", coloring_constants_to_json(k)},
                      {"far_distance", effective_far_distance(k, g->size())},
                      {"plan_radius", effective_plan_radius(k, g->size())}};
    if (name == "initial-coloring") {
      from_schema(initial_coloring_schema(k));
      const long palette = linial_target(delta);
      s.resolved["palette"] = palette;
      s.reject = [g, palette](const Solution& out) { return coloring_rejects(*g, out, palette); };
    } else if (name == "delta-coloring") {
      ComposeOptions opt;
      opt.check_slot_bound = false;
      from_schema(delta_schema(k, opt));
      s.reject = [g, delta](const Solution& out) { return coloring_rejects(*g, out, delta); };
      s.stages = [g, k, delta](const Advice& a) {
        const auto slots = decode_all_slots(delta_coloring_parts(k), delta_coloring_dag(), *g, a);
        const std::vector<std::pair<const char*, long>> bound{
            {"initial", linial_target(delta)}, {"list", delta + 1L}, {"reduce-to-roots", delta}, {"fix-roots", delta}};
        Json out = Json::array();
        for (std::size_t i = 0; i < slots.size(); ++i) {
          // Reduce-to-roots leaves its uncolored nodes at 0.
          auto vals = node_values(slots[i]);
          bool proper = true;
          for (int v = 0; v < g->size(); ++v)
            for (int u : g->neighbors(v)) proper = proper && (vals[v] == 0 || vals[u] != vals[v]);
          const int uncolored = static_cast<int>(std::count(vals.begin(), vals.end(), 0));
          out.push_back(Json{{"stage", bound[i].first},
                             {"palette_bound", bound[i].second},
                             {"max_color", solution_max(slots[i])},
                             {"uncolored", uncolored},
                             {"proper", proper},
                             {"ok", proper && solution_max(slots[i]) <= bound[i].second &&
                                        (i == 2 || uncolored == 0)}});
        }
        return out;
      };
    } else {
      const bool planted = get(params, "use_planted", true) && !inst.planted.empty();
      s.resolved["use_planted"] = planted;
      from_schema(three_coloring_schema(k, seed));
      std::vector<int> proper = planted ? inst.planted : std::vector<int>{};
      auto notes = s.notes;
      s.encode = [g, k, seed, proper, notes]() {
        auto enc = three_color_encode(*g, proper, k, seed);
        int ones = 0;
        for (int c : enc.greedy) ones += c == 1;
        int large = 0;
        std::set<int> comps;
        for (int v = 0; v < g->size(); ++v)
          if (enc.component[v] >= 0 && enc.large[v]) comps.insert(enc.component[v]);
        large = static_cast<int>(comps.size());
        *notes = Json{{"checks", enc.checks},           {"groups", enc.groups.size()},
                      {"large_components", large},      {"greedy_color1", ones},
                      {"variables", enc.variables},     {"resample_rounds", enc.resample_rounds},
                      {"used_exhaustive", enc.used_exhaustive}};
        return enc.advice;
      };
      s.reject = [g](const Solution& out) { return coloring_rejects(*g, out, 3); };
    }
    return s;
  }

  throw Error(ErrorKind::invalid_params, "unknown schema '" + name + "'");
}

// ------------------------------------------------------------ runs

namespace {

Json graph_json(const Graph& g) {
  return Json{{"n", g.size()}, {"m", g.edge_count()}, {"max_degree", g.max_degree()}};
}

Json advice_json(const Graph& g, const Advice& a) {
  int excess = 0;
  for (int v = 0; v < g.size(); ++v)
    excess = std::max(excess, static_cast<int>(a.bits[v].size()) - (g.degree(v) + 1) / 2);
  Json j{{"kind", to_string(a.kind)},
         {"max_bits", a.max_bits()},
         {"mean_bits", a.mean_bits()},
         {"holders", a.holders()},
         {"max_bits_over_half_degree", excess}};
  if (a.kind == AdviceKind::uniform_fixed && a.bound == 1) {
    j["sparsity"] = measure_sparsity(a);
  } else {
    j["sparsity"] = nullptr;
  }
  return j;
}

// Largest view radius actually reached: min(declared, largest eccentricity).
int effective_radius(const Graph& g, int declared) {
  if (g.size() > 20000) return -1;
  int best = 0;
  for (int v = 0; v < g.size() && best < declared; ++v) {
    const auto d = bfs(g, v, declared);
    for (int x : d) best = std::max(best, x);
  }
  return std::min(best, declared);
}

void fail_with(Json& r, const Error& e, const char* phase) {
  r["verdict"] = "fail";
  Json f{{"kind", to_string(e.kind())}, {"phase", phase}, {"message", e.what()}};
  if (auto* inf = dynamic_cast<const InfeasibleError*>(&e)) f["inequality"] = inf->inequality();
  if (auto* nf = dynamic_cast<const NodeFailure*>(&e)) f["node"] = nf->node();
  r["failure"] = f;
}

// Decode and check; fills verdict, locality and rejecting nodes.
void decode_and_check(Json& r, Json& timing, const SchemaSetup& s, const Graph& g, const Advice& a) {
  auto t0 = std::chrono::steady_clock::now();
  RunResult run;
  try {
    run = run_local(g, a, s.decoder);
  } catch (const Error& e) {
    timing["decode_s"] = seconds_since(t0);
    fail_with(r, e, "decode");
    return;
  }
  timing["decode_s"] = seconds_since(t0);
  r["locality"] = Json{{"declared_radius", run.report.declared_radius},
                       {"effective_radius", effective_radius(g, run.report.declared_radius)},
                       {"views", run.report.views},
                       {"batched_nodes", run.report.batched_nodes},
                       {"max_view_size", run.report.max_view_size}};
  t0 = std::chrono::steady_clock::now();
  const auto bad = s.reject(run.out);
  timing["verify_s"] = seconds_since(t0);
  r["rejecting_count"] = bad.size();
  r["rejecting"] = id_list(g, bad);
  r["verdict"] = bad.empty() ? "pass" : "fail";
  if (!bad.empty())
    r["failure"] = Json{{"kind", "verification-failed"}, {"message", "the predicate rejects at some nodes"},
                        {"node", g.id(bad.front())}};
}

Json base_report(const ExperimentConfig& c) {
  return Json{{"version", kReportVersion}, {"command", "run"}, {"config", config_to_json(c)}};
}

}  // namespace

Json run_experiment(const ExperimentConfig& c) {
  Json r = base_report(c);
  Json timing = Json::object();
  const auto start = std::chrono::steady_clock::now();
  Instance inst;
  try {
    inst = load_instance(c.graph);
  } catch (const Error& e) {
    fail_with(r, e, "load");
    return r;
  }
  const Graph& g = inst.graph;
  r["graph"] = graph_json(g);
  SchemaSetup s;
  try {
    s = make_setup(c.schema, c.params, inst, c.seed);
  } catch (const Error& e) {
    fail_with(r, e, "setup");
    return r;
  }
  r["schema"] = Json{{"name", s.name},
                     {"kind", to_string(s.meta.kind)},
                     {"beta", s.meta.beta},
                     {"composable", s.meta.composable},
                     {"declared_radius", s.decoder.radius},
                     {"params", s.resolved}};
  Advice a;
  auto t0 = std::chrono::steady_clock::now();
  try {
    a = s.encode();
    a.validate();
  } catch (const Error& e) {
    timing["encode_s"] = seconds_since(t0);
    r["timing"] = timing;
    fail_with(r, e, "encode");
    return r;
  }
  timing["encode_s"] = seconds_since(t0);
  if (!s.notes->is_null()) r["encoder"] = *s.notes;
  r["advice"] = advice_json(g, a);
  if (!c.advice_out.empty()) {
    std::ofstream out(c.advice_out);
    if (!out) {
      r["verdict"] = "fail";
      r["failure"] = Json{{"kind", "io"}, {"message", "cannot write " + c.advice_out}};
      return r;
    }
    write_advice(out, g, a);
  }
  decode_and_check(r, timing, s, g, a);
  if (s.stages && r["verdict"] == "pass") {
    try {
      r["stages"] = s.stages(a);
      for (const auto& st : r["stages"])
        if (!st["ok"].get<bool>()) {
          r["verdict"] = "fail";
          r["failure"] = Json{{"kind", "verification-failed"}, {"message", "stage " + st["stage"].get<std::string>()}};
        }
    } catch (const Error& e) {
      fail_with(r, e, "stages");
    }
  }
  timing["total_s"] = seconds_since(start);
  r["timing"] = timing;
  return r;
}

Json verify_advice(const SchemaSetup& s, const Instance& inst, const Advice& advice) {
  Json r{{"version", kReportVersion}, {"command", "verify"}, {"schema", Json{{"name", s.name}, {"params", s.resolved}}}};
  Json timing = Json::object();
  const Graph& g = inst.graph;
  r["graph"] = graph_json(g);
  if (advice.size() != g.size()) {
    r["verdict"] = "fail";
    r["failure"] = Json{{"kind", "malformed"}, {"message", "advice size does not match the graph"}};
    return r;
  }
  r["advice"] = advice_json(g, advice);
  decode_and_check(r, timing, s, g, advice);
  r["timing"] = timing;
  return r;
}

Json verify_advice(const ExperimentConfig& c, const Advice& advice) {
  Instance inst;
  SchemaSetup s;
  try {
    inst = load_instance(c.graph);
    s = make_setup(c.schema, c.params, inst, c.seed);
  } catch (const Error& e) {
    Json r{{"version", kReportVersion}, {"command", "verify"}, {"config", config_to_json(c)}};
    fail_with(r, e, "setup");
    return r;
  }
  auto r = verify_advice(s, inst, advice);
  r["config"] = config_to_json(c);
  return r;
}

std::string canonical_report(const Json& report) {
  Json copy = report;
  copy.erase("timing");
  return copy.dump(2);
}

int report_exit_code(const Json& report) {
  if (report.value("verdict", std::string()) == "pass") return 0;
  const auto kind = report.contains("failure") ? report["failure"].value("kind", std::string()) : std::string();
  if (kind == to_string(ErrorKind::constants_infeasible)) return 2;
  if (kind == to_string(ErrorKind::io) || kind == to_string(ErrorKind::malformed)) return 4;
  const auto phase = report["failure"].value("phase", std::string());
  if (kind == to_string(ErrorKind::invalid_params) && (phase == "setup" || phase == "load")) return 1;
  return 3;
}

std::string stats_csv(const std::vector<Json>& reports) {
  if (reports.empty()) throw bad_params("stats needs at least one report");
  std::ostringstream os;
  os << "schema,graph,n,m,max_degree,c,alpha,declared_radius,effective_radius,max_bits,mean_bits,"
        "max_bits_over_half_degree,sparsity,holders,verdict\n";
  auto num = [](const Json& j, const char* a, const char* b) -> std::string {
    if (!j.contains(a) || !j[a].is_object() || !j[a].contains(b) || j[a][b].is_null()) return "";
    return j[a][b].dump();
  };
  for (const auto& r : reports) {
    std::string graph;
    if (r.contains("config")) {
      const auto& g = r["config"]["graph"];
      if (g.contains("file")) {
        graph = g["file"].get<std::string>();
      } else {
        graph = g.value("kind", std::string());
        for (int p : g.value("params", std::vector<int>{})) graph += ":" + std::to_string(p);
      }
    }
    Json params = r.contains("schema") && r["schema"].contains("params") ? r["schema"]["params"] : Json::object();
    os << (r.contains("schema") ? r["schema"].value("name", std::string()) : std::string()) << ',' << graph << ','
       << num(r, "graph", "n") << ',' << num(r, "graph", "m") << ',' << num(r, "graph", "max_degree") << ','
       << (params.contains("c") ? params["c"].dump() : "") << ','
       << (params.contains("alpha") ? params["alpha"].dump() : "") << ','
       << num(r, "locality", "declared_radius") << ',' << num(r, "locality", "effective_radius") << ','
       << num(r, "advice", "max_bits") << ',' << num(r, "advice", "mean_bits") << ','
       << num(r, "advice", "max_bits_over_half_degree") << ',' << num(r, "advice", "sparsity") << ','
       << num(r, "advice", "holders") << ',' << r.value("verdict", std::string()) << '\n';
  }
  return os.str();
}

}  // namespace lca
