// Copyright 2026 The Authors.
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

#include "lim/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "lim/baselines.hpp"
#include "lim/budgets.hpp"
#include "lim/error.hpp"
#include "lim/eval.hpp"
#include "lim/immprr.hpp"
#include "lim/immvsn.hpp"

namespace lim {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::set<std::string> kAlgorithms = {"immprr", "immvsn", "mclg", "ud", "cd", "hd"};

void RequireKeys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) Fail(ErrorCode::kConfig, where + " must be an object");
  for (const auto& item : obj.items()) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; }) ==
        keys.end()) {
      Fail(ErrorCode::kConfig, "unknown key '" + item.key() + "' in " + where);
    }
  }
}

template <typename T>
void Read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

Diffusion ParseDiffusion(const std::string& s) {
  if (s == "ic") return Diffusion::kIC;
  if (s == "lt") return Diffusion::kLT;
  Fail(ErrorCode::kConfig, "diffusion model must be ic or lt, got '" + s + "'");
}

std::string DiffusionName(Diffusion d) { return d == Diffusion::kIC ? "ic" : "lt"; }

std::string Fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string Short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

bool NeedsPersonalized(const std::string& algorithm) {
  return algorithm == "ud" || algorithm == "cd" || algorithm == "hd";
}

bool UsesEpsilon(const std::string& algorithm) {
  return algorithm == "immprr" || algorithm == "immvsn" || algorithm == "ud" || algorithm == "cd";
}

}  // namespace

ExperimentConfig ParseConfig(const std::string& text, const std::string& base_dir) {
  ExperimentConfig c;
  c.source_text = text;
  try {
    json root = json::parse(text, nullptr, true, true);
    RequireKeys(root, "config",
                {"dataset", "scenario", "algorithms", "budgets", "constraint", "eval_runs",
                 "time_reps", "seed", "record_timing", "output"});
    if (!root.contains("dataset")) Fail(ErrorCode::kConfig, "config needs a dataset section");
    const json& ds = root.at("dataset");
    RequireKeys(ds, "dataset", {"name", "path", "generate", "params", "model", "uniform_value"});
    Read(ds, "name", c.dataset.name);
    if (ds.contains("path")) {
      fs::path p = ds.at("path").get<std::string>();
      c.dataset.path = (p.is_absolute() ? p : fs::path(base_dir) / p).lexically_normal().string();
    }
    if (ds.contains("generate")) {
      const json& g = ds.at("generate");
      RequireKeys(g, "dataset.generate", {"model", "nodes", "edges", "seed"});
      std::string model = g.value("model", "er");
      if (model != "er") Fail(ErrorCode::kConfig, "only the er generator is supported");
      c.dataset.generate = true;
      c.dataset.gen_nodes = g.at("nodes").get<NodeId>();
      c.dataset.gen_edges = g.at("edges").get<uint64_t>();
      Read(g, "seed", c.dataset.gen_seed);
    }
    if (c.dataset.generate == !c.dataset.path.empty()) {
      Fail(ErrorCode::kConfig, "dataset needs exactly one of path or generate");
    }
    if (c.dataset.name.empty()) {
      c.dataset.name = c.dataset.generate ? "er" : fs::path(c.dataset.path).stem().string();
    }
    Read(ds, "params", c.dataset.params);
    if (ds.contains("model")) c.dataset.model = ParseDiffusion(ds.at("model").get<std::string>());
    Read(ds, "uniform_value", c.dataset.uniform_value);

    if (root.contains("scenario")) {
      const json& sc = root.at("scenario");
      RequireKeys(sc, "scenario", {"family", "d", "top_nodes", "r_max", "delta"});
      Read(sc, "family", c.scenario.family);
      Read(sc, "d", c.scenario.segmented.d);
      Read(sc, "top_nodes", c.scenario.segmented.top_nodes);
      Read(sc, "r_max", c.scenario.segmented.r_max);
      Read(sc, "delta", c.scenario.delta);
    }
    if (root.contains("algorithms")) {
      for (const json& a : root.at("algorithms")) {
        AlgorithmSpec spec;
        if (a.is_string()) {
          spec.name = a.get<std::string>();
        } else {
          RequireKeys(a, "algorithm", {"name", "epsilon", "ell", "sims", "m_nodes", "force"});
          spec.name = a.at("name").get<std::string>();
          Read(a, "epsilon", spec.epsilon);
          Read(a, "ell", spec.ell);
          Read(a, "sims", spec.sims);
          Read(a, "m_nodes", spec.m_nodes);
          Read(a, "force", spec.force);
        }
        c.algorithms.push_back(spec);
      }
    }
    Read(root, "budgets", c.budgets);
    if (root.contains("constraint")) {
      const json& cs = root.at("constraint");
      RequireKeys(cs, "constraint", {"groups", "caps"});
      ConstraintSpec spec;
      spec.groups = cs.at("groups").get<std::vector<std::vector<uint32_t>>>();
      spec.caps = cs.at("caps").get<std::vector<double>>();
      c.constraint = std::move(spec);
    }
    Read(root, "eval_runs", c.eval_runs);
    Read(root, "time_reps", c.time_reps);
    Read(root, "seed", c.seed);
    Read(root, "record_timing", c.record_timing);
    if (root.contains("output")) {
      fs::path p = root.at("output").get<std::string>();
      c.output = (p.is_absolute() ? p : fs::path(base_dir) / p).lexically_normal().string();
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kConfig, std::string("bad config: ") + e.what());
  }
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str(), fs::path(path).parent_path().string());
}

std::vector<std::string> ValidateConfig(const ExperimentConfig& c) {
  std::vector<std::string> problems;
  if (!c.dataset.generate) {
    std::ifstream in(c.dataset.path);
    if (!in) problems.push_back("dataset file not readable: " + c.dataset.path);
  } else if (c.dataset.gen_nodes < 2) {
    problems.push_back("generated graph needs at least two nodes");
  }
  if (c.dataset.params != "weighted_cascade" && c.dataset.params != "file" &&
      c.dataset.params != "uniform") {
    problems.push_back("dataset.params must be weighted_cascade, file or uniform");
  }
  if (c.dataset.params == "weighted_cascade" && c.dataset.model != Diffusion::kIC) {
    problems.push_back("weighted cascade parameters are IC probabilities");
  }
  if (c.dataset.params == "file" && c.dataset.generate) {
    problems.push_back("generated graphs carry no edge parameters");
  }
  const bool personalized = c.scenario.family == "personalized";
  if (!personalized && c.scenario.family != "segmented_event") {
    problems.push_back("unknown scenario family '" + c.scenario.family + "'");
  }
  if (!(c.scenario.delta > 0.0)) problems.push_back("scenario.delta must be positive");
  if (c.scenario.segmented.d == 0) problems.push_back("scenario.d must be at least 1");
  if (c.scenario.segmented.r_max < 0.0 || c.scenario.segmented.r_max > 1.0) {
    problems.push_back("scenario.r_max must lie in [0, 1]");
  }
  for (const AlgorithmSpec& a : c.algorithms) {
    if (!kAlgorithms.count(a.name)) {
      problems.push_back("unknown algorithm '" + a.name + "'");
      continue;
    }
    if (NeedsPersonalized(a.name) && !personalized) {
      problems.push_back(a.name + " needs the personalized scenario");
    }
    if (NeedsPersonalized(a.name) && c.constraint) {
      problems.push_back(a.name + " supports only a total budget");
    }
    if (!(a.epsilon > 0.0) || !(a.ell > 0.0)) {
      problems.push_back(a.name + ": epsilon and ell must be positive");
    }
    if (a.sims == 0) problems.push_back(a.name + ": sims must be positive");
  }
  if (c.constraint && !c.budgets.empty()) {
    problems.push_back("budgets and constraint are mutually exclusive");
  }
  if (c.scenario.delta > 0.0) {
    auto check_multiple = [&](double k, const std::string& what) {
      double steps = k / c.scenario.delta;
      if (k < 0.0 || std::fabs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
        problems.push_back(what + " " + Short(k) + " is not a nonnegative multiple of delta");
      }
    };
    for (double k : c.budgets) check_multiple(k, "budget");
    if (c.constraint) {
      for (double k : c.constraint->caps) check_multiple(k, "group cap");
      if (c.constraint->caps.size() != c.constraint->groups.size()) {
        problems.push_back("constraint needs one cap per group");
      }
    }
  }
  if (c.eval_runs == 0) problems.push_back("eval_runs must be positive");
  if (c.time_reps == 0) problems.push_back("time_reps must be positive");
  return problems;
}

LoadedDataset LoadDataset(const DatasetSpec& spec) {
  LoadedDataset out;
  if (spec.generate) {
    RandomStream rng(spec.gen_seed);
    out.graph = GenerateErdosRenyi(spec.gen_nodes, spec.gen_edges, rng);
  } else {
    LoadReport report;
    out.graph = LoadEdgeListFile(spec.path, {}, &report);
    out.self_loops_dropped = report.self_loops_dropped;
  }
  if (spec.params == "weighted_cascade") {
    if (spec.model != Diffusion::kIC) {
      Fail(ErrorCode::kConfig, "weighted cascade parameters are IC probabilities");
    }
    out.params = AssignWeightedCascade(out.graph);
  } else if (spec.params == "file") {
    out.params = ParamsFromFile(out.graph, spec.model);
  } else if (spec.params == "uniform") {
    out.params = AssignUniform(out.graph, spec.model, spec.uniform_value);
  } else {
    Fail(ErrorCode::kConfig, "unknown edge parameterization '" + spec.params + "'");
  }
  ValidateParams(out.graph, out.params);
  return out;
}

uint32_t ScenarioDimension(const DirectedGraph& graph, const ScenarioSpec& spec) {
  if (spec.family == "personalized") return graph.num_nodes();
  if (spec.family == "segmented_event") return spec.segmented.d;
  Fail(ErrorCode::kConfig, "unknown scenario family '" + spec.family + "'");
}

ActivationModel BuildScenario(const DirectedGraph& graph, const ScenarioSpec& spec,
                              const LatticeConfig& lattice, RandomStream& rng) {
  if (spec.family == "personalized") return MakePersonalizedModel(graph.num_nodes(), lattice);
  if (spec.family == "segmented_event") {
    return MakeSegmentedEventModel(graph, spec.segmented, lattice, rng);
  }
  Fail(ErrorCode::kConfig, "unknown scenario family '" + spec.family + "'");
}

std::string ConfigHash(const std::string& text) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct CellOutput {
  StrategyMix x;
  std::optional<uint64_t> theta;
};

CellOutput RunAlgorithm(const AlgorithmSpec& alg, const LoadedDataset& data,
                        const ActivationModel& model, const LatticeConfig& lattice,
                        const BudgetConstraint& constraint, RandomStream rng) {
  const SolveOptions options{{alg.epsilon, alg.ell}, alg.force};
  if (alg.name == "immprr" || alg.name == "immvsn") {
    SolveResult r = alg.name == "immprr"
                        ? ImmPrr(data.graph, data.params, model, lattice, constraint, options, rng)
                        : ImmVsn(data.graph, data.params, model, lattice, constraint, options, rng);
    return {std::move(r.x), r.theta};
  }
  if (alg.name == "mclg") {
    RequireValidModel(model, lattice, alg.force);
    return {Mclg(data.graph, data.params, model, lattice, constraint, alg.sims, rng), std::nullopt};
  }
  if (alg.name == "hd") {
    return {Hd(data.graph, lattice, std::min(alg.m_nodes, data.graph.num_nodes()),
               CoordinateCaps(model, lattice, 1.0)),
            std::nullopt};
  }
  // ud and cd share the IMM-PRR sample.
  if (!model.is_personalized()) {
    Fail(ErrorCode::kUnsupported, alg.name + " needs the personalized scenario");
  }
  CellOutput out;
  out.x = StrategyMix(lattice.d);
  if (lattice.budget_steps == 0) return out;
  RRCollection collection =
      Sampling(data.graph, data.params, model, lattice, constraint, options.imm, rng);
  out.theta = collection.theta();
  out.x = Ud(collection, model, lattice);
  if (alg.name == "cd") out.x = Cd(collection, model, lattice, out.x);
  return out;
}

}  // namespace

ExperimentReport RunExperiment(const ExperimentConfig& config) {
  auto problems = ValidateConfig(config);
  if (!problems.empty()) Fail(ErrorCode::kConfig, problems.front());

  LoadedDataset data = LoadDataset(config.dataset);
  const NodeId n = data.graph.num_nodes();
  const uint32_t d = ScenarioDimension(data.graph, config.scenario);
  const double delta = config.scenario.delta;

  // Cells: (budget, constraint) pairs.
  struct Budget {
    double k;
    BudgetConstraint constraint;
  };
  std::vector<Budget> budgets;
  if (config.constraint) {
    std::vector<int32_t> caps;
    double k = 0.0;
    for (double cap : config.constraint->caps) {
      caps.push_back(static_cast<int32_t>(std::llround(cap / delta)));
      k += cap;
    }
    budgets.push_back({k, BudgetConstraint::Partitioned(d, config.constraint->groups, caps)});
  } else {
    for (double k : config.budgets) {
      budgets.push_back(
          {k, BudgetConstraint::Total(static_cast<int32_t>(std::llround(k / delta)))});
    }
  }
  double k_max = 0.0;
  for (const Budget& b : budgets) k_max = std::max(k_max, b.k);

  const RandomStream master(config.seed);
  RandomStream scenario_rng = master.Split(0);
  const ActivationModel model =
      BuildScenario(data.graph, config.scenario, MakeLattice(d, delta, k_max), scenario_rng);

  nlohmann::ordered_json meta;
  meta["config_hash"] = ConfigHash(config.source_text);
  meta["seed"] = config.seed;
  meta["dataset"] = {{"name", config.dataset.name},
                     {"nodes", n},
                     {"edges", data.graph.num_edges()},
                     {"self_loops_dropped", data.self_loops_dropped},
                     {"params", config.dataset.params},
                     {"model", DiffusionName(data.params.kind)}};
  meta["scenario"] = {{"family", config.scenario.family}, {"d", d}, {"delta", delta}};
  if (config.scenario.family == "segmented_event") {
    meta["scenario"]["top_nodes"] = config.scenario.segmented.top_nodes;
    meta["scenario"]["r_max"] = config.scenario.segmented.r_max;
  }
  meta["algorithms"] = nlohmann::ordered_json::array();
  for (const AlgorithmSpec& a : config.algorithms) {
    meta["algorithms"].push_back({{"name", a.name},
                                  {"epsilon", a.epsilon},
                                  {"ell", a.ell},
                                  {"sims", a.sims},
                                  {"m_nodes", a.m_nodes},
                                  {"force", a.force}});
  }
  meta["eval_runs"] = config.eval_runs;
  meta["time_reps"] = config.time_reps;
  meta["record_timing"] = config.record_timing;
  meta["failures"] = nlohmann::ordered_json::array();

  ExperimentReport report;
  std::string csv = std::string(kCsvHeader) + "\n";
  const RandomStream cells = master.Split(1);
  for (size_t a = 0; a < config.algorithms.size(); ++a) {
    const AlgorithmSpec& alg = config.algorithms[a];
    for (size_t b = 0; b < budgets.size(); ++b) {
      const RandomStream cell = cells.Split(a).Split(b);
      std::string spread = "NA", se = "NA", runtime = "NA", theta = "NA";
      try {
        const LatticeConfig lattice = MakeLattice(d, delta, budgets[b].k);
        const uint32_t reps = config.record_timing ? config.time_reps : 1;
        CellOutput out;
        double seconds = 0.0;
        for (uint32_t r = 0; r < reps; ++r) {
          auto t0 = std::chrono::steady_clock::now();
          out = RunAlgorithm(alg, data, model, lattice, budgets[b].constraint, cell.Split(0));
          seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        SpreadEstimate est = SimulateSpreadMix(data.graph, data.params, model, out.x,
                                               config.eval_runs, cell.Split(1));
        spread = Fixed(est.mean);
        se = Fixed(est.se);
        if (config.record_timing) runtime = Fixed(seconds / reps);
        if (out.theta) theta = std::to_string(*out.theta);
      } catch (const Error& e) {
        ++report.failed_cells;
        meta["failures"].push_back(
            {{"algorithm", alg.name}, {"k", budgets[b].k}, {"error", e.what()}});
      }
      csv += config.dataset.name + "," + config.scenario.family + "," + alg.name + "," +
             (UsesEpsilon(alg.name) ? Short(alg.epsilon) : std::string("NA")) + "," +
             Short(budgets[b].k) + "," + Short(delta) + "," + spread + "," + se + "," + runtime +
             "," + theta + "," + std::to_string(config.seed) + "\n";
    }
  }
  report.csv = std::move(csv);
  report.meta_json = meta.dump(2) + "\n";
  return report;
}

void WriteReport(const ExperimentReport& report, const std::string& path) {
  auto write = [](const std::string& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) Fail(ErrorCode::kIo, "cannot write " + file);
    out << text;
    if (!out) Fail(ErrorCode::kIo, "failed writing " + file);
  };
  write(path, report.csv);
  write(path + ".meta.json", report.meta_json);
}

std::string RunOracle(const std::string& instance_json) {
  json out;
  try {
    json inst = json::parse(instance_json);
    RequireKeys(inst, "instance",
                {"nodes", "edges", "model", "d", "delta", "budget_steps", "arms", "x", "constraint",
                 "opt"});
    const NodeId n = inst.at("nodes").get<NodeId>();
    std::vector<DirectedGraph::Edge> edges;
    for (const json& e : inst.at("edges")) {
      if (e.size() != 3) Fail(ErrorCode::kConfig, "edges must be [u, v, p] triples");
      edges.push_back({e[0].get<NodeId>(), e[1].get<NodeId>(), e[2].get<double>()});
    }
    DirectedGraph graph(n, edges);
    TriggeringParams params = ParamsFromFile(graph, ParseDiffusion(inst.value("model", "ic")));
    const uint32_t d = inst.at("d").get<uint32_t>();
    LatticeConfig lattice{d, inst.value("delta", 1.0), inst.at("budget_steps").get<int32_t>()};

    std::vector<QCurve> curves;
    std::vector<std::vector<StrategyArm>> arms(n);
    for (const json& arm : inst.at("arms")) {
      RequireKeys(arm, "arm", {"node", "strategy", "q"});
      NodeId v = arm.at("node").get<NodeId>();
      if (v >= n) Fail(ErrorCode::kRange, "arm node outside [0, n)");
      arms[v].push_back({arm.at("strategy").get<StrategyIndex>(),
                         static_cast<uint32_t>(curves.size())});
      curves.push_back(QCurve::Tabulated(arm.at("q").get<std::vector<double>>()));
    }
    ActivationModel model = ActivationModel::Independent(n, d, std::move(curves), std::move(arms));
    BudgetConstraint constraint = BudgetConstraint::Total(lattice.budget_steps);
    if (inst.contains("constraint")) {
      const json& cs = inst.at("constraint");
      constraint = BudgetConstraint::Partitioned(
          d, cs.at("groups").get<std::vector<std::vector<StrategyIndex>>>(),
          cs.at("caps").get<std::vector<int32_t>>());
    }
    ExactOracle oracle(graph, params);
    bool want_opt = inst.value("opt", !inst.contains("x"));
    if (inst.contains("x")) {
      StrategyMix x;
      x.steps = inst.at("x").get<std::vector<int32_t>>();
      if (x.dimension() != d) Fail(ErrorCode::kConfig, "x must have d entries");
      out["g"] = oracle.G(model, x);
    }
    if (want_opt) {
      ExactOptResult opt = ExactOpt(oracle, model, lattice, constraint);
      out["opt"] = {{"x", opt.x.steps}, {"spread", opt.spread}, {"points", opt.points}};
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kConfig, std::string("bad oracle instance: ") + e.what());
  }
  return out.dump(2) + "\n";
}

void GenerateGraphFile(const std::string& model, NodeId n, uint64_t m, uint64_t seed,
                       const std::string& path) {
  if (model != "er") Fail(ErrorCode::kInvalidArgument, "unknown graph model '" + model + "'");
  RandomStream rng(seed);
  DirectedGraph g = GenerateErdosRenyi(n, m, rng);
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path);
  WriteEdgeList(out, g);
  if (!out) Fail(ErrorCode::kIo, "failed writing " + path);
}

}  // namespace lim
