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

// Acceptance gate: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.
#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "lim/baselines.hpp"
#include "lim/eval.hpp"
#include "lim/experiment.hpp"
#include "lim/immprr.hpp"
#include "lim/immvsn.hpp"
#include "lim/rrset.hpp"
#include "support.hpp"

using namespace lim;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Many simultaneous tests at level `alpha`: the number of nominal failures
// allowed is the 0.999 quantile of Binomial(tests, alpha).
uint32_t AllowedExceedances(uint32_t tests, double alpha) {
  boost::math::binomial_distribution<double> dist(tests, alpha);
  uint32_t c = 0;
  while (boost::math::cdf(dist, c) < 0.999) ++c;
  return c;
}

void ForEachBoxPoint(uint32_t d, int32_t hi, const std::function<void(const StrategyMix&)>& fn) {
  StrategyMix x(d);
  std::function<void(uint32_t)> rec = [&](uint32_t j) {
    if (j == d) return fn(x);
    for (int32_t s = 0; s <= hi; ++s) {
      x.steps[j] = s;
      rec(j + 1);
    }
    x.steps[j] = 0;
  };
  rec(0);
}

uint32_t BoxIndex(const StrategyMix& x, int32_t side) {
  uint32_t idx = 0;
  for (int32_t s : x.steps) idx = idx * side + s;
  return idx;
}

StrategyMix RandomPoint(const LatticeConfig& lattice, RandomStream& rng) {
  StrategyMix x(lattice.d);
  for (auto& s : x.steps) s = static_cast<int32_t>(rng.Below(lattice.budget_steps + 1));
  return x;
}

// 1. Mean ĝ over 200 collections against the exact g.
Outcome OracleAgreement() {
  const uint32_t instances = 50, points = 10, reps = 200;
  const uint64_t theta = 1000;
  RandomStream master(101);
  uint32_t over3 = 0;
  double worst = 0.0;
  for (uint32_t t = 0; t < instances; ++t) {
    RandomStream rng = master.Split(t);
    testing::Instance inst = testing::RandomInstance({}, rng);
    ExactOracle oracle(inst.graph, inst.params);
    std::vector<StrategyMix> xs;
    for (uint32_t p = 0; p < points; ++p) xs.push_back(RandomPoint(inst.lattice, rng));
    std::vector<double> sum(points, 0.0), sum_sq(points, 0.0);
    for (uint32_t r = 0; r < reps; ++r) {
      RRCollection c = GenerateCollection(inst.graph, inst.params, nullptr, theta, rng.Split(1000 + r));
      for (uint32_t p = 0; p < points; ++p) {
        double v = GHat(c, inst.model, xs[p]);
        sum[p] += v;
        sum_sq[p] += v * v;
      }
    }
    for (uint32_t p = 0; p < points; ++p) {
      const double mean = sum[p] / reps;
      const double var = std::max(0.0, (sum_sq[p] - reps * mean * mean) / (reps - 1));
      const double se = std::sqrt(var / reps);
      const double diff = std::fabs(mean - oracle.G(inst.model, xs[p]));
      if (diff <= 1e-9) continue;
      const double z = se > 0.0 ? diff / se : INFINITY;
      worst = std::max(worst, z);
      over3 += z > 3.0;
    }
  }
  const uint32_t checks = instances * points;
  const uint32_t allowed = AllowedExceedances(checks, 0.0027);
  return {over3 <= allowed && worst <= 5.0,
          Format("%u instances x %u points, %u beyond 3 SE (allowed %u), max |z| %.2f", instances,
                 points, over3, allowed, worst)};
}

// 2. IMM-PRR and IMM-VSN against the exact optimum.
Outcome Approximation() {
  const double ratio = 1.0 - 1.0 / std::exp(1.0) - 0.3;
  RandomStream master(202);
  uint32_t ok_prr = 0, ok_vsn = 0;
  double min_prr = INFINITY, min_vsn = INFINITY;
  SolveOptions opt;
  opt.imm = {0.3, 1.0};
  for (uint32_t r = 0; r < 100; ++r) {
    RandomStream rng = master.Split(r);
    testing::Instance inst = testing::RandomInstance({}, rng);
    ExactOracle oracle(inst.graph, inst.params);
    BudgetConstraint bc = BudgetConstraint::Total(inst.lattice.budget_steps);
    const double best = ExactOpt(oracle, inst.model, inst.lattice, bc).spread;
    SolveResult a = ImmPrr(inst.graph, inst.params, inst.model, inst.lattice, bc, opt, rng.Split(1));
    SolveResult b = ImmVsn(inst.graph, inst.params, inst.model, inst.lattice, bc, opt, rng.Split(2));
    const double ga = oracle.G(inst.model, a.x), gb = oracle.G(inst.model, b.x);
    ok_prr += ga >= ratio * best - 1e-12;
    ok_vsn += gb >= ratio * best - 1e-12;
    if (best > 0) {
      min_prr = std::min(min_prr, ga / best);
      min_vsn = std::min(min_vsn, gb / best);
    }
  }
  return {ok_prr >= 95 && ok_vsn >= 95,
          Format("immprr %u/100, immvsn %u/100 at >= %.3f OPT; worst ratios %.3f / %.3f", ok_prr,
                 ok_vsn, ratio, min_prr, min_vsn)};
}

// 3. Incremental greedy against the greedy on ĝ, with every marginal checked.
Outcome DeltaEquivalence() {
  RandomStream master(303);
  uint32_t equal = 0;
  double max_gap = 0.0;
  for (uint32_t t = 0; t < 100; ++t) {
    RandomStream rng = master.Split(t);
    testing::InstanceShape shape;
    shape.max_d = 4;
    shape.max_steps = 4;
    shape.lt = t % 2 == 1;
    testing::Instance inst = testing::RandomInstance(shape, rng);
    RRCollection c = GenerateCollection(inst.graph, inst.params, &inst.model, 1000, rng.Split(1));
    BudgetConstraint bc = BudgetConstraint::Total(inst.lattice.budget_steps);
    StrategyMix fast = LGreedyDelta(c, inst.model, inst.lattice, bc);
    StrategyMix slow = LGreedy([&](const StrategyMix& x) { return GHat(c, inst.model, x); },
                               inst.lattice, bc);
    equal += fast == slow;

    GreedyState state(c, inst.model);
    for (int32_t step = 0; step < bc.total_steps(); ++step) {
      const StrategyMix x = state.x();
      const double base = GHat(c, inst.model, x);
      int64_t best = -1;
      double best_gain = 0.0;
      for (StrategyIndex j = 0; j < inst.lattice.d; ++j) {
        StrategyMix y = x;
        ++y.steps[j];
        const double naive = GHat(c, inst.model, y) - base;
        const double gain = state.MarginalGain(j);
        max_gap = std::max(max_gap, std::fabs(gain - naive));
        if (best < 0 || GainImproves(gain, best_gain, base)) {
          best = j;
          best_gain = gain;
        }
      }
      state.Apply(static_cast<StrategyIndex>(best));
    }
  }
  return {equal == 100 && max_gap <= 1e-9,
          Format("%u/100 identical outputs, max |marginal - naive| %.2e", equal, max_gap)};
}

// 4. LIM spread against prefix seeding in the augmented graph.
Outcome ReductionFidelity() {
  RandomStream master(404);
  const uint64_t runs = 100000;
  uint32_t over3 = 0;
  double worst = 0.0;
  for (uint32_t t = 0; t < 20; ++t) {
    RandomStream rng = master.Split(t);
    testing::InstanceShape shape;
    shape.max_edges = 8;
    shape.lt = t % 2 == 1;
    testing::Instance inst = testing::RandomInstance(shape, rng);
    StrategyMix x = RandomPoint(inst.lattice, rng);
    if (x.is_zero()) x.steps[0] = 1;
    AugmentedGraph aug(inst.graph, inst.params, inst.model, inst.lattice);
    SpreadEstimate lim = SimulateSpreadMix(inst.graph, inst.params, inst.model, x, runs, rng.Split(1));
    SpreadEstimate red = SimulateVirtualSeeds(aug, PrefixSeeds(x), runs, rng.Split(2));
    const double se = std::sqrt(lim.se * lim.se + red.se * red.se);
    const double diff = std::fabs(lim.mean - red.mean);
    const double z = se > 0.0 ? diff / se : (diff > 1e-12 ? INFINITY : 0.0);
    worst = std::max(worst, z);
    over3 += z > 3.0;
  }
  const uint32_t allowed = AllowedExceedances(20, 0.0027);
  return {over3 <= allowed && worst <= 5.0,
          Format("20 mixes at 1e5 runs, %u beyond 3 SE (allowed %u), max |z| %.2f", over3, allowed,
                 worst)};
}

// 5. Exact per-node activation: prefix seeds against every same-size subset.
Outcome PrefixDominance() {
  RandomStream master(505);
  uint64_t comparisons = 0, violations = 0;
  uint32_t instances = 0;
  double worst = 0.0;
  for (uint32_t t = 0; t < 30; ++t) {
    RandomStream rng = master.Split(t);
    testing::InstanceShape shape;
    shape.max_nodes = 7;
    shape.max_edges = 8;
    shape.max_steps = 5;
    shape.lt = t % 2 == 1;
    // Keep d·K <= 10 so all 2^(dK) virtual seed sets can be enumerated.
    const int32_t K = 1 + static_cast<int32_t>(rng.Below(5));
    shape.min_steps = shape.max_steps = K;
    shape.max_d = std::max<uint32_t>(1, std::min<uint32_t>(3, 10 / K));
    testing::Instance inst = testing::RandomInstance(shape, rng);
    if (!ValidateModel(inst.model, inst.lattice).empty()) continue;
    ++instances;
    AugmentedGraph aug(inst.graph, inst.params, inst.model, inst.lattice);
    ExactOracle oracle(inst.graph, inst.params);
    const uint32_t d = inst.lattice.d;
    const uint32_t bits = d * K;
    // Prefix activation per size vector.
    const int32_t side = K + 1;
    std::vector<std::vector<double>> prefix(static_cast<size_t>(std::pow(side, d)));
    ForEachBoxPoint(d, K, [&](const StrategyMix& x) {
      prefix[BoxIndex(x, side)] =
          oracle.ActivationProbabilities(VirtualSeedProbabilities(aug, PrefixSeeds(x)));
    });
    for (uint32_t mask = 0; mask < (1u << bits); ++mask) {
      std::vector<VirtualNodeId> seeds;
      StrategyMix sizes(d);
      for (uint32_t b = 0; b < bits; ++b) {
        if (!(mask >> b & 1)) continue;
        VirtualNodeId u = aug.Unpack(b);
        seeds.push_back(u);
        ++sizes.steps[u.j];
      }
      auto act = oracle.ActivationProbabilities(VirtualSeedProbabilities(aug, seeds));
      const auto& best = prefix[BoxIndex(sizes, side)];
      for (NodeId v = 0; v < act.size(); ++v) {
        ++comparisons;
        const double gap = act[v] - best[v];
        worst = std::max(worst, gap);
        violations += gap > 1e-12;
      }
    }
  }
  return {violations == 0 && instances >= 20,
          Format("%u instances, %llu node comparisons, %llu violations (max excess %.1e)", instances,
                 static_cast<unsigned long long>(comparisons),
                 static_cast<unsigned long long>(violations), worst)};
}

// 6. Chi-square goodness of fit of the virtual arm sampler.
Outcome SamplerDistribution() {
  RandomStream master(606);
  const uint32_t N = 100000;
  uint32_t low = 0;
  double min_p = 1.0;
  for (uint32_t t = 0; t < 20; ++t) {
    RandomStream rng = master.Split(t);
    const int32_t K = 2 + static_cast<int32_t>(rng.Below(9));
    DirectedGraph g(1, std::vector<DirectedGraph::Edge>{});
    TriggeringParams p = AssignUniform(g, Diffusion::kIC, 0.0);
    std::vector<QCurve> curves{QCurve::Tabulated(testing::RandomConcaveTable(K, rng))};
    ActivationModel m = ActivationModel::Independent(1, 1, std::move(curves), {{{0, 0}}});
    LatticeConfig lattice{1, 1.0, K};
    AugmentedGraph aug(g, p, m, lattice);
    // Bin 0 is "no virtual in-neighbour".
    std::vector<double> expected(K + 1);
    expected[0] = N * (1.0 - aug.Cumulative(0, 0, K));
    for (int32_t i = 1; i <= K; ++i) expected[i] = N * aug.Weight(0, 0, i);
    std::vector<double> observed(K + 1, 0.0);
    RandomStream draws = rng.Split(1);
    for (uint32_t n = 0; n < N; ++n) {
      RandomStream r = draws.Split(n);
      auto u = SampleVirtualArm(aug, 0, 0, r);
      observed[u ? u->i : 0] += 1.0;
    }
    // Pool bins with expected count below 5.
    double pool_e = 0.0, pool_o = 0.0, stat = 0.0;
    int bins = 0;
    for (int32_t i = 0; i <= K; ++i) {
      if (expected[i] < 5.0) {
        pool_e += expected[i];
        pool_o += observed[i];
        continue;
      }
      stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
      ++bins;
    }
    if (pool_e >= 5.0) {
      stat += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
      ++bins;
    } else if (pool_o > 0.0 && pool_e == 0.0) {
      stat = INFINITY;
    }
    double pvalue = 1.0;
    if (bins >= 2) {
      boost::math::chi_squared_distribution<double> chi(bins - 1);
      pvalue = std::isfinite(stat) ? boost::math::cdf(boost::math::complement(chi, stat)) : 0.0;
    }
    min_p = std::min(min_p, pvalue);
    low += pvalue <= 0.01;
  }
  const uint32_t allowed = AllowedExceedances(20, 0.01);
  return {low <= allowed && min_p > 1e-6,
          Format("20 curves at 1e5 draws, %u with p <= 0.01 (allowed %u), min p %.4f", low, allowed,
                 min_p)};
}

// 7. Exhaustive monotonicity and DR-submodularity of h, ĝ and g.
Outcome Submodularity() {
  RandomStream master(707);
  uint64_t checks = 0, failures = 0;
  for (uint32_t t = 0; t < 50; ++t) {
    RandomStream rng = master.Split(t);
    const uint32_t d = 1 + static_cast<uint32_t>(rng.Below(3));
    const int32_t K = 1 + static_cast<int32_t>(rng.Below(4));
    testing::InstanceShape shape;
    shape.lt = t % 2 == 1;
    testing::Instance inst = testing::RandomInstance(shape, rng);
    // Curves one step longer than K so x + e_j stays in range for x <= K.
    inst.model = testing::RandomModel(inst.graph.num_nodes(), d, K + 1, rng);
    RRCollection c = GenerateCollection(inst.graph, inst.params, nullptr, 500, rng.Split(1));
    ExactOracle oracle(inst.graph, inst.params);
    const NodeId n = inst.graph.num_nodes();
    const int32_t side = K + 2;
    // Tables over [0, K + 1]^d: functions 0..n-1 are h_v, then ĝ, then g.
    std::vector<std::vector<double>> table(n + 2, std::vector<double>(std::pow(side, d)));
    ForEachBoxPoint(d, K + 1, [&](const StrategyMix& x) {
      const uint32_t i = BoxIndex(x, side);
      auto h = AllHValues(inst.model, x);
      for (NodeId v = 0; v < n; ++v) table[v][i] = h[v];
      table[n][i] = GHatFromH(c, h);
      table[n + 1][i] = oracle.SpreadFromH(h);
    });
    auto gain = [&](const std::vector<double>& f, const StrategyMix& x, uint32_t j) {
      StrategyMix y = x;
      ++y.steps[j];
      return f[BoxIndex(y, side)] - f[BoxIndex(x, side)];
    };
    std::vector<StrategyMix> box;
    ForEachBoxPoint(d, K, [&](const StrategyMix& x) { box.push_back(x); });
    for (size_t f = 0; f < table.size(); ++f) {
      const double tol = f == n ? 1e-9 : 1e-12;
      for (const StrategyMix& x : box) {
        for (uint32_t j = 0; j < d; ++j) {
          const double gx = gain(table[f], x, j);
          ++checks;
          failures += gx < -tol;
          for (const StrategyMix& y : box) {
            bool geq = true;
            for (uint32_t k = 0; k < d; ++k) geq &= y.steps[k] >= x.steps[k];
            if (!geq) continue;
            ++checks;
            failures += gain(table[f], y, j) > gx + tol;
          }
        }
      }
    }
  }
  return {failures == 0, Format("50 instances, %llu checks, %llu failures",
                                static_cast<unsigned long long>(checks),
                                static_cast<unsigned long long>(failures))};
}

// 8. Partition-matroid budgets.
Outcome PartitionedBudgets() {
  RandomStream master(808);
  uint32_t ok_prr = 0, ok_vsn = 0, cap_violations = 0;
  SolveOptions opt;
  opt.imm = {0.3, 1.0};
  for (uint32_t r = 0; r < 100; ++r) {
    RandomStream rng = master.Split(r);
    testing::InstanceShape shape;
    shape.min_d = shape.max_d = 4;
    testing::Instance inst = testing::RandomInstance(shape, rng);
    const int32_t K = inst.lattice.budget_steps;
    std::vector<int32_t> caps{1 + static_cast<int32_t>(rng.Below(K)),
                              1 + static_cast<int32_t>(rng.Below(K))};
    BudgetConstraint bc = BudgetConstraint::Partitioned(4, {{0, 1}, {2, 3}}, caps);
    LatticeConfig lattice = inst.lattice;
    lattice.budget_steps = std::max(caps[0], caps[1]);
    ExactOracle oracle(inst.graph, inst.params);
    const double best = ExactOpt(oracle, inst.model, lattice, bc).spread;
    SolveResult a = ImmPrr(inst.graph, inst.params, inst.model, lattice, bc, opt, rng.Split(1));
    SolveResult b = ImmVsn(inst.graph, inst.params, inst.model, lattice, bc, opt, rng.Split(2));
    cap_violations += !IsFeasible(a.x, bc) + !IsFeasible(b.x, bc);
    ok_prr += oracle.G(inst.model, a.x) >= 0.4 * best - 1e-12;
    ok_vsn += oracle.G(inst.model, b.x) >= 0.4 * best - 1e-12;
  }
  return {cap_violations == 0 && ok_prr >= 95 && ok_vsn >= 95,
          Format("cap violations %u; immprr %u/100, immvsn %u/100 at >= 0.4 OPT", cap_violations,
                 ok_prr, ok_vsn)};
}

struct SegmentedInstance {
  LoadedDataset data;
  ActivationModel model;
};

const SegmentedInstance& Segmented() {
  static const SegmentedInstance inst = [] {
    DatasetSpec ds;
    ds.generate = true;
    ds.gen_nodes = 10000;
    ds.gen_edges = 50000;
    ds.gen_seed = 1;
    SegmentedInstance s{LoadDataset(ds), {}};
    ScenarioSpec sc;
    RandomStream rng(2);
    s.model = BuildScenario(s.data.graph, sc, MakeLattice(200, 1.0, 50), rng);
    return s;
  }();
  return inst;
}

// 9. Wall clock of the two algorithms on the segmented-event instance.
Outcome PerformanceTrend() {
  const SegmentedInstance& s = Segmented();
  const LatticeConfig lattice = MakeLattice(200, 1.0, 50);
  const BudgetConstraint bc = BudgetConstraint::Total(50);
  SolveOptions opt;
  opt.imm = {0.5, 1.0};
  std::vector<double> prr, vsn;
  for (uint32_t rep = 0; rep < 3; ++rep) {
    auto t0 = std::chrono::steady_clock::now();
    ImmPrr(s.data.graph, s.data.params, s.model, lattice, bc, opt, RandomStream(10 + rep));
    prr.push_back(Seconds(t0));
    t0 = std::chrono::steady_clock::now();
    ImmVsn(s.data.graph, s.data.params, s.model, lattice, bc, opt, RandomStream(10 + rep));
    vsn.push_back(Seconds(t0));
  }
  std::sort(prr.begin(), prr.end());
  std::sort(vsn.begin(), vsn.end());
  return {vsn[1] <= prr[1] && prr[2] < 600.0 && vsn[2] < 600.0,
          Format("median of 3: immvsn %.3f s, immprr %.3f s (n=1e4, m=5e4, d=200, k=50)", vsn[1],
                 prr[1])};
}

// 10. Evaluated immvsn spread against k.
Outcome SpreadMonotonicity() {
  const SegmentedInstance& s = Segmented();
  SolveOptions opt;
  opt.imm = {0.5, 1.0};
  std::vector<SpreadEstimate> est;
  std::string trace;
  for (int32_t k = 5; k <= 50; k += 5) {
    const LatticeConfig lattice = MakeLattice(200, 1.0, k);
    SolveResult r = ImmVsn(s.data.graph, s.data.params, s.model, lattice,
                           BudgetConstraint::Total(k), opt, RandomStream(20 + k));
    est.push_back(SimulateSpreadMix(s.data.graph, s.data.params, s.model, r.x, 10000,
                                    RandomStream(30 + k)));
    trace += Format("%s%.0f", trace.empty() ? "" : " ", est.back().mean);
  }
  uint32_t drops = 0;
  for (size_t i = 1; i < est.size(); ++i) {
    const double se = std::sqrt(est[i].se * est[i].se + est[i - 1].se * est[i - 1].se);
    drops += est[i].mean < est[i - 1].mean - se;
  }
  return {drops == 0, Format("k=5..50 spreads %s; %u drops beyond 1 SE", trace.c_str(), drops)};
}

// 11. Every shipped config twice with timing disabled.
Outcome Determinism() {
  const std::vector<std::string> configs = {"segmented_er.json", "personalized_dm.json",
                                            "mclg_small.json"};
  uint32_t identical = 0;
  size_t rows = 0;
  for (const std::string& name : configs) {
    ExperimentConfig c = LoadConfig(std::string(LIM_SOURCE_DIR) + "/configs/" + name);
    c.record_timing = false;
    ExperimentReport a = RunExperiment(c);
    ExperimentReport b = RunExperiment(c);
    identical += a.csv == b.csv && a.meta_json == b.meta_json && a.failed_cells == 0;
    rows += std::count(a.csv.begin(), a.csv.end(), '\n') - 1;
  }
  return {identical == configs.size(),
          Format("%u/%zu configs byte-identical across two runs (%zu rows)", identical,
                 configs.size(), rows)};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> all = {
      {1, "oracle agreement", OracleAgreement},
      {2, "approximation", Approximation},
      {3, "delta equivalence", DeltaEquivalence},
      {4, "reduction fidelity", ReductionFidelity},
      {5, "prefix dominance", PrefixDominance},
      {6, "sampler distribution", SamplerDistribution},
      {7, "submodularity sweeps", Submodularity},
      {8, "partitioned budgets", PartitionedBudgets},
      {9, "performance trend", PerformanceTrend},
      {10, "spread monotonicity in k", SpreadMonotonicity},
      {11, "determinism", Determinism},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const Criterion& c : all) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), Seconds(t0));
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
