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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "lim/error.hpp"
#include "lim/eval.hpp"
#include "support.hpp"

using namespace lim;

namespace {

uint64_t Binomial(uint64_t n, uint64_t k) {
  uint64_t r = 1;
  for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("empty and full seed sets") {
  RandomStream rng(1);
  testing::Instance inst = testing::RandomInstance({}, rng);
  const NodeId n = inst.graph.num_nodes();
  SpreadEstimate none = SimulateSpreadSeeds(inst.graph, inst.params, {}, 100, RandomStream(1));
  CHECK(none.mean == 0.0);
  CHECK(none.se == 0.0);
  std::vector<NodeId> all(n);
  for (NodeId v = 0; v < n; ++v) all[v] = v;
  SpreadEstimate full = SimulateSpreadSeeds(inst.graph, inst.params, all, 100, RandomStream(1));
  CHECK(full.mean == n);
  CHECK(full.runs == 100);

  ExactOracle oracle(inst.graph, inst.params);
  CHECK(oracle.Sigma(0) == 0.0);
  CHECK(oracle.Sigma((1u << n) - 1) == doctest::Approx(n));
}

TEST_CASE("chain spreads") {
  DirectedGraph g(3, std::vector<DirectedGraph::Edge>{{0, 1, 0.5}, {1, 2, 0.5}});
  for (Diffusion kind : {Diffusion::kIC, Diffusion::kLT}) {
    TriggeringParams p = ParamsFromFile(g, kind);
    ExactOracle oracle(g, p);
    CHECK(oracle.Sigma(0b001) == doctest::Approx(1.75));
    CHECK(oracle.Sigma(0b010) == doctest::Approx(1.5));
    CHECK(oracle.Sigma(0b101) == doctest::Approx(2.5));
    std::vector<NodeId> seeds{0};
    SpreadEstimate mc = SimulateSpreadSeeds(g, p, seeds, 200000, RandomStream(2));
    CHECK(std::fabs(mc.mean - 1.75) < 4 * mc.se);
  }
}

TEST_CASE("LT picks at most one in-neighbour") {
  // Two parents with weight 0.5 each: the child is reached with probability
  // 1 under LT when both are seeded, 0.75 under IC.
  DirectedGraph g(3, std::vector<DirectedGraph::Edge>{{0, 2, 0.5}, {1, 2, 0.5}});
  CHECK(ExactOracle(g, ParamsFromFile(g, Diffusion::kLT)).Sigma(0b011) == doctest::Approx(3.0));
  CHECK(ExactOracle(g, ParamsFromFile(g, Diffusion::kIC)).Sigma(0b011) == doctest::Approx(2.75));
  CHECK(ExactOracle(g, ParamsFromFile(g, Diffusion::kLT)).Sigma(0b001) == doctest::Approx(1.5));
}

TEST_CASE("g from seeding probabilities") {
  DirectedGraph one(1, std::vector<DirectedGraph::Edge>{});
  ExactOracle lonely(one, AssignUniform(one, Diffusion::kIC, 0.0));
  std::vector<double> h{0.75};
  CHECK(lonely.SpreadFromH(h) == doctest::Approx(0.75));

  DirectedGraph uv(2, std::vector<DirectedGraph::Edge>{{0, 1, 1.0}});
  ExactOracle pair(uv, AssignUniform(uv, Diffusion::kIC, 1.0));
  std::vector<double> hu{0.5, 0.0};
  CHECK(pair.SpreadFromH(hu) == doctest::Approx(1.0));
  std::vector<double> both{0.5, 0.5};
  CHECK(pair.SpreadFromH(both) == doctest::Approx(0.5 * 2 + 0.5 * 0.5));
  auto act = pair.ActivationProbabilities(both);
  CHECK(act[0] == doctest::Approx(0.5));
  CHECK(act[1] == doctest::Approx(0.75));
}

TEST_CASE("activation probabilities sum to the spread") {
  RandomStream rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    testing::InstanceShape shape;
    shape.lt = trial % 2 == 0;
    testing::Instance inst = testing::RandomInstance(shape, rng);
    ExactOracle oracle(inst.graph, inst.params);
    std::vector<double> h(inst.graph.num_nodes());
    for (double& v : h) v = rng.Bernoulli(0.3) ? 0.0 : rng.Uniform();
    auto act = oracle.ActivationProbabilities(h);
    double sum = 0.0;
    for (NodeId v = 0; v < h.size(); ++v) {
      CHECK(act[v] >= h[v] - 1e-12);
      CHECK(act[v] <= 1.0 + 1e-12);
      sum += act[v];
    }
    CHECK(sum == doctest::Approx(oracle.SpreadFromH(h)));
  }
}

TEST_CASE("Monte Carlo agrees with enumeration") {
  RandomStream rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    testing::InstanceShape shape;
    shape.lt = trial % 2 == 1;
    testing::Instance inst = testing::RandomInstance(shape, rng);
    StrategyMix x(inst.lattice.d);
    for (auto& s : x.steps) s = static_cast<int32_t>(rng.Below(inst.lattice.budget_steps + 1));
    const double exact = ExactG(inst.graph, inst.params, inst.model, x);
    SpreadEstimate mc =
        SimulateSpreadMix(inst.graph, inst.params, inst.model, x, 50000, rng.Split(trial));
    CHECK(std::fabs(mc.mean - exact) <= 4 * mc.se + 1e-9);
  }
}

TEST_CASE("simulation is reproducible") {
  RandomStream rng(5);
  testing::Instance inst = testing::RandomInstance({}, rng);
  StrategyMix x(inst.lattice.d);
  x.steps[0] = 1;
  SpreadEstimate a = SimulateSpreadMix(inst.graph, inst.params, inst.model, x, 1000, RandomStream(7));
  SpreadEstimate b = SimulateSpreadMix(inst.graph, inst.params, inst.model, x, 1000, RandomStream(7));
  CHECK(a.mean == b.mean);
  CHECK(a.se == b.se);
}

TEST_CASE("oracle size guard") {
  RandomStream rng(6);
  DirectedGraph g = testing::RandomGraph(6, 13, rng);
  TriggeringParams p = testing::RandomParams(g, false, rng);
  try {
    ExactOracle oracle(g, p);
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSizeGuard);
  }
  DirectedGraph wide(13, std::vector<DirectedGraph::Edge>{});
  CHECK_THROWS_AS(ExactOracle(wide, AssignUniform(wide, Diffusion::kIC, 0.0)), Error);
}

TEST_CASE("exact optimum by enumeration") {
  RandomStream rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    testing::Instance inst = testing::RandomInstance({}, rng);
    ExactOracle oracle(inst.graph, inst.params);
    BudgetConstraint bc = BudgetConstraint::Total(inst.lattice.budget_steps);
    ExactOptResult opt = ExactOpt(oracle, inst.model, inst.lattice, bc);
    CHECK(opt.points == Binomial(inst.lattice.budget_steps + inst.lattice.d, inst.lattice.d));
    double best = -1.0;
    StrategyMix arg;
    uint64_t count = 0;
    ForEachFeasiblePoint(inst.lattice, bc, [&](const StrategyMix& x) {
      ++count;
      double v = ExactG(inst.graph, inst.params, inst.model, x);
      if (v > best + 1e-12) {
        best = v;
        arg = x;
      }
    });
    CHECK(count == opt.points);
    CHECK(opt.spread == doctest::Approx(best));
    CHECK(opt.x == arg);
  }
}

TEST_CASE("exact optimum corner cases") {
  RandomStream rng(8);
  testing::InstanceShape shape;
  shape.max_d = 1;
  testing::Instance inst = testing::RandomInstance(shape, rng);
  ExactOptResult zero = ExactOpt(inst.graph, inst.params, inst.model, LatticeConfig{1, 1.0, 0},
                                 BudgetConstraint::Total(0));
  CHECK(zero.x.is_zero());
  CHECK(zero.spread == 0.0);
  CHECK(zero.points == 1);
  ExactOptResult one = ExactOpt(inst.graph, inst.params, inst.model, inst.lattice,
                                BudgetConstraint::Total(inst.lattice.budget_steps));
  CHECK(one.x.steps[0] == inst.lattice.budget_steps);

  LatticeConfig huge{20, 1.0, 20};
  ActivationModel m = testing::RandomModel(inst.graph.num_nodes(), 20, 20, rng);
  try {
    ExactOpt(inst.graph, inst.params, m, huge, BudgetConstraint::Total(20));
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSizeGuard);
  }
}

TEST_CASE("partitioned enumeration respects caps") {
  LatticeConfig lattice{4, 1.0, 3};
  BudgetConstraint bc = BudgetConstraint::Partitioned(4, {{0, 1}, {2, 3}}, {1, 2});
  uint64_t count = 0;
  ForEachFeasiblePoint(lattice, bc, [&](const StrategyMix& x) {
    ++count;
    CHECK(IsFeasible(x, bc));
  });
  // 3 ways for group 0 (sum <= 1), 6 for group 1 (sum <= 2).
  CHECK(count == 18);
}
