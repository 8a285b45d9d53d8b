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

#include "lim/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "lim/error.hpp"
#include "lim/eval.hpp"
#include "lim/immprr.hpp"

namespace lim {

StrategyMix Mclg(const DirectedGraph& graph, const TriggeringParams& params,
                 const ActivationModel& model, const LatticeConfig& lattice,
                 const BudgetConstraint& constraint, uint64_t sims, RandomStream rng) {
  if (sims == 0) Fail(ErrorCode::kInvalidArgument, "MC-LGreedy needs sims >= 1");
  // x and every x + δe_j of one step differ in total by one, so indexing the
  // stream by total steps gives common random numbers within a step.
  auto objective = [&](const StrategyMix& x) {
    return SimulateSpreadMix(graph, params, model, x, sims,
                             rng.Split(static_cast<uint64_t>(x.total_steps())))
        .mean;
  };
  return LGreedy(objective, lattice, constraint);
}

std::vector<int32_t> CoordinateCaps(const ActivationModel& model, const LatticeConfig& lattice,
                                    double value_cap) {
  std::vector<int32_t> caps(lattice.d, lattice.budget_steps);
  if (value_cap > 0.0) {
    auto c = static_cast<int32_t>(std::floor(value_cap / lattice.delta + 1e-9));
    for (auto& cap : caps) cap = std::min(cap, c);
  }
  if (model.is_independent()) {
    for (NodeId v = 0; v < model.num_nodes(); ++v) {
      for (const StrategyArm& arm : model.arms(v)) {
        caps[arm.strategy] = std::min(caps[arm.strategy], model.curve(arm.curve).max_steps());
      }
    }
  }
  return caps;
}

StrategyMix Ud(const RRCollection& collection, const ActivationModel& model,
               const LatticeConfig& lattice) {
  if (!model.is_personalized()) {
    Fail(ErrorCode::kUnsupported, "uniform discount needs the personalized scenario");
  }
  StrategyMix best(lattice.d);
  if (collection.theta() == 0 || lattice.budget_steps == 0) return best;
  const std::vector<int32_t> caps = CoordinateCaps(model, lattice, 0.0);
  double best_value = -1.0;
  int32_t last_steps = 0;
  for (int t = 1; t <= 10; ++t) {
    const double c = 0.1 * t;
    const double ratio = c / lattice.delta;
    auto per_node = static_cast<int32_t>(std::floor(ratio + 1e-9));
    if (per_node == 0 || per_node == last_steps || per_node > lattice.budget_steps) continue;
    last_steps = per_node;
    GreedyState state(collection, model);
    std::vector<char> used(lattice.d, 0);
    const int32_t picks = lattice.budget_steps / per_node;
    for (int32_t p = 0; p < picks; ++p) {
      int64_t pick = -1;
      double pick_gain = 0.0;
      const double scale = state.Estimate();
      for (StrategyIndex v = 0; v < lattice.d; ++v) {
        if (used[v] || caps[v] < per_node) continue;
        double gain = state.ShiftGain(v, per_node);
        if (pick < 0 || GainImproves(gain, pick_gain, scale)) {
          pick = v;
          pick_gain = gain;
        }
      }
      if (pick < 0) break;
      used[pick] = 1;
      state.Apply(static_cast<StrategyIndex>(pick), per_node);
    }
    const double value = state.Estimate();
    if (best_value < 0.0 || GainImproves(value, best_value, best_value)) {
      best_value = value;
      best = state.x();
    }
  }
  return best;
}

StrategyMix Cd(const RRCollection& collection, const ActivationModel& model,
               const LatticeConfig& lattice, const StrategyMix& start, int32_t max_sweeps) {
  if (start.dimension() != lattice.d) {
    Fail(ErrorCode::kInvalidArgument, "start mix dimension does not match lattice");
  }
  if (start.total_steps() > lattice.budget_steps) {
    Fail(ErrorCode::kContractViolation, "coordinate descent start exceeds the budget");
  }
  if (collection.theta() == 0) return start;
  const std::vector<int32_t> caps = CoordinateCaps(model, lattice, 0.0);
  GreedyState state(collection, model, start);
  const uint32_t d = lattice.d;
  for (int32_t sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    for (StrategyIndex a = 0; a < d; ++a) {
      StrategyIndex b = 0;
      while (b < d && state.x().steps[a] > 0) {
        // ĝ(x - δe_a + δe_b) - ĝ(x) = Δ_b(x - δe_a) - loss_a.
        const double scale = state.Estimate();
        const double loss = -state.ShiftGain(a, -1);
        state.Apply(a, -1);
        int64_t target = -1;
        for (StrategyIndex c = b; c < d; ++c) {
          if (c == a || state.x().steps[c] >= caps[c]) continue;
          if (GainImproves(state.MarginalGain(c), loss, scale)) {
            target = c;
            break;
          }
        }
        if (target < 0) {
          state.Apply(a, +1);
          break;
        }
        state.Apply(static_cast<StrategyIndex>(target), +1);
        changed = true;
        b = static_cast<StrategyIndex>(target) + 1;
      }
    }
    if (!changed) break;
  }
  return state.x();
}

StrategyMix Hd(const DirectedGraph& graph, const LatticeConfig& lattice, NodeId m_nodes,
               const std::vector<int32_t>& caps) {
  if (lattice.d != graph.num_nodes()) {
    Fail(ErrorCode::kUnsupported, "high-degree baseline needs the personalized scenario");
  }
  if (m_nodes > graph.num_nodes()) Fail(ErrorCode::kInvalidArgument, "M exceeds n");
  if (caps.size() != lattice.d) Fail(ErrorCode::kInvalidArgument, "caps length differs from d");
  StrategyMix x(lattice.d);
  std::vector<NodeId> order = NodesByDegree(graph);
  order.resize(m_nodes);
  if (order.empty()) return x;
  const int32_t K = lattice.budget_steps;
  uint64_t degree_sum = 0;
  for (NodeId v : order) degree_sum += graph.out_degree(v);
  int64_t assigned = 0;
  for (NodeId v : order) {
    long double share = degree_sum
                            ? static_cast<long double>(K) * graph.out_degree(v) / degree_sum
                            : static_cast<long double>(K) / order.size();
    auto s = static_cast<int32_t>(std::floor(share));
    x.steps[v] = std::min(s, caps[v]);
    assigned += x.steps[v];
  }
  // Leftover steps one by one in degree order, skipping capped nodes.
  bool progress = true;
  while (assigned < K && progress) {
    progress = false;
    for (NodeId v : order) {
      if (assigned == K) break;
      if (x.steps[v] >= caps[v]) continue;
      ++x.steps[v];
      ++assigned;
      progress = true;
    }
  }
  return x;
}

}  // namespace lim
