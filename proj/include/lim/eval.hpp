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

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lim/budgets.hpp"
#include "lim/graph.hpp"
#include "lim/random.hpp"
#include "lim/strategy.hpp"

namespace lim {

struct SpreadEstimate {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
  uint64_t runs = 0;
};

// Forward cascade with per-worker scratch. LT in-edge choices are drawn
// lazily, at most once per node per run.
class CascadeSimulator {
 public:
  CascadeSimulator(const DirectedGraph& graph, const TriggeringParams& params);

  // Number of nodes active at the end of one cascade from `seeds`.
  uint32_t Run(std::span<const NodeId> seeds, RandomStream& rng);

 private:
  bool Activate(NodeId v);

  const DirectedGraph* graph_;
  const TriggeringParams* params_;
  std::vector<uint32_t> active_;
  std::vector<uint32_t> drawn_;
  std::vector<EdgeIndex> choice_;
  std::vector<NodeId> frontier_;
  uint32_t epoch_ = 0;
};

// Draws the initial seed set of one run into `seeds`.
using SeedSampler = std::function<void(RandomStream&, std::vector<NodeId>& seeds)>;

// Runs r = 0..runs-1 with streams rng.Split(r); deterministic for any
// thread count.
SpreadEstimate SimulateSpread(const DirectedGraph& graph, const TriggeringParams& params,
                              const SeedSampler& sampler, uint64_t runs, RandomStream rng);

SpreadEstimate SimulateSpreadSeeds(const DirectedGraph& graph, const TriggeringParams& params,
                                   std::span<const NodeId> seeds, uint64_t runs, RandomStream rng);

// Every node is seeded independently with probability h_v(x), then the
// cascade runs.
SpreadEstimate SimulateSpreadMix(const DirectedGraph& graph, const TriggeringParams& params,
                                 const ActivationModel& model, const StrategyMix& x, uint64_t runs,
                                 RandomStream rng);

// Exact spread on small instances by enumerating live-edge graphs. Expected
// reach of every seed subset is precomputed once, so each g(x) query is a
// sum over subsets of the nodes with h_v > 0.
class ExactOracle {
 public:
  static constexpr EdgeIndex kMaxEdges = 12;
  static constexpr NodeId kMaxNodes = 12;

  // Throws kSizeGuard beyond kMaxEdges or kMaxNodes.
  ExactOracle(const DirectedGraph& graph, const TriggeringParams& params);

  NodeId num_nodes() const { return n_; }
  // σ(S) for the node bitmask S.
  double Sigma(uint32_t mask) const { return sigma_[mask]; }
  double SpreadFromH(std::span<const double> h) const;
  // Probability that each node is active at the end.
  std::vector<double> ActivationProbabilities(std::span<const double> h) const;
  double G(const ActivationModel& model, const StrategyMix& x) const;

 private:
  NodeId n_;
  std::vector<double> live_probability_;
  std::vector<std::vector<uint32_t>> live_reach_;  // per live graph, per node
  std::vector<double> sigma_;
};

double ExactG(const DirectedGraph& graph, const TriggeringParams& params,
              const ActivationModel& model, const StrategyMix& x);

struct ExactOptResult {
  StrategyMix x;
  double spread = 0.0;
  uint64_t points = 0;  // feasible lattice points examined
};

inline constexpr uint64_t kMaxLatticePoints = 100000;

// Every feasible lattice point with 0 <= x_j <= K; the first maximizer in
// lexicographic order wins. Throws kSizeGuard above kMaxLatticePoints.
ExactOptResult ExactOpt(const ExactOracle& oracle, const ActivationModel& model,
                        const LatticeConfig& lattice, const BudgetConstraint& constraint);
ExactOptResult ExactOpt(const DirectedGraph& graph, const TriggeringParams& params,
                        const ActivationModel& model, const LatticeConfig& lattice,
                        const BudgetConstraint& constraint);

// Calls fn(x) for every feasible lattice point in lexicographic order.
void ForEachFeasiblePoint(const LatticeConfig& lattice, const BudgetConstraint& constraint,
                          const std::function<void(const StrategyMix&)>& fn);

}  // namespace lim
