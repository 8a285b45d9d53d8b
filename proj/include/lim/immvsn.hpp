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
#include <optional>
#include <span>
#include <vector>

#include "lim/budgets.hpp"
#include "lim/eval.hpp"
#include "lim/graph.hpp"
#include "lim/immprr.hpp"
#include "lim/random.hpp"
#include "lim/strategy.hpp"

namespace lim {

// u_{j,i}: the i-th δ-increment of strategy j, 1 <= i <= K.
struct VirtualNodeId {
  StrategyIndex j = 0;
  int32_t i = 1;

  friend bool operator==(const VirtualNodeId&, const VirtualNodeId&) = default;
};

// G plus virtual strategy nodes U_j. The LT weight of u_{j,i} -> v is
// q_{v,j}(iδ) - q_{v,j}((i-1)δ); virtual edges are never materialized and
// both weights and sampling read the activation model's q tables.
class AugmentedGraph {
 public:
  // Throws kInvalidArgument for curves that are not valid concave curves on
  // 0..K unless `force`, and kUnsupported for black-box models.
  AugmentedGraph(const DirectedGraph& graph, const TriggeringParams& params,
                 const ActivationModel& model, const LatticeConfig& lattice, bool force = false);

  const DirectedGraph& graph() const { return *graph_; }
  const TriggeringParams& params() const { return *params_; }
  const ActivationModel& model() const { return *model_; }
  uint32_t num_strategies() const { return model_->num_strategies(); }
  int32_t budget_steps() const { return K_; }
  uint64_t num_virtual() const { return uint64_t{num_strategies()} * K_; }

  uint32_t Pack(VirtualNodeId u) const { return u.j * static_cast<uint32_t>(K_) + (u.i - 1); }
  VirtualNodeId Unpack(uint32_t id) const {
    return {id / static_cast<uint32_t>(K_), static_cast<int32_t>(id % K_) + 1};
  }

  // C_{v,j}(i) = q_{v,j}(iδ) and w(u_{j,i}, v) = C(i) - C(i-1).
  double Cumulative(NodeId v, StrategyIndex j, int32_t i) const;
  double Weight(NodeId v, StrategyIndex j, int32_t i) const;

  // One LT draw over u_{j,1..K} for the arm (v, j) by binary search on C.
  std::optional<VirtualNodeId> SampleArm(const StrategyArm& arm, RandomStream& rng) const;

 private:
  const DirectedGraph* graph_;
  const TriggeringParams* params_;
  const ActivationModel* model_;
  int32_t K_;
};

std::optional<VirtualNodeId> SampleVirtualArm(const AugmentedGraph& aug, NodeId v, StrategyIndex j,
                                              RandomStream& rng);

struct HybridRRSet {
  NodeId root = 0;
  std::vector<NodeId> real_members;            // sorted
  std::vector<VirtualNodeId> virtual_members;  // sorted by packed id, no repeats
};

HybridRRSet GenerateHybridRRSet(const AugmentedGraph& aug, NodeId root, RandomStream& rng);

// RR sets on G_A rooted at real nodes. Only the virtual members of each set
// are kept; sets with none are counted in theta() but not stored.
class HybridCollection {
 public:
  HybridCollection(const AugmentedGraph& aug, RandomStream base);

  void Extend(uint64_t count);
  void ExtendTo(uint64_t target) {
    if (target > theta_) Extend(target - theta_);
  }

  uint64_t theta() const { return theta_; }
  uint64_t num_stored() const { return offsets_.size() - 1; }
  // Packed virtual ids of the s-th stored set.
  std::span<const uint32_t> virtual_members(uint64_t s) const {
    return {members_.data() + offsets_[s], members_.data() + offsets_[s + 1]};
  }
  const AugmentedGraph& aug() const { return *aug_; }

 private:
  const AugmentedGraph* aug_;
  RandomStream base_;
  uint64_t theta_ = 0;
  std::vector<uint64_t> offsets_{0};
  std::vector<uint32_t> members_;
};

struct VirtualSelection {
  StrategyMix x;
  std::vector<VirtualNodeId> seeds;  // in pick order
  uint64_t covered = 0;
  double estimate = 0.0;  // n · covered / θ
};

// Greedy maximum coverage over virtual nodes (ties to the lowest packed id),
// then prefix conversion x_j = |S ∩ U_j|. Stops when nothing feasible adds
// coverage. Throws kUndefinedEstimate on an empty collection.
VirtualSelection NodeSelectionVirtual(const HybridCollection& collection,
                                      const BudgetConstraint& constraint);

SolveResult ImmVsn(const DirectedGraph& graph, const TriggeringParams& params,
                   const ActivationModel& model, const LatticeConfig& lattice,
                   const BudgetConstraint& constraint, const SolveOptions& options,
                   RandomStream rng);

// Probability that the arm (v, j) draws a member of `steps` (indices i of
// active u_{j,i}).
double VirtualArmProbability(const AugmentedGraph& aug, NodeId v, StrategyIndex j,
                             std::span<const int32_t> steps);

// Per-node probability of being seeded directly when `seeds` are the active
// virtual nodes.
std::vector<double> VirtualSeedProbabilities(const AugmentedGraph& aug,
                                             std::span<const VirtualNodeId> seeds);

// Monte-Carlo spread over real nodes in G_A when `seeds` are the initially
// active virtual nodes: each arm (v, j) draws its LT in-neighbour and v
// starts active if any draw hits a seed.
SpreadEstimate SimulateVirtualSeeds(const AugmentedGraph& aug, std::span<const VirtualNodeId> seeds,
                                    uint64_t runs, RandomStream rng);

// Prefix seed set S^x = {u_{j,i} : i <= x_j}.
std::vector<VirtualNodeId> PrefixSeeds(const StrategyMix& x);

}  // namespace lim
