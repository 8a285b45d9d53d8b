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
#include <vector>

#include "lim/budgets.hpp"
#include "lim/graph.hpp"
#include "lim/random.hpp"
#include "lim/rrset.hpp"
#include "lim/strategy.hpp"

namespace lim {

// Lattice greedy with g estimated by `sims` forward simulations. All
// candidates of one greedy step share the stream rng.Split(step).
StrategyMix Mclg(const DirectedGraph& graph, const TriggeringParams& params,
                 const ActivationModel& model, const LatticeConfig& lattice,
                 const BudgetConstraint& constraint, uint64_t sims, RandomStream rng);

// Largest step count per coordinate that the model's curves are defined for,
// further limited by `value_cap` (in budget units, <= 0 for none).
std::vector<int32_t> CoordinateCaps(const ActivationModel& model, const LatticeConfig& lattice,
                                    double value_cap);

// Uniform discount on the personalized scenario: for c = 0.1, ..., 1.0 give
// c to ⌊k/c⌋ nodes picked greedily by ĝ gain on `collection`; keep the
// candidate with the highest ĝ.
StrategyMix Ud(const RRCollection& collection, const ActivationModel& model,
               const LatticeConfig& lattice);

// Coordinate descent from `start`: sweeps ordered pairs (a, b) in
// lexicographic order and moves δ from a to b whenever ĝ strictly increases,
// until a sweep changes nothing or 100 sweeps have run.
StrategyMix Cd(const RRCollection& collection, const ActivationModel& model,
               const LatticeConfig& lattice, const StrategyMix& start, int32_t max_sweeps = 100);

// High-degree proportional: the top `m_nodes` nodes by out-degree get
// ⌊K·deg/Σdeg⌋ steps each, leftovers go one at a time in degree order.
// Coordinates never exceed `caps`.
StrategyMix Hd(const DirectedGraph& graph, const LatticeConfig& lattice, NodeId m_nodes,
               const std::vector<int32_t>& caps);

}  // namespace lim
