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

#include "lim/strategy.hpp"

namespace lim {

// Feasible region for greedy increments: a total budget (uniform matroid
// over step increments) or per-group budgets over a partition of [d]
// (partition matroid).
class BudgetConstraint {
 public:
  static BudgetConstraint Total(int32_t budget_steps);
  // groups must partition [0, d) with every group of size > 1.
  static BudgetConstraint Partitioned(uint32_t d, std::vector<std::vector<StrategyIndex>> groups,
                                      std::vector<int32_t> caps);

  bool is_partitioned() const { return !groups_.empty(); }
  // Upper bound on the number of greedy increments.
  int32_t total_steps() const { return total_steps_; }
  const std::vector<std::vector<StrategyIndex>>& groups() const { return groups_; }
  const std::vector<int32_t>& caps() const { return caps_; }
  // Group of strategy j (0 for total budgets).
  uint32_t group_of(StrategyIndex j) const {
    if (group_of_.empty()) return 0;
    return j < group_of_.size() ? group_of_[j] : UINT32_MAX;
  }

 private:
  int32_t total_steps_ = 0;
  std::vector<std::vector<StrategyIndex>> groups_;
  std::vector<int32_t> caps_;
  std::vector<uint32_t> group_of_;
};

bool IsFeasible(const StrategyMix& x, const BudgetConstraint& c);

// All j such that x + δe_j stays feasible. Throws kContractViolation if x
// itself is infeasible.
std::vector<StrategyIndex> FeasibleIncrements(const StrategyMix& x, const BudgetConstraint& c);

// Incremental feasibility bookkeeping for greedy loops: O(1) per query.
class BudgetTracker {
 public:
  BudgetTracker(const BudgetConstraint& c, uint32_t d);

  bool CanIncrement(StrategyIndex j) const;
  void Increment(StrategyIndex j);
  bool Exhausted() const;

 private:
  const BudgetConstraint* constraint_;
  std::vector<int32_t> used_;  // per group
  int32_t used_total_ = 0;
};

}  // namespace lim
