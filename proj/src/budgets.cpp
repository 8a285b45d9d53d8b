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

#include "lim/budgets.hpp"

#include <algorithm>
#include <numeric>

#include "lim/error.hpp"

namespace lim {

BudgetConstraint BudgetConstraint::Total(int32_t budget_steps) {
  if (budget_steps < 0) Fail(ErrorCode::kInvalidArgument, "negative budget");
  BudgetConstraint c;
  c.total_steps_ = budget_steps;
  return c;
}

BudgetConstraint BudgetConstraint::Partitioned(uint32_t d,
                                               std::vector<std::vector<StrategyIndex>> groups,
                                               std::vector<int32_t> caps) {
  if (groups.empty()) Fail(ErrorCode::kInvalidArgument, "partition needs at least one group");
  if (groups.size() != caps.size()) {
    Fail(ErrorCode::kInvalidArgument, "need one cap per group");
  }
  BudgetConstraint c;
  c.group_of_.assign(d, UINT32_MAX);
  for (uint32_t g = 0; g < groups.size(); ++g) {
    if (groups[g].size() < 2) {
      Fail(ErrorCode::kInvalidArgument,
           "group " + std::to_string(g) + " has fewer than two strategies; use a per-strategy cap");
    }
    if (caps[g] < 0) Fail(ErrorCode::kInvalidArgument, "negative group cap");
    for (StrategyIndex j : groups[g]) {
      if (j >= d) Fail(ErrorCode::kRange, "group member outside [0, d)");
      if (c.group_of_[j] != UINT32_MAX) {
        Fail(ErrorCode::kInvalidArgument, "strategy " + std::to_string(j) + " in two groups");
      }
      c.group_of_[j] = g;
    }
  }
  if (std::find(c.group_of_.begin(), c.group_of_.end(), UINT32_MAX) != c.group_of_.end()) {
    Fail(ErrorCode::kInvalidArgument, "groups do not cover every strategy");
  }
  c.total_steps_ = std::accumulate(caps.begin(), caps.end(), int32_t{0});
  c.groups_ = std::move(groups);
  c.caps_ = std::move(caps);
  return c;
}

bool IsFeasible(const StrategyMix& x, const BudgetConstraint& c) {
  for (int32_t s : x.steps) {
    if (s < 0) return false;
  }
  if (!c.is_partitioned()) return x.total_steps() <= c.total_steps();
  std::vector<int64_t> used(c.groups().size(), 0);
  for (StrategyIndex j = 0; j < x.dimension(); ++j) {
    if (x.steps[j] == 0) continue;
    uint32_t g = c.group_of(j);
    if (g >= used.size()) return false;
    used[g] += x.steps[j];
  }
  for (size_t g = 0; g < used.size(); ++g) {
    if (used[g] > c.caps()[g]) return false;
  }
  return true;
}

std::vector<StrategyIndex> FeasibleIncrements(const StrategyMix& x, const BudgetConstraint& c) {
  if (!IsFeasible(x, c)) {
    Fail(ErrorCode::kContractViolation, "mix " + FormatMix(x) + " violates the budget");
  }
  BudgetTracker tracker(c, x.dimension());
  for (StrategyIndex j = 0; j < x.dimension(); ++j) {
    for (int32_t s = 0; s < x.steps[j]; ++s) tracker.Increment(j);
  }
  std::vector<StrategyIndex> out;
  for (StrategyIndex j = 0; j < x.dimension(); ++j) {
    if (tracker.CanIncrement(j)) out.push_back(j);
  }
  return out;
}

BudgetTracker::BudgetTracker(const BudgetConstraint& c, uint32_t d) : constraint_(&c) {
  if (c.is_partitioned()) {
    size_t covered = 0;
    for (const auto& g : c.groups()) covered += g.size();
    if (covered != d) Fail(ErrorCode::kInvalidArgument, "partition does not match dimension");
    used_.assign(c.groups().size(), 0);
  }
}

bool BudgetTracker::CanIncrement(StrategyIndex j) const {
  if (used_total_ >= constraint_->total_steps()) return false;
  if (!constraint_->is_partitioned()) return true;
  uint32_t g = constraint_->group_of(j);
  return used_[g] < constraint_->caps()[g];
}

void BudgetTracker::Increment(StrategyIndex j) {
  ++used_total_;
  if (constraint_->is_partitioned()) ++used_[constraint_->group_of(j)];
}

bool BudgetTracker::Exhausted() const { return used_total_ >= constraint_->total_steps(); }

}  // namespace lim
