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
#include <vector>

#include "lim/budgets.hpp"
#include "lim/graph.hpp"
#include "lim/random.hpp"
#include "lim/rrset.hpp"
#include "lim/strategy.hpp"

namespace lim {

struct ImmParams {
  double epsilon = 0.5;
  double ell = 1.0;
};

// M = min(K ln d, d ln K), natural logs, using only branches with a positive
// logarithm and floored at 1.
double ComputeM(uint32_t d, int32_t budget_steps);

// λ*(ℓ) = 2n((1 - 1/e)α + β)² / ε², α = √(ℓ ln n + ln 2),
// β = √((1 - 1/e)(M + α²)).
long double LambdaStar(uint64_t n, double epsilon, double ell, double M);

// λ' = (2 + 2ε'/3)(M + ℓ ln n + ln log₂ n) n / ε'².
long double LambdaPrime(uint64_t n, double epsilon_prime, double ell, double M);

// Smallest γ >= 0 (to within 1e-7) with ⌈λ*(ℓ + γ)⌉ ≤ n^γ.
double ComputeGamma(uint64_t n, double epsilon, double ell, double M);

// Greedy argmax comparison shared by every lattice greedy: a later candidate
// replaces the incumbent only if it is better by more than a tolerance
// relative to `scale`, so near-equal gains resolve to the lowest index.
bool GainImproves(double candidate, double incumbent, double scale);

using Objective = std::function<double(const StrategyMix&)>;

// Lattice greedy: each step adds δ to the feasible coordinate with the
// largest objective(x + δe_j). Zero-gain steps still consume budget; stops
// early only when no coordinate remains feasible.
StrategyMix LGreedy(const Objective& objective, const LatticeConfig& lattice,
                    const BudgetConstraint& constraint);

// Shared per-RR-set state for incremental greedy under independent strategy
// activation. s_i = Π_{v∈R_i} Π_{j∈S_v} (1 - q_{v,j}(x_j)) is kept as a
// product of nonzero factors plus a count of zero factors, so coordinates
// may be moved in either direction even when some q reaches 1.
class GreedyState {
 public:
  GreedyState(const RRCollection& collection, const ActivationModel& model, StrategyMix start);
  GreedyState(const RRCollection& collection, const ActivationModel& model);

  const StrategyMix& x() const { return x_; }

  // Δ_j(x) = ĝ(x + δe_j) - ĝ(x), one pass over List_j.
  double MarginalGain(StrategyIndex j) const { return ShiftGain(j, 1); }
  // ĝ(x + shift·δe_j) - ĝ(x) for any shift keeping x_j in the curve domain.
  double ShiftGain(StrategyIndex j, int32_t shift) const;
  // ĝ(x - δe_from + δe_to) - ĝ(x).
  double TransferGain(StrategyIndex from, StrategyIndex to) const;

  void Apply(StrategyIndex j, int32_t shift = 1);

  // ĝ(x).
  double Estimate() const;
  double shared_product(uint64_t i) const { return zeros_[i] ? 0.0 : prod_[i]; }
  uint64_t theta() const { return prod_.size(); }

 private:
  struct SegmentDelta {
    double ratio = 1.0;
    int32_t zero_shift = 0;
  };
  void Accumulate(SegmentDelta& seg, const ListEntry& e, int32_t from, int32_t to) const;
  double SetChange(uint32_t set, const SegmentDelta& seg) const;

  const RRCollection* collection_;
  const ActivationModel* model_;
  StrategyMix x_;
  std::vector<double> prod_;
  std::vector<uint32_t> zeros_;
  double covered_ = 0.0;  // Σ_i (1 - s_i)
};

// Δ-based lattice greedy over a collection; identical decisions to LGreedy
// on ĝ. An empty collection yields the zero vector.
StrategyMix LGreedyDelta(const RRCollection& collection, const ActivationModel& model,
                         const LatticeConfig& lattice, const BudgetConstraint& constraint);

// Outcome of the two-phase sample-size search.
struct SamplingStats {
  double gamma = 0.0;
  double ell_effective = 0.0;
  double lower_bound = 1.0;
  uint32_t stages = 0;
  bool lower_bound_found = false;
  uint64_t theta = 0;
};

// Sample-size search shared by both algorithms. `extend_to(t)` must grow the
// sample to at least t sets; `greedy_estimate()` runs the greedy on the
// current sample and returns its estimated spread.
SamplingStats RunImmSampling(uint64_t n, double M, const ImmParams& imm,
                             const std::function<void(uint64_t)>& extend_to,
                             const std::function<double()>& greedy_estimate);

struct SolveResult {
  StrategyMix x;
  uint64_t theta = 0;
  double estimate = 0.0;  // sample-based spread estimate of x
  SamplingStats sampling;
};

struct SolveOptions {
  ImmParams imm;
  bool force = false;  // accept curves that fail validation
};

// First phase: returns the RR collection sized by the sampling procedure.
RRCollection Sampling(const DirectedGraph& graph, const TriggeringParams& params,
                      const ActivationModel& model, const LatticeConfig& lattice,
                      const BudgetConstraint& constraint, const ImmParams& imm,
                      RandomStream rng, SamplingStats* stats = nullptr);

SolveResult ImmPrr(const DirectedGraph& graph, const TriggeringParams& params,
                   const ActivationModel& model, const LatticeConfig& lattice,
                   const BudgetConstraint& constraint, const SolveOptions& options,
                   RandomStream rng);

// Throws unless the model's curves pass ValidateModel (or options.force).
void RequireValidModel(const ActivationModel& model, const LatticeConfig& lattice, bool force);

}  // namespace lim
