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

#include "lim/eval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "lim/error.hpp"
#include "parallel.hpp"

namespace lim {

CascadeSimulator::CascadeSimulator(const DirectedGraph& graph, const TriggeringParams& params)
    : graph_(&graph),
      params_(&params),
      active_(graph.num_nodes(), 0),
      drawn_(params.kind == Diffusion::kLT ? graph.num_nodes() : 0, 0),
      choice_(params.kind == Diffusion::kLT ? graph.num_nodes() : 0, 0) {}

bool CascadeSimulator::Activate(NodeId v) {
  if (active_[v] == epoch_) return false;
  active_[v] = epoch_;
  frontier_.push_back(v);
  return true;
}

uint32_t CascadeSimulator::Run(std::span<const NodeId> seeds, RandomStream& rng) {
  if (++epoch_ == 0) {
    std::fill(active_.begin(), active_.end(), 0);
    std::fill(drawn_.begin(), drawn_.end(), 0);
    epoch_ = 1;
  }
  const DirectedGraph& g = *graph_;
  frontier_.clear();
  for (NodeId s : seeds) {
    if (s >= g.num_nodes()) Fail(ErrorCode::kRange, "seed outside [0, n)");
    Activate(s);
  }
  const bool ic = params_->kind == Diffusion::kIC;
  for (size_t head = 0; head < frontier_.size(); ++head) {
    NodeId u = frontier_[head];
    auto targets = g.out_targets(u);
    auto positions = g.out_in_positions(u);
    for (size_t k = 0; k < targets.size(); ++k) {
      NodeId w = targets[k];
      if (active_[w] == epoch_) continue;
      if (ic) {
        if (rng.Bernoulli(params_->values[positions[k]])) Activate(w);
      } else {
        if (drawn_[w] != epoch_) {
          drawn_[w] = epoch_;
          choice_[w] = SampleLinearThresholdEdge(g, *params_, w, rng);
        }
        if (choice_[w] == positions[k]) Activate(w);
      }
    }
  }
  return static_cast<uint32_t>(frontier_.size());
}

SpreadEstimate SimulateSpread(const DirectedGraph& graph, const TriggeringParams& params,
                              const SeedSampler& sampler, uint64_t runs, RandomStream rng) {
  if (runs == 0) Fail(ErrorCode::kInvalidArgument, "simulation needs at least one run");
  struct Worker {
    CascadeSimulator sim;
    std::vector<NodeId> seeds;
  };
  std::vector<uint32_t> counts(runs);
  detail::ParallelFor(
      runs, [&] { return Worker{CascadeSimulator(graph, params), {}}; },
      [&](Worker& w, uint64_t r) {
        RandomStream stream = rng.Split(r);
        w.seeds.clear();
        sampler(stream, w.seeds);
        counts[r] = w.sim.Run(w.seeds, stream);
      });
  // Integer sums keep the result independent of reduction order.
  unsigned __int128 sum = 0;
  unsigned __int128 sum_sq = 0;
  for (uint32_t c : counts) {
    sum += c;
    sum_sq += uint64_t{c} * c;
  }
  SpreadEstimate est;
  est.runs = runs;
  const long double N = runs;
  const long double mean = static_cast<long double>(sum) / N;
  est.mean = static_cast<double>(mean);
  if (runs > 1) {
    long double var = (static_cast<long double>(sum_sq) - N * mean * mean) / (N - 1);
    est.se = static_cast<double>(std::sqrt(std::max(0.0L, var) / N));
  }
  return est;
}

SpreadEstimate SimulateSpreadSeeds(const DirectedGraph& graph, const TriggeringParams& params,
                                   std::span<const NodeId> seeds, uint64_t runs, RandomStream rng) {
  std::vector<NodeId> fixed(seeds.begin(), seeds.end());
  return SimulateSpread(
      graph, params, [&](RandomStream&, std::vector<NodeId>& out) { out = fixed; }, runs, rng);
}

SpreadEstimate SimulateSpreadMix(const DirectedGraph& graph, const TriggeringParams& params,
                                 const ActivationModel& model, const StrategyMix& x, uint64_t runs,
                                 RandomStream rng) {
  if (model.num_nodes() != graph.num_nodes()) {
    Fail(ErrorCode::kInvalidArgument, "activation model and graph disagree on n");
  }
  std::vector<double> h = AllHValues(model, x);
  std::vector<NodeId> candidates;
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    if (h[v] > 0.0) candidates.push_back(v);
  }
  return SimulateSpread(
      graph, params,
      [&](RandomStream& stream, std::vector<NodeId>& out) {
        for (NodeId v : candidates) {
          if (stream.Bernoulli(h[v])) out.push_back(v);
        }
      },
      runs, rng);
}

ExactOracle::ExactOracle(const DirectedGraph& graph, const TriggeringParams& params)
    : n_(graph.num_nodes()) {
  if (graph.num_edges() > kMaxEdges || n_ > kMaxNodes) {
    Fail(ErrorCode::kSizeGuard, "exact oracle limited to m <= 12 and n <= 12");
  }
  const EdgeIndex m = graph.num_edges();
  // Live-edge graphs as per-edge liveness masks with their probabilities.
  std::vector<std::pair<uint32_t, double>> outcomes;
  if (params.kind == Diffusion::kIC) {
    for (uint32_t live = 0; live < (1u << m); ++live) {
      double p = 1.0;
      for (EdgeIndex e = 0; e < m; ++e) p *= (live >> e & 1) ? params.values[e] : 1.0 - params.values[e];
      if (p > 0.0) outcomes.push_back({live, p});
    }
  } else {
    outcomes.push_back({0u, 1.0});
    for (NodeId v = 0; v < n_; ++v) {
      double total = 0.0;
      for (EdgeIndex e = graph.in_begin(v); e < graph.in_end(v); ++e) total += params.values[e];
      std::vector<std::pair<uint32_t, double>> next;
      for (const auto& [live, p] : outcomes) {
        for (EdgeIndex e = graph.in_begin(v); e < graph.in_end(v); ++e) {
          if (params.values[e] > 0.0) next.push_back({live | (1u << e), p * params.values[e]});
        }
        double none = std::max(0.0, 1.0 - total);
        if (none > 0.0) next.push_back({live, p * none});
      }
      outcomes = std::move(next);
    }
  }

  sigma_.assign(size_t{1} << n_, 0.0);
  std::vector<uint32_t> subset_reach(size_t{1} << n_);
  for (const auto& [live, p] : outcomes) {
    // reach[u]: nodes reachable from u through live edges.
    std::vector<uint32_t> reach(n_);
    for (NodeId u = 0; u < n_; ++u) {
      uint32_t seen = 1u << u;
      std::vector<NodeId> stack{u};
      while (!stack.empty()) {
        NodeId a = stack.back();
        stack.pop_back();
        auto targets = graph.out_targets(a);
        auto positions = graph.out_in_positions(a);
        for (size_t k = 0; k < targets.size(); ++k) {
          if (!(live >> positions[k] & 1)) continue;
          if (seen >> targets[k] & 1) continue;
          seen |= 1u << targets[k];
          stack.push_back(targets[k]);
        }
      }
      reach[u] = seen;
    }
    subset_reach[0] = 0;
    for (uint32_t mask = 1; mask < sigma_.size(); ++mask) {
      uint32_t low = std::countr_zero(mask);
      subset_reach[mask] = subset_reach[mask & (mask - 1)] | reach[low];
      sigma_[mask] += p * std::popcount(subset_reach[mask]);
    }
    live_probability_.push_back(p);
    live_reach_.push_back(std::move(reach));
  }
}

namespace {

// Calls fn(mask, probability) for every subset of the nodes with h > 0.
template <typename Fn>
void ForEachSeedSet(std::span<const double> h, Fn&& fn) {
  std::vector<uint32_t> cand;
  for (uint32_t v = 0; v < h.size(); ++v) {
    if (h[v] > 0.0) cand.push_back(v);
  }
  const uint32_t c = static_cast<uint32_t>(cand.size());
  for (uint32_t bits = 0; bits < (1u << c); ++bits) {
    double p = 1.0;
    uint32_t mask = 0;
    for (uint32_t t = 0; t < c; ++t) {
      if (bits >> t & 1) {
        p *= h[cand[t]];
        mask |= 1u << cand[t];
      } else {
        p *= 1.0 - h[cand[t]];
      }
    }
    if (p > 0.0) fn(mask, p);
  }
}

void CheckH(std::span<const double> h, NodeId n) {
  if (h.size() != n) Fail(ErrorCode::kInvalidArgument, "h vector length differs from n");
  for (double v : h) {
    if (!(v >= 0.0 && v <= 1.0)) Fail(ErrorCode::kDomain, "seed probability outside [0, 1]");
  }
}

}  // namespace

double ExactOracle::SpreadFromH(std::span<const double> h) const {
  CheckH(h, n_);
  double g = 0.0;
  ForEachSeedSet(h, [&](uint32_t mask, double p) { g += p * sigma_[mask]; });
  return g;
}

std::vector<double> ExactOracle::ActivationProbabilities(std::span<const double> h) const {
  CheckH(h, n_);
  std::vector<double> prob(n_, 0.0);
  ForEachSeedSet(h, [&](uint32_t mask, double p) {
    for (size_t l = 0; l < live_reach_.size(); ++l) {
      uint32_t reached = 0;
      for (uint32_t m = mask; m; m &= m - 1) reached |= live_reach_[l][std::countr_zero(m)];
      const double w = p * live_probability_[l];
      for (uint32_t r = reached; r; r &= r - 1) prob[std::countr_zero(r)] += w;
    }
  });
  return prob;
}

double ExactOracle::G(const ActivationModel& model, const StrategyMix& x) const {
  if (model.num_nodes() != n_) Fail(ErrorCode::kInvalidArgument, "model and graph disagree on n");
  return SpreadFromH(AllHValues(model, x));
}

double ExactG(const DirectedGraph& graph, const TriggeringParams& params,
              const ActivationModel& model, const StrategyMix& x) {
  return ExactOracle(graph, params).G(model, x);
}

void ForEachFeasiblePoint(const LatticeConfig& lattice, const BudgetConstraint& constraint,
                          const std::function<void(const StrategyMix&)>& fn) {
  StrategyMix x(lattice.d);
  const int32_t K = constraint.total_steps();
  // Odometer over [0, K]^d, pruned by the running total.
  std::function<void(uint32_t, int32_t)> rec = [&](uint32_t j, int32_t used) {
    if (j == lattice.d) {
      if (IsFeasible(x, constraint)) fn(x);
      return;
    }
    for (int32_t s = 0; used + s <= K; ++s) {
      x.steps[j] = s;
      rec(j + 1, used + s);
    }
    x.steps[j] = 0;
  };
  rec(0, 0);
}

ExactOptResult ExactOpt(const ExactOracle& oracle, const ActivationModel& model,
                        const LatticeConfig& lattice, const BudgetConstraint& constraint) {
  // Points with Σ steps <= K number C(K + d, d).
  long double count = 1.0L;
  const int32_t K = constraint.total_steps();
  for (uint32_t i = 1; i <= lattice.d; ++i) count = count * (K + i) / i;
  if (count > kMaxLatticePoints) {
    Fail(ErrorCode::kSizeGuard, "exact optimum limited to 1e5 lattice points");
  }
  ExactOptResult best;
  best.x = StrategyMix(lattice.d);
  best.spread = -1.0;
  ForEachFeasiblePoint(lattice, constraint, [&](const StrategyMix& x) {
    ++best.points;
    double g = oracle.G(model, x);
    if (g > best.spread) {
      best.spread = g;
      best.x = x;
    }
  });
  return best;
}

ExactOptResult ExactOpt(const DirectedGraph& graph, const TriggeringParams& params,
                        const ActivationModel& model, const LatticeConfig& lattice,
                        const BudgetConstraint& constraint) {
  return ExactOpt(ExactOracle(graph, params), model, lattice, constraint);
}

}  // namespace lim
