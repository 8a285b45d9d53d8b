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

#include "lim/immvsn.hpp"

#include <algorithm>
#include <queue>

#include "lim/error.hpp"
#include "lim/rrset.hpp"
#include "parallel.hpp"

namespace lim {
namespace {

constexpr uint64_t kBatch = 1 << 14;

}  // namespace

AugmentedGraph::AugmentedGraph(const DirectedGraph& graph, const TriggeringParams& params,
                               const ActivationModel& model, const LatticeConfig& lattice,
                               bool force)
    : graph_(&graph), params_(&params), model_(&model), K_(lattice.budget_steps) {
  if (!model.is_independent()) {
    Fail(ErrorCode::kUnsupported, "virtual strategy nodes need an independent-activation model");
  }
  if (model.num_nodes() != graph.num_nodes() || lattice.d != model.num_strategies()) {
    Fail(ErrorCode::kInvalidArgument, "graph, model and lattice disagree on dimensions");
  }
  if (num_virtual() > UINT32_MAX) Fail(ErrorCode::kRange, "too many virtual nodes (d·K >= 2^32)");
  for (size_t c = 0; c < model.num_curves(); ++c) {
    if (model.curve(static_cast<uint32_t>(c)).max_steps() < K_) {
      Fail(ErrorCode::kDomain, "activation curve shorter than the budget");
    }
  }
  if (!force) {
    auto violations = ValidateModel(model, lattice);
    if (!violations.empty()) {
      Fail(ErrorCode::kInvalidArgument, "augmented graph needs concave curves: " + violations.front());
    }
  }
}

double AugmentedGraph::Cumulative(NodeId v, StrategyIndex j, int32_t i) const {
  if (i < 0 || i > K_) Fail(ErrorCode::kDomain, "virtual step index outside [0, K]");
  return model_->curve_for(v, j).at(i);
}

double AugmentedGraph::Weight(NodeId v, StrategyIndex j, int32_t i) const {
  if (i < 1 || i > K_) Fail(ErrorCode::kDomain, "virtual step index outside [1, K]");
  const QCurve& q = model_->curve_for(v, j);
  return q.at(i) - q.at(i - 1);
}

std::optional<VirtualNodeId> AugmentedGraph::SampleArm(const StrategyArm& arm,
                                                       RandomStream& rng) const {
  auto table = model_->curve(arm.curve).table();
  const double u = rng.Uniform();
  if (K_ == 0 || u >= table[K_]) return std::nullopt;
  auto it = std::upper_bound(table.begin() + 1, table.begin() + K_ + 1, u);
  return VirtualNodeId{arm.strategy, static_cast<int32_t>(it - table.begin())};
}

std::optional<VirtualNodeId> SampleVirtualArm(const AugmentedGraph& aug, NodeId v, StrategyIndex j,
                                              RandomStream& rng) {
  for (const StrategyArm& arm : aug.model().arms(v)) {
    if (arm.strategy == j) return aug.SampleArm(arm, rng);
  }
  Fail(ErrorCode::kNotApplicable, "strategy is not in S_v");
}

namespace {

// Reverse BFS on the real graph; every visited node draws each of its
// strategy arms once. Writes packed virtual ids, sorted and deduplicated.
void SampleHybrid(const AugmentedGraph& aug, RRSetGenerator& gen, NodeId root, RandomStream& rng,
                  std::vector<NodeId>& real, std::vector<uint32_t>& virt) {
  virt.clear();
  const ActivationModel& model = aug.model();
  gen.Generate(root, rng, real, [&](NodeId v) {
    for (const StrategyArm& arm : model.arms(v)) {
      if (auto u = aug.SampleArm(arm, rng)) virt.push_back(aug.Pack(*u));
    }
  });
  std::sort(virt.begin(), virt.end());
  virt.erase(std::unique(virt.begin(), virt.end()), virt.end());
}

}  // namespace

HybridRRSet GenerateHybridRRSet(const AugmentedGraph& aug, NodeId root, RandomStream& rng) {
  if (root >= aug.graph().num_nodes()) Fail(ErrorCode::kRange, "RR root outside [0, n)");
  RRSetGenerator gen(aug.graph(), aug.params());
  HybridRRSet set;
  set.root = root;
  std::vector<uint32_t> packed;
  SampleHybrid(aug, gen, root, rng, set.real_members, packed);
  for (uint32_t id : packed) set.virtual_members.push_back(aug.Unpack(id));
  return set;
}

HybridCollection::HybridCollection(const AugmentedGraph& aug, RandomStream base)
    : aug_(&aug), base_(base) {}

void HybridCollection::Extend(uint64_t count) {
  const NodeId n = aug_->graph().num_nodes();
  if (n == 0) {
    if (count) Fail(ErrorCode::kInvalidArgument, "cannot sample RR sets on an empty graph");
    return;
  }
  struct Worker {
    RRSetGenerator gen;
    std::vector<NodeId> real;
  };
  std::vector<std::vector<uint32_t>> batch;
  for (uint64_t done = 0; done < count;) {
    const uint64_t nb = std::min(kBatch, count - done);
    const uint64_t start = theta_;
    batch.assign(nb, {});
    detail::ParallelFor(
        nb, [&] { return Worker{RRSetGenerator(aug_->graph(), aug_->params()), {}}; },
        [&](Worker& w, uint64_t i) {
          RandomStream rng = base_.Split(start + i);
          auto root = static_cast<NodeId>(rng.Below(n));
          SampleHybrid(*aug_, w.gen, root, rng, w.real, batch[i]);
        });
    for (const auto& virt : batch) {
      if (virt.empty()) continue;
      members_.insert(members_.end(), virt.begin(), virt.end());
      offsets_.push_back(members_.size());
    }
    theta_ += nb;
    done += nb;
  }
}

VirtualSelection NodeSelectionVirtual(const HybridCollection& collection,
                                      const BudgetConstraint& constraint) {
  if (collection.theta() == 0) {
    Fail(ErrorCode::kUndefinedEstimate, "virtual node selection needs at least one RR set");
  }
  const AugmentedGraph& aug = collection.aug();
  const uint64_t nv = aug.num_virtual();
  const uint64_t stored = collection.num_stored();

  // Inverted index: virtual node -> stored sets containing it.
  std::vector<uint64_t> offsets(nv + 1, 0);
  for (uint64_t s = 0; s < stored; ++s) {
    for (uint32_t u : collection.virtual_members(s)) ++offsets[u + 1];
  }
  for (uint64_t u = 0; u < nv; ++u) offsets[u + 1] += offsets[u];
  std::vector<uint32_t> sets(offsets[nv]);
  {
    std::vector<uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (uint64_t s = 0; s < stored; ++s) {
      for (uint32_t u : collection.virtual_members(s)) sets[cursor[u]++] = static_cast<uint32_t>(s);
    }
  }
  std::vector<uint64_t> count(nv);
  for (uint64_t u = 0; u < nv; ++u) count[u] = offsets[u + 1] - offsets[u];

  // Lazy max-heap on (count desc, id asc); stored counts only overestimate.
  using Entry = std::pair<uint64_t, uint32_t>;
  auto worse = [](const Entry& a, const Entry& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (uint64_t u = 0; u < nv; ++u) {
    if (count[u]) heap.push({count[u], static_cast<uint32_t>(u)});
  }

  VirtualSelection out;
  out.x = StrategyMix(aug.num_strategies());
  BudgetTracker tracker(constraint, aug.num_strategies());
  std::vector<char> covered(stored, 0);
  for (int32_t t = 0; t < constraint.total_steps() && !heap.empty();) {
    auto [c, u] = heap.top();
    heap.pop();
    if (c != count[u]) {
      if (count[u]) heap.push({count[u], u});
      continue;
    }
    VirtualNodeId vid = aug.Unpack(u);
    if (!tracker.CanIncrement(vid.j)) continue;
    tracker.Increment(vid.j);
    ++out.x.steps[vid.j];
    out.seeds.push_back(vid);
    out.covered += c;
    for (uint64_t p = offsets[u]; p < offsets[u + 1]; ++p) {
      uint32_t s = sets[p];
      if (covered[s]) continue;
      covered[s] = 1;
      for (uint32_t w : collection.virtual_members(s)) --count[w];
    }
    ++t;
  }
  out.estimate = static_cast<double>(aug.graph().num_nodes()) * static_cast<double>(out.covered) /
                 static_cast<double>(collection.theta());
  return out;
}

SolveResult ImmVsn(const DirectedGraph& graph, const TriggeringParams& params,
                   const ActivationModel& model, const LatticeConfig& lattice,
                   const BudgetConstraint& constraint, const SolveOptions& options,
                   RandomStream rng) {
  SolveResult result;
  result.x = StrategyMix(lattice.d);
  AugmentedGraph aug(graph, params, model, lattice, options.force);
  if (constraint.total_steps() == 0) return result;
  HybridCollection collection(aug, rng);
  const double M = ComputeM(lattice.d, constraint.total_steps());
  result.sampling = RunImmSampling(
      graph.num_nodes(), M, options.imm, [&](uint64_t target) { collection.ExtendTo(target); },
      [&] { return NodeSelectionVirtual(collection, constraint).estimate; });
  VirtualSelection sel = NodeSelectionVirtual(collection, constraint);
  result.x = std::move(sel.x);
  result.estimate = sel.estimate;
  result.theta = collection.theta();
  return result;
}

double VirtualArmProbability(const AugmentedGraph& aug, NodeId v, StrategyIndex j,
                             std::span<const int32_t> steps) {
  std::vector<int32_t> sorted(steps.begin(), steps.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  double p = 0.0;
  for (int32_t i : sorted) p += aug.Weight(v, j, i);
  return p;
}

std::vector<double> VirtualSeedProbabilities(const AugmentedGraph& aug,
                                             std::span<const VirtualNodeId> seeds) {
  std::vector<std::vector<int32_t>> by_strategy(aug.num_strategies());
  for (const VirtualNodeId& u : seeds) {
    if (u.j >= aug.num_strategies() || u.i < 1 || u.i > aug.budget_steps()) {
      Fail(ErrorCode::kRange, "virtual seed outside U");
    }
    by_strategy[u.j].push_back(u.i);
  }
  const NodeId n = aug.graph().num_nodes();
  std::vector<double> h(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    double miss = 1.0;
    for (const StrategyArm& arm : aug.model().arms(v)) {
      miss *= 1.0 - VirtualArmProbability(aug, v, arm.strategy, by_strategy[arm.strategy]);
    }
    h[v] = 1.0 - miss;
  }
  return h;
}

SpreadEstimate SimulateVirtualSeeds(const AugmentedGraph& aug, std::span<const VirtualNodeId> seeds,
                                    uint64_t runs, RandomStream rng) {
  std::vector<char> active(aug.num_virtual(), 0);
  for (const VirtualNodeId& u : seeds) {
    if (u.j >= aug.num_strategies() || u.i < 1 || u.i > aug.budget_steps()) {
      Fail(ErrorCode::kRange, "virtual seed outside U");
    }
    active[aug.Pack(u)] = 1;
  }
  const NodeId n = aug.graph().num_nodes();
  return SimulateSpread(
      aug.graph(), aug.params(),
      [&](RandomStream& stream, std::vector<NodeId>& out) {
        for (NodeId v = 0; v < n; ++v) {
          bool hit = false;
          for (const StrategyArm& arm : aug.model().arms(v)) {
            auto u = aug.SampleArm(arm, stream);
            if (u && active[aug.Pack(*u)]) hit = true;
          }
          if (hit) out.push_back(v);
        }
      },
      runs, rng);
}

std::vector<VirtualNodeId> PrefixSeeds(const StrategyMix& x) {
  std::vector<VirtualNodeId> seeds;
  for (StrategyIndex j = 0; j < x.dimension(); ++j) {
    for (int32_t i = 1; i <= x.steps[j]; ++i) seeds.push_back({j, i});
  }
  return seeds;
}

}  // namespace lim
