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

#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lim/graph.hpp"
#include "lim/random.hpp"
#include "lim/strategy.hpp"

namespace lim {

struct RRSet {
  NodeId root = 0;
  std::vector<NodeId> members;  // sorted ascending, contains root
  uint64_t width = 0;           // total in-degree over members
};

// Reverse BFS with per-worker scratch. Each visited node's triggering set is
// drawn exactly once, so one call corresponds to one live-edge sample.
class RRSetGenerator {
 public:
  RRSetGenerator(const DirectedGraph& graph, const TriggeringParams& params);

  // Writes the sorted members into `members` and returns the width.
  uint64_t Generate(NodeId root, RandomStream& rng, std::vector<NodeId>& members);

  // Variant used by the virtual-node sampler: `on_visit(v)` runs once for
  // every member as it is discovered.
  template <typename OnVisit>
  uint64_t Generate(NodeId root, RandomStream& rng, std::vector<NodeId>& members,
                    OnVisit&& on_visit);

 private:
  bool Mark(NodeId v) {
    if (stamp_[v] == epoch_) return false;
    stamp_[v] = epoch_;
    return true;
  }
  void NextEpoch();

  const DirectedGraph* graph_;
  const TriggeringParams* params_;
  std::vector<uint32_t> stamp_;
  uint32_t epoch_ = 0;
};

RRSet GenerateRRSet(const DirectedGraph& graph, const TriggeringParams& params, NodeId root,
                    RandomStream& rng);

// (RR-set id, node) pair of a strategy list; lists are sorted by set then
// node. `curve` caches the node's curve for this strategy.
struct ListEntry {
  uint32_t set;
  NodeId node;
  uint32_t curve;
};

// Growing sequence of RR sets with the inverted indexes the greedy phases
// need. Set i is always generated from base.Split(i), so a collection's
// contents depend only on the base stream and its size.
class RRCollection {
 public:
  // `model` may be null (no strategy lists) and must outlive the collection,
  // as must graph and params.
  RRCollection(const DirectedGraph& graph, const TriggeringParams& params,
               const ActivationModel* model, RandomStream base);

  void Extend(uint64_t count);
  // Grows to exactly `target` sets if smaller.
  void ExtendTo(uint64_t target) {
    if (target > theta()) Extend(target - theta());
  }

  uint64_t theta() const { return roots_.size(); }
  NodeId num_nodes() const { return graph_->num_nodes(); }
  NodeId root(uint64_t i) const { return roots_[i]; }
  uint64_t width(uint64_t i) const { return widths_[i]; }
  std::span<const NodeId> members(uint64_t i) const {
    return {members_.data() + offsets_[i], members_.data() + offsets_[i + 1]};
  }
  uint64_t total_members() const { return members_.size(); }
  uint64_t total_width() const;

  bool has_strategy_lists() const { return !lists_.empty(); }
  std::span<const ListEntry> strategy_list(StrategyIndex j) const { return lists_[j]; }
  uint64_t total_list_entries() const;

  // node -> ids of sets containing it; built on first use.
  std::span<const uint32_t> sets_containing(NodeId v) const;

  const ActivationModel* model() const { return model_; }

  // Version-tagged binary dump of the sets (indexes are rebuilt on load).
  void Save(std::ostream& out) const;
  static RRCollection Load(std::istream& in, const DirectedGraph& graph,
                           const TriggeringParams& params, const ActivationModel* model,
                           RandomStream base);

 private:
  void Append(NodeId root, std::span<const NodeId> members, uint64_t width);

  const DirectedGraph* graph_;
  const TriggeringParams* params_;
  const ActivationModel* model_;
  RandomStream base_;
  std::vector<NodeId> roots_;
  std::vector<uint64_t> widths_;
  std::vector<uint64_t> offsets_{0};
  std::vector<NodeId> members_;
  std::vector<std::vector<ListEntry>> lists_;
  mutable std::vector<uint64_t> node_offsets_;
  mutable std::vector<uint32_t> node_sets_;
};

RRCollection GenerateCollection(const DirectedGraph& graph, const TriggeringParams& params,
                                 const ActivationModel* model, uint64_t count, RandomStream base);

// (n / θ) · Σ_R (1 - Π_{v∈R} (1 - h_v(x))).
double GHat(const RRCollection& collection, const ActivationModel& model, const StrategyMix& x);
// Same estimator with h supplied per node.
double GHatFromH(const RRCollection& collection, std::span<const double> h);

// ---------------------------------------------------------------------------

template <typename OnVisit>
uint64_t RRSetGenerator::Generate(NodeId root, RandomStream& rng, std::vector<NodeId>& members,
                                  OnVisit&& on_visit) {
  NextEpoch();
  members.clear();
  members.push_back(root);
  Mark(root);
  uint64_t width = 0;
  const DirectedGraph& g = *graph_;
  for (size_t head = 0; head < members.size(); ++head) {
    NodeId v = members[head];
    on_visit(v);
    width += g.in_degree(v);
    if (params_->kind == Diffusion::kIC) {
      for (EdgeIndex e = g.in_begin(v); e < g.in_end(v); ++e) {
        if (rng.Bernoulli(params_->values[e])) {
          NodeId u = g.in_source_at(e);
          if (Mark(u)) members.push_back(u);
        }
      }
    } else {
      EdgeIndex e = SampleLinearThresholdEdge(g, *params_, v, rng);
      if (e != g.in_end(v)) {
        NodeId u = g.in_source_at(e);
        if (Mark(u)) members.push_back(u);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return width;
}

}  // namespace lim
