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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lim/random.hpp"

namespace lim {

using NodeId = uint32_t;
using EdgeIndex = uint64_t;

enum class Diffusion { kIC, kLT };

// Immutable directed graph in CSR form. Incoming edges are the primary
// representation (reverse sampling walks them); outgoing edges carry the
// position of the matching incoming edge so per-edge parameters can be shared.
class DirectedGraph {
 public:
  struct Edge {
    NodeId source;
    NodeId target;
    double value;  // probability/weight from the input file, or NaN if absent
  };

  DirectedGraph() = default;
  // Builds from an explicit edge list. Self-loops are rejected here; the
  // loader drops them before calling this.
  DirectedGraph(NodeId num_nodes, std::span<const Edge> edges);

  NodeId num_nodes() const { return num_nodes_; }
  EdgeIndex num_edges() const { return in_sources_.size(); }

  std::span<const NodeId> in_sources(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v], in_sources_.data() + in_offsets_[v + 1]};
  }
  EdgeIndex in_begin(NodeId v) const { return in_offsets_[v]; }
  EdgeIndex in_end(NodeId v) const { return in_offsets_[v + 1]; }
  uint64_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  std::span<const NodeId> out_targets(NodeId u) const {
    return {out_targets_.data() + out_offsets_[u], out_targets_.data() + out_offsets_[u + 1]};
  }
  // In-edge positions aligned with out_targets(u).
  std::span<const EdgeIndex> out_in_positions(NodeId u) const {
    return {out_to_in_.data() + out_offsets_[u], out_to_in_.data() + out_offsets_[u + 1]};
  }
  uint64_t out_degree(NodeId u) const { return out_offsets_[u + 1] - out_offsets_[u]; }

  NodeId in_source_at(EdgeIndex e) const { return in_sources_[e]; }
  // Value read from the edge list for in-edge e (NaN when the file was bare).
  double file_value_at(EdgeIndex e) const { return file_values_[e]; }
  bool has_file_values() const { return has_file_values_; }

  // Original identifier of a compacted node, for reporting.
  uint64_t original_id(NodeId v) const {
    return original_ids_.empty() ? v : original_ids_[v];
  }
  void set_original_ids(std::vector<uint64_t> ids);

 private:
  NodeId num_nodes_ = 0;
  std::vector<EdgeIndex> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::vector<double> file_values_;
  std::vector<EdgeIndex> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<EdgeIndex> out_to_in_;
  std::vector<uint64_t> original_ids_;
  bool has_file_values_ = false;
};

// Per-in-edge triggering parameters: IC probabilities or LT weights.
struct TriggeringParams {
  Diffusion kind = Diffusion::kIC;
  std::vector<double> values;  // aligned with the graph's in-edge positions

  double at(EdgeIndex e) const { return values[e]; }
};

enum class HeaderMode { kAuto, kPresent, kAbsent };

struct EdgeListFormat {
  HeaderMode header = HeaderMode::kAuto;
};

struct LoadReport {
  uint64_t records = 0;
  uint64_t self_loops_dropped = 0;
};

// Parses `u v [p]` records. Lines starting with '#' and blank lines are
// skipped. Node ids are compacted to [0, n) in ascending order of the
// original id; a header `n m` fixes n (isolated nodes are padded) and must
// agree with the record count.
DirectedGraph LoadEdgeList(std::istream& in, EdgeListFormat format = {},
                           LoadReport* report = nullptr);
DirectedGraph LoadEdgeListFile(const std::string& path, EdgeListFormat format = {},
                               LoadReport* report = nullptr);

// Writes `n m` followed by one `u v` (or `u v p`) record per edge.
void WriteEdgeList(std::ostream& out, const DirectedGraph& graph,
                   const TriggeringParams* params = nullptr);

// p(u,v) = 1 / in-degree(v).
TriggeringParams AssignWeightedCascade(const DirectedGraph& graph);
TriggeringParams AssignUniform(const DirectedGraph& graph, Diffusion kind, double value);
// Uses the probabilities/weights from the edge list; validates ranges and,
// for LT, that incoming weights sum to at most one.
TriggeringParams ParamsFromFile(const DirectedGraph& graph, Diffusion kind);
void ValidateParams(const DirectedGraph& graph, const TriggeringParams& params);

// Draws T_v ~ D_v. IC: each in-neighbor independently; LT: at most one.
std::vector<NodeId> SampleTriggeringSet(const DirectedGraph& graph,
                                        const TriggeringParams& params, NodeId v,
                                        RandomStream& rng);

// LT helper: position of the chosen in-edge of v, or graph.in_end(v) for none.
EdgeIndex SampleLinearThresholdEdge(const DirectedGraph& graph,
                                    const TriggeringParams& params, NodeId v,
                                    RandomStream& rng);

// Directed G(n, m): m distinct ordered pairs without self-loops.
DirectedGraph GenerateErdosRenyi(NodeId n, uint64_t m, RandomStream& rng);

}  // namespace lim
