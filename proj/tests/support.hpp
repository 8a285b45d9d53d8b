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

// Small random instances shared by unit and acceptance tests.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "lim/graph.hpp"
#include "lim/random.hpp"
#include "lim/strategy.hpp"

namespace lim::testing {

struct Instance {
  DirectedGraph graph;
  TriggeringParams params;
  ActivationModel model;
  LatticeConfig lattice;
};

struct InstanceShape {
  NodeId max_nodes = 8;
  EdgeIndex max_edges = 10;
  uint32_t max_d = 3;
  int32_t max_steps = 3;
  NodeId min_nodes = 2;
  uint32_t min_d = 1;
  int32_t min_steps = 1;
  bool lt = false;
};

// Concave nondecreasing table over 0..K with q(0)=0: sorted decreasing
// random marginals scaled to a random total in [0.2, 1].
inline std::vector<double> RandomConcaveTable(int32_t K, RandomStream& rng) {
  std::vector<double> marginals(K);
  for (double& m : marginals) m = rng.Uniform() + 1e-3;
  std::sort(marginals.rbegin(), marginals.rend());
  double sum = 0.0;
  for (double m : marginals) sum += m;
  const double total = 0.2 + 0.8 * rng.Uniform();
  std::vector<double> table(K + 1, 0.0);
  for (int32_t i = 1; i <= K; ++i) table[i] = std::min(1.0, table[i - 1] + marginals[i - 1] * total / sum);
  return table;
}

inline DirectedGraph RandomGraph(NodeId n, EdgeIndex m, RandomStream& rng) {
  std::vector<DirectedGraph::Edge> edges;
  for (EdgeIndex e = 0; e < m; ++e) {
    NodeId u = static_cast<NodeId>(rng.Below(n));
    NodeId v = static_cast<NodeId>(rng.Below(n - 1));
    if (v >= u) ++v;
    edges.push_back({u, v, 0.0});
  }
  return DirectedGraph(n, edges);
}

// IC probabilities in (0, 1), or LT weights summing to at most one per node.
inline TriggeringParams RandomParams(const DirectedGraph& g, bool lt, RandomStream& rng) {
  TriggeringParams p;
  p.kind = lt ? Diffusion::kLT : Diffusion::kIC;
  p.values.assign(g.num_edges(), 0.0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    double total = 0.0;
    for (EdgeIndex e = g.in_begin(v); e < g.in_end(v); ++e) {
      p.values[e] = 0.05 + 0.9 * rng.Uniform();
      total += p.values[e];
    }
    if (lt && total > 0.0) {
      const double scale = (0.5 + 0.5 * rng.Uniform()) / total;
      for (EdgeIndex e = g.in_begin(v); e < g.in_end(v); ++e) p.values[e] *= scale;
    }
  }
  return p;
}

// Every node gets each strategy with probability 1/2 (at least one node
// per strategy), each with its own random concave curve.
inline ActivationModel RandomModel(NodeId n, uint32_t d, int32_t K, RandomStream& rng) {
  std::vector<QCurve> curves;
  std::vector<std::vector<StrategyArm>> arms(n);
  for (uint32_t j = 0; j < d; ++j) {
    bool any = false;
    for (NodeId v = 0; v < n; ++v) {
      if (rng.Bernoulli(0.5)) {
        arms[v].push_back({j, static_cast<uint32_t>(curves.size())});
        curves.push_back(QCurve::Tabulated(RandomConcaveTable(K, rng)));
        any = true;
      }
    }
    if (!any) {
      NodeId v = static_cast<NodeId>(rng.Below(n));
      arms[v].push_back({j, static_cast<uint32_t>(curves.size())});
      curves.push_back(QCurve::Tabulated(RandomConcaveTable(K, rng)));
    }
  }
  return ActivationModel::Independent(n, d, std::move(curves), std::move(arms));
}

inline Instance RandomInstance(const InstanceShape& shape, RandomStream& rng) {
  NodeId n = shape.min_nodes + static_cast<NodeId>(rng.Below(shape.max_nodes - shape.min_nodes + 1));
  EdgeIndex m = rng.Below(shape.max_edges + 1);
  uint32_t d = shape.min_d + static_cast<uint32_t>(rng.Below(shape.max_d - shape.min_d + 1));
  int32_t K = shape.min_steps + static_cast<int32_t>(rng.Below(shape.max_steps - shape.min_steps + 1));
  DirectedGraph g = RandomGraph(n, m, rng);
  TriggeringParams p = RandomParams(g, shape.lt, rng);
  ActivationModel model = RandomModel(n, d, K, rng);
  return Instance{std::move(g), std::move(p), std::move(model), LatticeConfig{d, 1.0, K}};
}

}  // namespace lim::testing
