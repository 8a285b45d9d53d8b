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
#include <span>
#include <string>
#include <vector>

#include "lim/graph.hpp"
#include "lim/random.hpp"

namespace lim {

using StrategyIndex = uint32_t;

// Lattice {0, δ, 2δ, ...}^d with a total of `budget_steps` increments (K = k/δ).
struct LatticeConfig {
  uint32_t d = 1;
  double delta = 1.0;
  int32_t budget_steps = 0;

  double budget() const { return delta * budget_steps; }
};

LatticeConfig MakeLattice(uint32_t d, double delta, double budget);

// A lattice point, stored as integer step counts: x_j = steps[j] * δ.
struct StrategyMix {
  std::vector<int32_t> steps;

  StrategyMix() = default;
  explicit StrategyMix(uint32_t d) : steps(d, 0) {}

  uint32_t dimension() const { return static_cast<uint32_t>(steps.size()); }
  int64_t total_steps() const;
  bool is_zero() const { return total_steps() == 0; }

  friend bool operator==(const StrategyMix&, const StrategyMix&) = default;
};

std::string FormatMix(const StrategyMix& x);

enum class CurveFamily { kTabulated, kMultiEvent, kPersonalizedQuadratic };

// q_{v,j}(i·δ) materialized as a table over step counts 0..max_steps.
class QCurve {
 public:
  static QCurve Tabulated(std::vector<double> values);
  // q(x) = 1 - (1 - r)^x.
  static QCurve MultiEvent(double r, double delta, int32_t max_steps);
  // q(x) = 2x - x^2 for x <= 1, and 1 beyond.
  static QCurve PersonalizedQuadratic(double delta, int32_t max_steps);

  // Clamps the curve at `cap_steps`: q(i) = q(cap) for i > cap.
  QCurve Capped(int32_t cap_steps) const;

  double at(int32_t steps) const;
  int32_t max_steps() const { return static_cast<int32_t>(table_.size()) - 1; }
  std::span<const double> table() const { return table_; }
  CurveFamily family() const { return family_; }
  double parameter() const { return parameter_; }

 private:
  QCurve(CurveFamily family, double parameter, std::vector<double> table)
      : family_(family), parameter_(parameter), table_(std::move(table)) {}

  CurveFamily family_;
  double parameter_;
  std::vector<double> table_;
};

// Node v can be activated by strategy `strategy` through curve `curve`.
struct StrategyArm {
  StrategyIndex strategy;
  uint32_t curve;
};

using BlackBoxFn = std::function<double(NodeId, std::span<const int32_t>)>;

// Maps strategy mixes to per-node seed probabilities h_v(x). Either the
// independent-activation form h_v = 1 - prod_{j in S_v}(1 - q_{v,j}(x_j)),
// or an opaque callable the caller vouches is monotone and DR-submodular.
class ActivationModel {
 public:
  static ActivationModel Independent(NodeId num_nodes, uint32_t d, std::vector<QCurve> curves,
                                     std::vector<std::vector<StrategyArm>> arms);
  static ActivationModel BlackBox(NodeId num_nodes, uint32_t d, BlackBoxFn fn);

  bool is_independent() const { return !black_box_; }
  NodeId num_nodes() const { return num_nodes_; }
  uint32_t num_strategies() const { return d_; }

  std::span<const StrategyArm> arms(NodeId v) const {
    return {arms_.data() + arm_offsets_[v], arms_.data() + arm_offsets_[v + 1]};
  }
  const QCurve& curve(uint32_t id) const { return curves_[id]; }
  size_t num_curves() const { return curves_.size(); }
  uint64_t total_arms() const { return arms_.size(); }
  // Throws kNotApplicable when j is not in S_v.
  const QCurve& curve_for(NodeId v, StrategyIndex j) const;
  const BlackBoxFn& black_box() const { return black_box_; }

  // True for the personalized layout: d = n and S_v = {v} for every v.
  bool is_personalized() const;

 private:
  NodeId num_nodes_ = 0;
  uint32_t d_ = 0;
  std::vector<QCurve> curves_;
  std::vector<uint64_t> arm_offsets_{0};
  std::vector<StrategyArm> arms_;
  BlackBoxFn black_box_;
};

double HValue(const ActivationModel& model, NodeId v, const StrategyMix& x);
double QValue(const ActivationModel& model, NodeId v, StrategyIndex j, int32_t steps);
// h_v(x) for every node.
std::vector<double> AllHValues(const ActivationModel& model, const StrategyMix& x);

// Empty iff every curve has q(0)=0, is nondecreasing and discretely concave
// on 0..K. Black-box models are not checkable and report nothing.
std::vector<std::string> ValidateModel(const ActivationModel& model, const LatticeConfig& lattice);

// Personalized marketing: d = n, S_v = {v}, h_v = 2x_v - x_v^2.
ActivationModel MakePersonalizedModel(NodeId num_nodes, const LatticeConfig& lattice);

struct SegmentedEventSpec {
  uint32_t d = 200;
  NodeId top_nodes = 2000;
  double r_max = 0.3;
};

// Segmented event marketing: the top min(n, top_nodes) nodes by out-degree
// each get one strategy i_v ~ U[d] with q(x) = 1 - (1 - r)^x, r ~ U[0, r_max].
ActivationModel MakeSegmentedEventModel(const DirectedGraph& graph, const SegmentedEventSpec& spec,
                                        const LatticeConfig& lattice, RandomStream& rng);

// Nodes ordered by out-degree descending, ties by id.
std::vector<NodeId> NodesByDegree(const DirectedGraph& graph);

}  // namespace lim
