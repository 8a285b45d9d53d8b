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

#include "lim/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lim/error.hpp"

namespace lim {
namespace {

constexpr double kCurveSlack = 1e-12;

}  // namespace

LatticeConfig MakeLattice(uint32_t d, double delta, double budget) {
  if (d < 1) Fail(ErrorCode::kInvalidArgument, "lattice needs d >= 1");
  if (!(delta > 0.0)) Fail(ErrorCode::kInvalidArgument, "granularity must be positive");
  if (!(budget >= 0.0)) Fail(ErrorCode::kInvalidArgument, "budget must be nonnegative");
  double steps = std::round(budget / delta);
  if (std::fabs(steps * delta - budget) > 1e-9 * std::max(1.0, budget)) {
    Fail(ErrorCode::kInvalidArgument, "budget is not a multiple of the granularity");
  }
  if (steps > 1e9) Fail(ErrorCode::kRange, "budget / granularity too large");
  return LatticeConfig{d, delta, static_cast<int32_t>(steps)};
}

int64_t StrategyMix::total_steps() const {
  return std::accumulate(steps.begin(), steps.end(), int64_t{0});
}

std::string FormatMix(const StrategyMix& x) {
  std::ostringstream out;
  out << '(';
  for (size_t j = 0; j < x.steps.size(); ++j) {
    if (j) out << ',';
    out << x.steps[j];
  }
  out << ')';
  return out.str();
}

QCurve QCurve::Tabulated(std::vector<double> values) {
  if (values.empty()) Fail(ErrorCode::kInvalidArgument, "tabulated curve needs q(0)");
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) Fail(ErrorCode::kRange, "curve value outside [0,1]");
  }
  return QCurve(CurveFamily::kTabulated, 0.0, std::move(values));
}

QCurve QCurve::MultiEvent(double r, double delta, int32_t max_steps) {
  if (!(r >= 0.0 && r <= 1.0)) Fail(ErrorCode::kRange, "event probability outside [0,1]");
  if (max_steps < 0) Fail(ErrorCode::kInvalidArgument, "negative curve length");
  std::vector<double> table(max_steps + 1);
  for (int32_t i = 0; i <= max_steps; ++i) table[i] = 1.0 - std::pow(1.0 - r, i * delta);
  return QCurve(CurveFamily::kMultiEvent, r, std::move(table));
}

QCurve QCurve::PersonalizedQuadratic(double delta, int32_t max_steps) {
  if (max_steps < 0) Fail(ErrorCode::kInvalidArgument, "negative curve length");
  std::vector<double> table(max_steps + 1);
  for (int32_t i = 0; i <= max_steps; ++i) {
    double x = std::min(1.0, i * delta);
    table[i] = 2.0 * x - x * x;
  }
  return QCurve(CurveFamily::kPersonalizedQuadratic, 0.0, std::move(table));
}

QCurve QCurve::Capped(int32_t cap_steps) const {
  if (cap_steps < 0) Fail(ErrorCode::kInvalidArgument, "negative cap");
  std::vector<double> table = table_;
  for (int32_t i = cap_steps + 1; i <= max_steps(); ++i) table[i] = table_[cap_steps];
  return QCurve(family_, parameter_, std::move(table));
}

double QCurve::at(int32_t steps) const {
  if (steps < 0 || steps > max_steps()) {
    Fail(ErrorCode::kDomain, "curve evaluated at step " + std::to_string(steps) +
                                 " outside [0," + std::to_string(max_steps()) + "]");
  }
  return table_[steps];
}

ActivationModel ActivationModel::Independent(NodeId num_nodes, uint32_t d,
                                             std::vector<QCurve> curves,
                                             std::vector<std::vector<StrategyArm>> arms) {
  if (arms.size() != num_nodes) {
    Fail(ErrorCode::kInvalidArgument, "need one strategy-arm list per node");
  }
  ActivationModel model;
  model.num_nodes_ = num_nodes;
  model.d_ = d;
  model.curves_ = std::move(curves);
  model.arm_offsets_.reserve(num_nodes + 1);
  for (NodeId v = 0; v < num_nodes; ++v) {
    auto& list = arms[v];
    std::sort(list.begin(), list.end(),
              [](const StrategyArm& a, const StrategyArm& b) { return a.strategy < b.strategy; });
    for (size_t i = 0; i < list.size(); ++i) {
      if (list[i].strategy >= d) Fail(ErrorCode::kRange, "strategy index out of range");
      if (list[i].curve >= model.curves_.size()) Fail(ErrorCode::kRange, "curve index out of range");
      if (i && list[i].strategy == list[i - 1].strategy) {
        Fail(ErrorCode::kInvalidArgument, "strategy listed twice for node " + std::to_string(v));
      }
      model.arms_.push_back(list[i]);
    }
    model.arm_offsets_.push_back(model.arms_.size());
  }
  return model;
}

ActivationModel ActivationModel::BlackBox(NodeId num_nodes, uint32_t d, BlackBoxFn fn) {
  if (!fn) Fail(ErrorCode::kInvalidArgument, "black-box model needs a callable");
  ActivationModel model;
  model.num_nodes_ = num_nodes;
  model.d_ = d;
  model.arm_offsets_.assign(num_nodes + 1, 0);
  model.black_box_ = std::move(fn);
  return model;
}

const QCurve& ActivationModel::curve_for(NodeId v, StrategyIndex j) const {
  for (const StrategyArm& arm : arms(v)) {
    if (arm.strategy == j) return curves_[arm.curve];
  }
  Fail(ErrorCode::kNotApplicable,
       "strategy " + std::to_string(j) + " does not target node " + std::to_string(v));
}

bool ActivationModel::is_personalized() const {
  if (!is_independent() || d_ != num_nodes_) return false;
  for (NodeId v = 0; v < num_nodes_; ++v) {
    auto a = arms(v);
    if (a.size() != 1 || a[0].strategy != v) return false;
  }
  return true;
}

double HValue(const ActivationModel& model, NodeId v, const StrategyMix& x) {
  if (x.dimension() != model.num_strategies()) {
    Fail(ErrorCode::kInvalidArgument, "mix dimension does not match model");
  }
  if (!model.is_independent()) {
    double h = model.black_box()(v, x.steps);
    if (!(h >= 0.0 && h <= 1.0)) Fail(ErrorCode::kDomain, "black-box h outside [0,1]");
    return h;
  }
  double miss = 1.0;
  for (const StrategyArm& arm : model.arms(v)) {
    miss *= 1.0 - model.curve(arm.curve).at(x.steps[arm.strategy]);
  }
  return 1.0 - miss;
}

double QValue(const ActivationModel& model, NodeId v, StrategyIndex j, int32_t steps) {
  return model.curve_for(v, j).at(steps);
}

std::vector<double> AllHValues(const ActivationModel& model, const StrategyMix& x) {
  std::vector<double> h(model.num_nodes());
  for (NodeId v = 0; v < model.num_nodes(); ++v) h[v] = HValue(model, v, x);
  return h;
}

std::vector<std::string> ValidateModel(const ActivationModel& model, const LatticeConfig& lattice) {
  std::vector<std::string> violations;
  if (!model.is_independent()) return violations;
  for (uint32_t c = 0; c < model.num_curves(); ++c) {
    auto t = model.curve(c).table();
    std::string name = "curve " + std::to_string(c);
    if (t.size() < static_cast<size_t>(lattice.budget_steps) + 1) {
      violations.push_back(name + ": defined only up to step " + std::to_string(t.size() - 1) +
                           " but budget needs " + std::to_string(lattice.budget_steps));
    }
    if (t[0] != 0.0) violations.push_back(name + ": q(0) != 0");
    size_t last = std::min(t.size() - 1, static_cast<size_t>(lattice.budget_steps));
    for (size_t i = 1; i <= last; ++i) {
      if (t[i] < t[i - 1] - kCurveSlack) {
        violations.push_back(name + ": decreasing at step " + std::to_string(i));
      }
      if (i + 1 <= last && t[i + 1] - t[i] > t[i] - t[i - 1] + kCurveSlack) {
        violations.push_back(name + ": not concave at step " + std::to_string(i));
      }
    }
  }
  return violations;
}

ActivationModel MakePersonalizedModel(NodeId num_nodes, const LatticeConfig& lattice) {
  std::vector<QCurve> curves{QCurve::PersonalizedQuadratic(lattice.delta, lattice.budget_steps)};
  std::vector<std::vector<StrategyArm>> arms(num_nodes);
  for (NodeId v = 0; v < num_nodes; ++v) arms[v].push_back({v, 0});
  return ActivationModel::Independent(num_nodes, num_nodes, std::move(curves), std::move(arms));
}

std::vector<NodeId> NodesByDegree(const DirectedGraph& graph) {
  std::vector<NodeId> order(graph.num_nodes());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return graph.out_degree(a) > graph.out_degree(b);
  });
  return order;
}

ActivationModel MakeSegmentedEventModel(const DirectedGraph& graph, const SegmentedEventSpec& spec,
                                        const LatticeConfig& lattice, RandomStream& rng) {
  if (spec.d < 1) Fail(ErrorCode::kInvalidArgument, "segmented scenario needs d >= 1");
  if (!(spec.r_max >= 0.0 && spec.r_max <= 1.0)) Fail(ErrorCode::kRange, "r_max outside [0,1]");
  std::vector<NodeId> order = NodesByDegree(graph);
  NodeId top = std::min<NodeId>(graph.num_nodes(), spec.top_nodes);
  std::vector<QCurve> curves;
  std::vector<std::vector<StrategyArm>> arms(graph.num_nodes());
  curves.reserve(top);
  for (NodeId rank = 0; rank < top; ++rank) {
    NodeId v = order[rank];
    auto strategy = static_cast<StrategyIndex>(rng.Below(spec.d));
    double r = rng.Uniform() * spec.r_max;
    arms[v].push_back({strategy, static_cast<uint32_t>(curves.size())});
    curves.push_back(QCurve::MultiEvent(r, lattice.delta, lattice.budget_steps));
  }
  return ActivationModel::Independent(graph.num_nodes(), spec.d, std::move(curves), std::move(arms));
}

}  // namespace lim
