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

#include "lim/immprr.hpp"

#include <algorithm>
#include <cmath>

#include "lim/error.hpp"

namespace lim {
namespace {

constexpr long double kOneMinusInvE = 1.0L - 1.0L / 2.718281828459045235360287471352662498L;
constexpr double kTieTolerance = 1e-10;
constexpr double kGammaPrecision = 1e-7;

}  // namespace

double ComputeM(uint32_t d, int32_t budget_steps) {
  double best = INFINITY;
  if (d >= 2 && budget_steps >= 1) best = std::min(best, budget_steps * std::log(double(d)));
  if (budget_steps >= 2) best = std::min(best, d * std::log(double(budget_steps)));
  if (!std::isfinite(best)) return 1.0;
  return std::max(1.0, best);
}

long double LambdaStar(uint64_t n, double epsilon, double ell, double M) {
  if (!(epsilon > 0.0) || !(ell > 0.0)) Fail(ErrorCode::kInvalidArgument, "need ε > 0 and ℓ > 0");
  const long double ln_n = std::log(static_cast<long double>(n));
  const long double alpha = std::sqrt(ell * ln_n + std::log(2.0L));
  const long double beta = std::sqrt(kOneMinusInvE * (M + alpha * alpha));
  const long double t = kOneMinusInvE * alpha + beta;
  return 2.0L * n * t * t / (static_cast<long double>(epsilon) * epsilon);
}

long double LambdaPrime(uint64_t n, double epsilon_prime, double ell, double M) {
  const long double ln_n = std::log(static_cast<long double>(n));
  const long double ln_log2_n = std::log(std::log2(static_cast<long double>(n)));
  const long double eps = epsilon_prime;
  return (2.0L + 2.0L / 3.0L * eps) * (M + ell * ln_n + ln_log2_n) * n / (eps * eps);
}

double ComputeGamma(uint64_t n, double epsilon, double ell, double M) {
  if (n < 2) Fail(ErrorCode::kInvalidArgument, "γ needs n >= 2");
  const long double ln_n = std::log(static_cast<long double>(n));
  auto holds = [&](double gamma) {
    long double lhs = std::ceil(LambdaStar(n, epsilon, ell + gamma, M));
    return std::log(lhs) <= gamma * ln_n;
  };
  if (holds(0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (!holds(hi)) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > kGammaPrecision) {
    double mid = 0.5 * (lo + hi);
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

bool GainImproves(double candidate, double incumbent, double scale) {
  return candidate > incumbent + kTieTolerance * std::max(1.0, std::fabs(scale));
}

StrategyMix LGreedy(const Objective& objective, const LatticeConfig& lattice,
                    const BudgetConstraint& constraint) {
  StrategyMix x(lattice.d);
  BudgetTracker tracker(constraint, lattice.d);
  for (int32_t t = 0; t < constraint.total_steps(); ++t) {
    const double base = objective(x);
    int64_t best_j = -1;
    double best_gain = 0.0;
    for (StrategyIndex j = 0; j < lattice.d; ++j) {
      if (!tracker.CanIncrement(j)) continue;
      ++x.steps[j];
      double gain = objective(x) - base;
      --x.steps[j];
      if (best_j < 0 || GainImproves(gain, best_gain, base)) {
        best_j = j;
        best_gain = gain;
      }
    }
    if (best_j < 0) break;
    ++x.steps[best_j];
    tracker.Increment(static_cast<StrategyIndex>(best_j));
  }
  return x;
}

GreedyState::GreedyState(const RRCollection& collection, const ActivationModel& model)
    : GreedyState(collection, model, StrategyMix(model.num_strategies())) {}

GreedyState::GreedyState(const RRCollection& collection, const ActivationModel& model,
                         StrategyMix start)
    : collection_(&collection), model_(&model), x_(std::move(start)) {
  if (!model.is_independent()) {
    Fail(ErrorCode::kUnsupported, "incremental greedy needs an independent-activation model");
  }
  if (collection.model() != &model || !collection.has_strategy_lists()) {
    Fail(ErrorCode::kInvalidArgument, "collection was not indexed with this model");
  }
  if (x_.dimension() != model.num_strategies()) {
    Fail(ErrorCode::kInvalidArgument, "mix dimension does not match model");
  }
  prod_.assign(collection.theta(), 1.0);
  zeros_.assign(collection.theta(), 0);
  for (StrategyIndex j = 0; j < model.num_strategies(); ++j) {
    if (x_.steps[j] == 0) continue;
    for (const ListEntry& e : collection.strategy_list(j)) {
      double f = 1.0 - model.curve(e.curve).at(x_.steps[j]);
      if (f == 0.0) {
        ++zeros_[e.set];
      } else {
        prod_[e.set] *= f;
      }
    }
  }
  for (uint64_t i = 0; i < prod_.size(); ++i) covered_ += 1.0 - shared_product(i);
}

void GreedyState::Accumulate(SegmentDelta& seg, const ListEntry& e, int32_t from,
                             int32_t to) const {
  const QCurve& curve = model_->curve(e.curve);
  double f_old = 1.0 - curve.at(from);
  double f_new = 1.0 - curve.at(to);
  if (f_old == 0.0) {
    --seg.zero_shift;
  } else {
    seg.ratio /= f_old;
  }
  if (f_new == 0.0) {
    ++seg.zero_shift;
  } else {
    seg.ratio *= f_new;
  }
}

// Coverage change (1 - s_new) - (1 - s_old) of one set.
double GreedyState::SetChange(uint32_t set, const SegmentDelta& seg) const {
  const uint32_t zeros_new = zeros_[set] + seg.zero_shift;
  if (zeros_[set] == 0 && zeros_new == 0) return prod_[set] * (1.0 - seg.ratio);
  const double s_old = shared_product(set);
  const double s_new = zeros_new ? 0.0 : prod_[set] * seg.ratio;
  return s_old - s_new;
}

double GreedyState::ShiftGain(StrategyIndex j, int32_t shift) const {
  const int32_t from = x_.steps[j];
  const int32_t to = from + shift;
  double gain = 0.0;
  bool open = false;
  uint32_t prev = 0;
  SegmentDelta seg;
  for (const ListEntry& e : collection_->strategy_list(j)) {
    if (!open || e.set != prev) {
      if (open) gain += SetChange(prev, seg);
      seg = SegmentDelta{};
      prev = e.set;
      open = true;
    }
    Accumulate(seg, e, from, to);
  }
  if (open) gain += SetChange(prev, seg);
  return gain * collection_->num_nodes() / static_cast<double>(collection_->theta());
}

double GreedyState::TransferGain(StrategyIndex from, StrategyIndex to) const {
  if (from == to) return 0.0;
  auto a = collection_->strategy_list(from);
  auto b = collection_->strategy_list(to);
  const int32_t a0 = x_.steps[from];
  const int32_t b0 = x_.steps[to];
  size_t ia = 0;
  size_t ib = 0;
  double gain = 0.0;
  while (ia < a.size() || ib < b.size()) {
    uint32_t set = UINT32_MAX;
    if (ia < a.size()) set = a[ia].set;
    if (ib < b.size()) set = std::min(set, b[ib].set);
    SegmentDelta seg;
    for (; ia < a.size() && a[ia].set == set; ++ia) Accumulate(seg, a[ia], a0, a0 - 1);
    for (; ib < b.size() && b[ib].set == set; ++ib) Accumulate(seg, b[ib], b0, b0 + 1);
    gain += SetChange(set, seg);
  }
  return gain * collection_->num_nodes() / static_cast<double>(collection_->theta());
}

void GreedyState::Apply(StrategyIndex j, int32_t shift) {
  const int32_t from = x_.steps[j];
  const int32_t to = from + shift;
  for (const ListEntry& e : collection_->strategy_list(j)) {
    const QCurve& curve = model_->curve(e.curve);
    double f_old = 1.0 - curve.at(from);
    double f_new = 1.0 - curve.at(to);
    covered_ -= 1.0 - shared_product(e.set);
    if (f_old == 0.0) {
      --zeros_[e.set];
    } else {
      prod_[e.set] /= f_old;
    }
    if (f_new == 0.0) {
      ++zeros_[e.set];
    } else {
      prod_[e.set] *= f_new;
    }
    covered_ += 1.0 - shared_product(e.set);
  }
  x_.steps[j] = to;
}

double GreedyState::Estimate() const {
  if (prod_.empty()) Fail(ErrorCode::kUndefinedEstimate, "estimate needs at least one RR set");
  return covered_ * collection_->num_nodes() / static_cast<double>(prod_.size());
}

StrategyMix LGreedyDelta(const RRCollection& collection, const ActivationModel& model,
                         const LatticeConfig& lattice, const BudgetConstraint& constraint) {
  if (!model.is_independent()) {
    Fail(ErrorCode::kUnsupported, "Δ-greedy needs an independent-activation model; use LGreedy");
  }
  if (lattice.d != model.num_strategies()) {
    Fail(ErrorCode::kInvalidArgument, "lattice dimension does not match model");
  }
  if (collection.theta() == 0) return StrategyMix(lattice.d);
  GreedyState state(collection, model);
  BudgetTracker tracker(constraint, lattice.d);
  for (int32_t t = 0; t < constraint.total_steps(); ++t) {
    const double scale = state.Estimate();
    int64_t best_j = -1;
    double best_gain = 0.0;
    for (StrategyIndex j = 0; j < lattice.d; ++j) {
      if (!tracker.CanIncrement(j)) continue;
      double gain = state.MarginalGain(j);
      if (best_j < 0 || GainImproves(gain, best_gain, scale)) {
        best_j = j;
        best_gain = gain;
      }
    }
    if (best_j < 0) break;
    state.Apply(static_cast<StrategyIndex>(best_j));
    tracker.Increment(static_cast<StrategyIndex>(best_j));
  }
  return state.x();
}

SamplingStats RunImmSampling(uint64_t n, double M, const ImmParams& imm,
                             const std::function<void(uint64_t)>& extend_to,
                             const std::function<double()>& greedy_estimate) {
  if (n < 2) Fail(ErrorCode::kInvalidArgument, "sampling needs a graph with at least two nodes");
  if (!(imm.epsilon > 0.0) || !(imm.ell > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "need ε > 0 and ℓ > 0");
  }
  SamplingStats stats;
  stats.gamma = ComputeGamma(n, imm.epsilon, imm.ell, M);
  const double ell = imm.ell + stats.gamma + std::log(2.0) / std::log(double(n));
  stats.ell_effective = ell;
  const double eps_prime = std::sqrt(2.0) * imm.epsilon;
  const long double lambda_prime = LambdaPrime(n, eps_prime, ell, M);
  const auto stages = std::max<int64_t>(1, static_cast<int64_t>(std::floor(std::log2(double(n)))));

  for (int64_t i = 1; i <= stages; ++i) {
    const long double y = static_cast<long double>(n) / std::ldexp(1.0L, static_cast<int>(i));
    const long double theta_i = lambda_prime / y;
    extend_to(static_cast<uint64_t>(std::floor(theta_i)) + 1);
    stats.stages = static_cast<uint32_t>(i);
    const double estimate = greedy_estimate();
    if (estimate >= (1.0 + eps_prime) * y) {
      stats.lower_bound = estimate / (1.0 + eps_prime);
      stats.lower_bound_found = true;
      break;
    }
  }
  const long double theta = LambdaStar(n, imm.epsilon, ell, M) / stats.lower_bound;
  stats.theta = static_cast<uint64_t>(std::floor(theta)) + 1;
  extend_to(stats.theta);
  return stats;
}

void RequireValidModel(const ActivationModel& model, const LatticeConfig& lattice, bool force) {
  if (force) return;
  auto violations = ValidateModel(model, lattice);
  if (!violations.empty()) {
    Fail(ErrorCode::kInvalidArgument,
         "activation curves fail validation (" + violations.front() + "); pass force to override");
  }
}

namespace {

double GreedyEstimate(const RRCollection& collection, const ActivationModel& model,
                      const LatticeConfig& lattice, const BudgetConstraint& constraint,
                      StrategyMix* out) {
  StrategyMix x;
  double estimate;
  if (model.is_independent()) {
    x = LGreedyDelta(collection, model, lattice, constraint);
    estimate = GHat(collection, model, x);
  } else {
    x = LGreedy([&](const StrategyMix& m) { return GHat(collection, model, m); }, lattice,
                constraint);
    estimate = GHat(collection, model, x);
  }
  if (out) *out = std::move(x);
  return estimate;
}

}  // namespace

RRCollection Sampling(const DirectedGraph& graph, const TriggeringParams& params,
                      const ActivationModel& model, const LatticeConfig& lattice,
                      const BudgetConstraint& constraint, const ImmParams& imm, RandomStream rng,
                      SamplingStats* stats) {
  RRCollection collection(graph, params, &model, rng);
  const double M = ComputeM(lattice.d, constraint.total_steps());
  SamplingStats s = RunImmSampling(
      graph.num_nodes(), M, imm, [&](uint64_t target) { collection.ExtendTo(target); },
      [&] { return GreedyEstimate(collection, model, lattice, constraint, nullptr); });
  if (stats) *stats = s;
  return collection;
}

SolveResult ImmPrr(const DirectedGraph& graph, const TriggeringParams& params,
                   const ActivationModel& model, const LatticeConfig& lattice,
                   const BudgetConstraint& constraint, const SolveOptions& options,
                   RandomStream rng) {
  if (lattice.d != model.num_strategies()) {
    Fail(ErrorCode::kInvalidArgument, "lattice dimension does not match model");
  }
  SolveResult result;
  result.x = StrategyMix(lattice.d);
  if (constraint.total_steps() == 0) return result;
  RequireValidModel(model, lattice, options.force);
  RRCollection collection =
      Sampling(graph, params, model, lattice, constraint, options.imm, rng, &result.sampling);
  result.estimate = GreedyEstimate(collection, model, lattice, constraint, &result.x);
  result.theta = collection.theta();
  return result;
}

}  // namespace lim
