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

#include "lim/rrset.hpp"

#include <cstring>
#include <istream>
#include <ostream>

#include "lim/error.hpp"
#include "parallel.hpp"

namespace lim {
namespace {

constexpr char kMagic[8] = {'L', 'I', 'M', 'R', 'R', 'S', 'E', 'T'};
constexpr uint32_t kFormatVersion = 1;
constexpr uint64_t kBatch = 1 << 14;

template <typename T>
void WritePod(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T ReadPod(std::istream& in) {
  T value{};
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    Fail(ErrorCode::kParse, "truncated RR collection dump");
  }
  return value;
}

}  // namespace

RRSetGenerator::RRSetGenerator(const DirectedGraph& graph, const TriggeringParams& params)
    : graph_(&graph), params_(&params), stamp_(graph.num_nodes(), 0) {}

void RRSetGenerator::NextEpoch() {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
}

uint64_t RRSetGenerator::Generate(NodeId root, RandomStream& rng, std::vector<NodeId>& members) {
  return Generate(root, rng, members, [](NodeId) {});
}

RRSet GenerateRRSet(const DirectedGraph& graph, const TriggeringParams& params, NodeId root,
                    RandomStream& rng) {
  if (root >= graph.num_nodes()) Fail(ErrorCode::kRange, "RR root outside [0, n)");
  RRSetGenerator gen(graph, params);
  RRSet set;
  set.root = root;
  set.width = gen.Generate(root, rng, set.members);
  return set;
}

RRCollection::RRCollection(const DirectedGraph& graph, const TriggeringParams& params,
                           const ActivationModel* model, RandomStream base)
    : graph_(&graph), params_(&params), model_(model), base_(base) {
  if (model_ && model_->num_nodes() != graph.num_nodes()) {
    Fail(ErrorCode::kInvalidArgument, "activation model and graph disagree on n");
  }
  if (model_ && model_->is_independent()) lists_.resize(model_->num_strategies());
}

void RRCollection::Append(NodeId root, std::span<const NodeId> members, uint64_t width) {
  if (theta() >= UINT32_MAX) Fail(ErrorCode::kRange, "RR collection exceeds 2^32 sets");
  auto id = static_cast<uint32_t>(theta());
  roots_.push_back(root);
  widths_.push_back(width);
  members_.insert(members_.end(), members.begin(), members.end());
  offsets_.push_back(members_.size());
  if (!lists_.empty()) {
    for (NodeId v : members) {
      for (const StrategyArm& arm : model_->arms(v)) lists_[arm.strategy].push_back({id, v, arm.curve});
    }
  }
  node_offsets_.clear();
  node_sets_.clear();
}

void RRCollection::Extend(uint64_t count) {
  if (graph_->num_nodes() == 0) {
    if (count) Fail(ErrorCode::kInvalidArgument, "cannot sample RR sets on an empty graph");
    return;
  }
  const uint64_t start = theta();
  std::vector<std::vector<NodeId>> batch_members;
  std::vector<NodeId> batch_roots;
  std::vector<uint64_t> batch_widths;
  for (uint64_t done = 0; done < count;) {
    uint64_t nb = std::min(kBatch, count - done);
    batch_members.assign(nb, {});
    batch_roots.assign(nb, 0);
    batch_widths.assign(nb, 0);
    detail::ParallelFor(
        nb, [&] { return RRSetGenerator(*graph_, *params_); },
        [&](RRSetGenerator& gen, uint64_t i) {
          RandomStream rng = base_.Split(start + done + i);
          auto root = static_cast<NodeId>(rng.Below(graph_->num_nodes()));
          batch_roots[i] = root;
          batch_widths[i] = gen.Generate(root, rng, batch_members[i]);
        });
    for (uint64_t i = 0; i < nb; ++i) Append(batch_roots[i], batch_members[i], batch_widths[i]);
    done += nb;
  }
}

uint64_t RRCollection::total_width() const {
  uint64_t total = 0;
  for (uint64_t w : widths_) total += w;
  return total;
}

uint64_t RRCollection::total_list_entries() const {
  uint64_t total = 0;
  for (const auto& l : lists_) total += l.size();
  return total;
}

std::span<const uint32_t> RRCollection::sets_containing(NodeId v) const {
  if (node_offsets_.empty()) {
    NodeId n = graph_->num_nodes();
    node_offsets_.assign(n + 1, 0);
    for (NodeId u : members_) ++node_offsets_[u + 1];
    for (NodeId u = 0; u < n; ++u) node_offsets_[u + 1] += node_offsets_[u];
    node_sets_.resize(members_.size());
    std::vector<uint64_t> cursor(node_offsets_.begin(), node_offsets_.end() - 1);
    for (uint64_t i = 0; i < theta(); ++i) {
      for (NodeId u : members(i)) node_sets_[cursor[u]++] = static_cast<uint32_t>(i);
    }
  }
  return {node_sets_.data() + node_offsets_[v], node_sets_.data() + node_offsets_[v + 1]};
}

void RRCollection::Save(std::ostream& out) const {
  out.write(kMagic, sizeof(kMagic));
  WritePod(out, kFormatVersion);
  WritePod(out, static_cast<uint32_t>(graph_->num_nodes()));
  WritePod(out, theta());
  for (uint64_t i = 0; i < theta(); ++i) {
    WritePod(out, roots_[i]);
    WritePod(out, widths_[i]);
    auto m = members(i);
    WritePod(out, static_cast<uint32_t>(m.size()));
    out.write(reinterpret_cast<const char*>(m.data()),
              static_cast<std::streamsize>(m.size() * sizeof(NodeId)));
  }
  if (!out) Fail(ErrorCode::kIo, "failed writing RR collection");
}

RRCollection RRCollection::Load(std::istream& in, const DirectedGraph& graph,
                                const TriggeringParams& params, const ActivationModel* model,
                                RandomStream base) {
  char magic[sizeof(kMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    Fail(ErrorCode::kParse, "not an RR collection dump");
  }
  auto version = ReadPod<uint32_t>(in);
  if (version != kFormatVersion) {
    Fail(ErrorCode::kParse, "unsupported RR dump version " + std::to_string(version));
  }
  auto n = ReadPod<uint32_t>(in);
  if (n != graph.num_nodes()) Fail(ErrorCode::kInvalidArgument, "RR dump was made for another graph");
  auto theta = ReadPod<uint64_t>(in);
  RRCollection c(graph, params, model, base);
  std::vector<NodeId> members;
  for (uint64_t i = 0; i < theta; ++i) {
    auto root = ReadPod<NodeId>(in);
    auto width = ReadPod<uint64_t>(in);
    auto size = ReadPod<uint32_t>(in);
    if (size > n) Fail(ErrorCode::kParse, "corrupt RR set size");
    members.resize(size);
    if (!in.read(reinterpret_cast<char*>(members.data()),
                 static_cast<std::streamsize>(size * sizeof(NodeId)))) {
      Fail(ErrorCode::kParse, "truncated RR collection dump");
    }
    for (NodeId v : members) {
      if (v >= n) Fail(ErrorCode::kParse, "corrupt RR member id");
    }
    c.Append(root, members, width);
  }
  return c;
}

RRCollection GenerateCollection(const DirectedGraph& graph, const TriggeringParams& params,
                                 const ActivationModel* model, uint64_t count, RandomStream base) {
  RRCollection c(graph, params, model, base);
  c.Extend(count);
  return c;
}

double GHatFromH(const RRCollection& collection, std::span<const double> h) {
  if (collection.theta() == 0) {
    Fail(ErrorCode::kUndefinedEstimate, "estimate needs at least one RR set");
  }
  double covered = 0.0;
  for (uint64_t i = 0; i < collection.theta(); ++i) {
    double miss = 1.0;
    for (NodeId v : collection.members(i)) miss *= 1.0 - h[v];
    covered += 1.0 - miss;
  }
  return static_cast<double>(collection.num_nodes()) * covered /
         static_cast<double>(collection.theta());
}

double GHat(const RRCollection& collection, const ActivationModel& model, const StrategyMix& x) {
  if (collection.theta() == 0) {
    Fail(ErrorCode::kUndefinedEstimate, "estimate needs at least one RR set");
  }
  if (model.is_independent()) return GHatFromH(collection, AllHValues(model, x));
  // Black-box h is evaluated only for nodes that occur in some set.
  std::vector<double> h(model.num_nodes(), -1.0);
  for (uint64_t i = 0; i < collection.theta(); ++i) {
    for (NodeId v : collection.members(i)) {
      if (h[v] < 0.0) h[v] = HValue(model, v, x);
    }
  }
  return GHatFromH(collection, h);
}

}  // namespace lim
