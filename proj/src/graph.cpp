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

#include "lim/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include "lim/error.hpp"

namespace lim {
namespace {

constexpr double kWeightSlack = 1e-9;

std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

struct Record {
  uint64_t line_no;
  std::vector<std::string_view> tokens;
};

uint64_t ParseId(std::string_view token, uint64_t line_no) {
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range) {
    Fail(ErrorCode::kRange, "line " + std::to_string(line_no) + ": id '" +
                                std::string(token) + "' overflows 64 bits");
  }
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    Fail(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected node id, got '" +
                                std::string(token) + "'");
  }
  return value;
}

double ParseValue(std::string_view token, uint64_t line_no) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
    Fail(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                ": expected edge probability, got '" + std::string(token) + "'");
  }
  return value;
}

bool IsInteger(std::string_view token) {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

DirectedGraph::DirectedGraph(NodeId num_nodes, std::span<const Edge> edges)
    : num_nodes_(num_nodes) {
  std::vector<EdgeIndex> in_count(num_nodes + 1, 0);
  std::vector<EdgeIndex> out_count(num_nodes + 1, 0);
  for (const Edge& e : edges) {
    if (e.source >= num_nodes || e.target >= num_nodes) {
      Fail(ErrorCode::kRange, "edge endpoint outside [0, n)");
    }
    if (e.source == e.target) Fail(ErrorCode::kInvalidArgument, "self-loop in edge list");
    ++in_count[e.target + 1];
    ++out_count[e.source + 1];
    if (!std::isnan(e.value)) has_file_values_ = true;
  }
  for (NodeId v = 0; v < num_nodes; ++v) {
    in_count[v + 1] += in_count[v];
    out_count[v + 1] += out_count[v];
  }
  in_offsets_ = in_count;
  out_offsets_ = out_count;
  in_sources_.resize(edges.size());
  file_values_.resize(edges.size());
  out_targets_.resize(edges.size());
  out_to_in_.resize(edges.size());

  // Stable fill keeps in-neighbor order equal to input order per target.
  std::vector<EdgeIndex> in_cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  std::vector<EdgeIndex> out_cursor(out_offsets_.begin(), out_offsets_.end() - 1);
  for (const Edge& e : edges) {
    EdgeIndex pos = in_cursor[e.target]++;
    in_sources_[pos] = e.source;
    file_values_[pos] = e.value;
    EdgeIndex opos = out_cursor[e.source]++;
    out_targets_[opos] = e.target;
    out_to_in_[opos] = pos;
  }
}

void DirectedGraph::set_original_ids(std::vector<uint64_t> ids) {
  if (!ids.empty() && ids.size() != num_nodes_) {
    Fail(ErrorCode::kInvalidArgument, "original id table size mismatch");
  }
  original_ids_ = std::move(ids);
}

DirectedGraph LoadEdgeList(std::istream& in, EdgeListFormat format, LoadReport* report) {
  std::vector<std::string> lines;
  std::vector<Record> records;
  {
    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(std::move(line));
    }
    line_no = 0;
    for (const std::string& l : lines) {
      ++line_no;
      auto tokens = Tokenize(l);
      if (tokens.empty() || tokens.front().front() == '#') continue;
      records.push_back({line_no, std::move(tokens)});
    }
  }

  bool has_header = false;
  uint64_t header_n = 0;
  uint64_t header_m = 0;
  if (!records.empty() && format.header != HeaderMode::kAbsent) {
    const Record& first = records.front();
    bool shaped = first.tokens.size() == 2 && IsInteger(first.tokens[0]) && IsInteger(first.tokens[1]);
    if (format.header == HeaderMode::kPresent) {
      if (!shaped) {
        Fail(ErrorCode::kParse, "line " + std::to_string(first.line_no) + ": expected header 'n m'");
      }
      has_header = true;
    } else if (shaped) {
      uint64_t m = ParseId(first.tokens[1], first.line_no);
      has_header = (m == records.size() - 1);
    }
    if (has_header) {
      header_n = ParseId(first.tokens[0], first.line_no);
      header_m = ParseId(first.tokens[1], first.line_no);
    }
  }

  struct RawEdge {
    uint64_t u, v;
    double p;
  };
  std::vector<RawEdge> raw;
  raw.reserve(records.size());
  int weighted = -1;
  uint64_t self_loops = 0;
  for (size_t r = has_header ? 1 : 0; r < records.size(); ++r) {
    const Record& rec = records[r];
    if (rec.tokens.size() != 2 && rec.tokens.size() != 3) {
      Fail(ErrorCode::kParse, "line " + std::to_string(rec.line_no) +
                                  ": expected 'u v [p]', got " +
                                  std::to_string(rec.tokens.size()) + " fields");
    }
    int this_weighted = rec.tokens.size() == 3 ? 1 : 0;
    if (weighted >= 0 && weighted != this_weighted) {
      Fail(ErrorCode::kParse, "line " + std::to_string(rec.line_no) +
                                  ": mixes weighted and bare edge records");
    }
    weighted = this_weighted;
    uint64_t u = ParseId(rec.tokens[0], rec.line_no);
    uint64_t v = ParseId(rec.tokens[1], rec.line_no);
    double p = this_weighted ? ParseValue(rec.tokens[2], rec.line_no)
                             : std::numeric_limits<double>::quiet_NaN();
    if (u == v) {
      ++self_loops;
      continue;
    }
    raw.push_back({u, v, p});
  }
  uint64_t num_records = raw.size() + self_loops;
  if (has_header && header_m != num_records) {
    Fail(ErrorCode::kParse, "header declares m=" + std::to_string(header_m) + " but found " +
                                std::to_string(num_records) + " edge records");
  }

  std::vector<uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const RawEdge& e : raw) {
    ids.push_back(e.u);
    ids.push_back(e.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  uint64_t n = ids.size();
  if (has_header) {
    if (ids.size() > header_n) {
      Fail(ErrorCode::kParse, "header declares n=" + std::to_string(header_n) + " but edges use " +
                                  std::to_string(ids.size()) + " distinct ids");
    }
    n = header_n;
  }
  if (n > std::numeric_limits<NodeId>::max()) {
    Fail(ErrorCode::kRange, "node count exceeds 32-bit id space");
  }

  // Ids already dense in [0, n) keep their value; otherwise compact by rank.
  bool identity = ids.empty() || ids.back() < n;
  std::vector<uint64_t> original;
  if (!identity) {
    original = ids;
    for (uint64_t pad = 0; original.size() < n; ++pad) original.push_back(ids.back() + 1 + pad);
  }
  auto compact = [&](uint64_t id) -> NodeId {
    if (identity) return static_cast<NodeId>(id);
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };

  std::vector<DirectedGraph::Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw) edges.push_back({compact(e.u), compact(e.v), e.p});
  DirectedGraph graph(static_cast<NodeId>(n), edges);
  graph.set_original_ids(std::move(original));
  if (report) {
    report->records = num_records;
    report->self_loops_dropped = self_loops;
  }
  return graph;
}

DirectedGraph LoadEdgeListFile(const std::string& path, EdgeListFormat format, LoadReport* report) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open edge list '" + path + "'");
  return LoadEdgeList(in, format, report);
}

void WriteEdgeList(std::ostream& out, const DirectedGraph& graph, const TriggeringParams* params) {
  out << graph.num_nodes() << ' ' << graph.num_edges() << '\n';
  char buf[64];
  for (NodeId u = 0; u < graph.num_nodes(); ++u) {
    auto targets = graph.out_targets(u);
    auto positions = graph.out_in_positions(u);
    for (size_t i = 0; i < targets.size(); ++i) {
      out << u << ' ' << targets[i];
      if (params) {
        std::snprintf(buf, sizeof(buf), " %.17g", params->at(positions[i]));
        out << buf;
      }
      out << '\n';
    }
  }
}

TriggeringParams AssignWeightedCascade(const DirectedGraph& graph) {
  TriggeringParams params{Diffusion::kIC, std::vector<double>(graph.num_edges())};
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    uint64_t deg = graph.in_degree(v);
    for (EdgeIndex e = graph.in_begin(v); e < graph.in_end(v); ++e) {
      params.values[e] = 1.0 / static_cast<double>(deg);
    }
  }
  return params;
}

TriggeringParams AssignUniform(const DirectedGraph& graph, Diffusion kind, double value) {
  TriggeringParams params{kind, std::vector<double>(graph.num_edges(), value)};
  ValidateParams(graph, params);
  return params;
}

TriggeringParams ParamsFromFile(const DirectedGraph& graph, Diffusion kind) {
  if (graph.num_edges() > 0 && !graph.has_file_values()) {
    Fail(ErrorCode::kInvalidArgument,
         "edge list carries no probabilities; assign weighted cascade or uniform parameters");
  }
  TriggeringParams params{kind, std::vector<double>(graph.num_edges())};
  for (EdgeIndex e = 0; e < graph.num_edges(); ++e) params.values[e] = graph.file_value_at(e);
  ValidateParams(graph, params);
  return params;
}

void ValidateParams(const DirectedGraph& graph, const TriggeringParams& params) {
  if (params.values.size() != graph.num_edges()) {
    Fail(ErrorCode::kInvalidArgument, "parameter vector does not match edge count");
  }
  for (NodeId v = 0; v < graph.num_nodes(); ++v) {
    double total = 0.0;
    for (EdgeIndex e = graph.in_begin(v); e < graph.in_end(v); ++e) {
      double p = params.values[e];
      if (!(p >= 0.0 && p <= 1.0)) {
        Fail(ErrorCode::kRange, "edge parameter outside [0,1] on edge into node " + std::to_string(v));
      }
      total += p;
    }
    if (params.kind == Diffusion::kLT && total > 1.0 + kWeightSlack) {
      Fail(ErrorCode::kRange, "LT weights into node " + std::to_string(v) + " sum to more than 1");
    }
  }
}

EdgeIndex SampleLinearThresholdEdge(const DirectedGraph& graph, const TriggeringParams& params,
                                    NodeId v, RandomStream& rng) {
  EdgeIndex end = graph.in_end(v);
  if (graph.in_begin(v) == end) return end;
  double u = rng.Uniform();
  double acc = 0.0;
  for (EdgeIndex e = graph.in_begin(v); e < end; ++e) {
    acc += params.values[e];
    if (u < acc) return e;
  }
  return end;
}

std::vector<NodeId> SampleTriggeringSet(const DirectedGraph& graph, const TriggeringParams& params,
                                        NodeId v, RandomStream& rng) {
  std::vector<NodeId> result;
  if (params.kind == Diffusion::kIC) {
    for (EdgeIndex e = graph.in_begin(v); e < graph.in_end(v); ++e) {
      if (rng.Bernoulli(params.values[e])) result.push_back(graph.in_source_at(e));
    }
  } else {
    EdgeIndex e = SampleLinearThresholdEdge(graph, params, v, rng);
    if (e != graph.in_end(v)) result.push_back(graph.in_source_at(e));
  }
  return result;
}

DirectedGraph GenerateErdosRenyi(NodeId n, uint64_t m, RandomStream& rng) {
  if (n < 2 && m > 0) Fail(ErrorCode::kInvalidArgument, "need at least two nodes for edges");
  uint64_t max_edges = static_cast<uint64_t>(n) * (n - 1);
  if (m > max_edges) {
    Fail(ErrorCode::kInvalidArgument, "requested " + std::to_string(m) + " edges but only " +
                                          std::to_string(max_edges) + " distinct pairs exist");
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<DirectedGraph::Edge> edges;
  edges.reserve(m);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  while (edges.size() < m) {
    auto u = static_cast<NodeId>(rng.Below(n));
    auto v = static_cast<NodeId>(rng.Below(n));
    if (u == v || !seen.emplace(u, v).second) continue;
    edges.push_back({u, v, nan});
  }
  return DirectedGraph(n, edges);
}

}  // namespace lim
