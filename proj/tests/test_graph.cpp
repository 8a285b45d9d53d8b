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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lim/error.hpp"
#include "lim/graph.hpp"

using namespace lim;

namespace {

DirectedGraph Parse(const std::string& text, LoadReport* report = nullptr) {
  std::istringstream in(text);
  return LoadEdgeList(in, {}, report);
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("header plus one weighted edge") {
  DirectedGraph g = Parse("2 1\n0 1 0.5\n");
  CHECK(g.num_nodes() == 2);
  CHECK(g.num_edges() == 1);
  TriggeringParams p = ParamsFromFile(g, Diffusion::kIC);
  REQUIRE(g.in_degree(1) == 1);
  CHECK(g.in_sources(1)[0] == 0);
  CHECK(p.at(g.in_begin(1)) == 0.5);
}

TEST_CASE("comments, blank lines and sparse ids") {
  DirectedGraph g = Parse("# comment\n\n10 20\n20 30\n# x\n10 30\n");
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.original_id(0) == 10);
  CHECK(g.original_id(2) == 30);
  CHECK(g.in_degree(2) == 2);
  CHECK_FALSE(g.has_file_values());
}

TEST_CASE("header pads isolated nodes") {
  DirectedGraph g = Parse("5 1\n0 1\n");
  CHECK(g.num_nodes() == 5);
  CHECK(g.in_degree(4) == 0);
}

TEST_CASE("malformed lines report the line number") {
  try {
    Parse("0 1\n1 x\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK(CodeOf([] { Parse("0 1 0.5\n1 2\n"); }) == ErrorCode::kParse);
  CHECK(CodeOf([] { Parse("0 1 2 3\n"); }) == ErrorCode::kParse);
  CHECK(CodeOf([] { Parse("0 99999999999999999999999\n"); }) == ErrorCode::kRange);
}

TEST_CASE("header edge count must match") {
  CHECK(CodeOf([] {
          std::istringstream in("3 2\n0 1\n");
          LoadEdgeList(in, {HeaderMode::kPresent});
        }) == ErrorCode::kParse);
}

TEST_CASE("self-loops dropped, parallel edges kept") {
  LoadReport report;
  DirectedGraph g = Parse("0 0\n0 1\n0 1\n", &report);
  CHECK(report.self_loops_dropped == 1);
  CHECK(g.num_edges() == 2);
  CHECK(g.in_degree(1) == 2);
}

TEST_CASE("generated Erdos-Renyi file round trip") {
  RandomStream rng(5);
  DirectedGraph g = GenerateErdosRenyi(200, 1000, rng);
  auto path = std::filesystem::temp_directory_path() / "lim_test_er.txt";
  {
    std::ofstream out(path);
    WriteEdgeList(out, g);
  }
  size_t lines = 0;
  {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) ++lines;
  }
  CHECK(lines == 1001);
  DirectedGraph back = LoadEdgeListFile(path.string());
  CHECK(back.num_nodes() == 200);
  CHECK(back.num_edges() == 1000);
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    CHECK(g.in_degree(v) == back.in_degree(v));
    for (NodeId u : g.in_sources(v)) {
      CHECK(u != v);
      pairs.insert({u, v});
    }
  }
  CHECK(pairs.size() == 1000);
  std::filesystem::remove(path);
}

TEST_CASE("large synthetic file with DM-like size") {
  // Same node and edge counts as the DM collaboration network.
  RandomStream rng(11);
  DirectedGraph g = GenerateErdosRenyi(679, 3374, rng);
  std::stringstream ss;
  WriteEdgeList(ss, g);
  DirectedGraph back = LoadEdgeList(ss);
  CHECK(back.num_nodes() == 679);
  CHECK(back.num_edges() == 3374);
}

TEST_CASE("in and out adjacency agree") {
  RandomStream rng(3);
  DirectedGraph g = GenerateErdosRenyi(50, 300, rng);
  std::multiset<std::pair<NodeId, NodeId>> in_edges, out_edges;
  EdgeIndex total = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    total += g.in_degree(v);
    for (NodeId u : g.in_sources(v)) in_edges.insert({u, v});
    auto targets = g.out_targets(v);
    auto pos = g.out_in_positions(v);
    for (size_t k = 0; k < targets.size(); ++k) {
      out_edges.insert({v, targets[k]});
      CHECK(g.in_source_at(pos[k]) == v);
      CHECK(pos[k] >= g.in_begin(targets[k]));
      CHECK(pos[k] < g.in_end(targets[k]));
    }
  }
  CHECK(total == g.num_edges());
  CHECK(in_edges == out_edges);
}

TEST_CASE("weighted cascade") {
  // Star: ten spokes into node 0, plus one chain edge 0 -> 11.
  std::vector<DirectedGraph::Edge> edges;
  for (NodeId u = 1; u <= 10; ++u) edges.push_back({u, 0, 0.0});
  edges.push_back({0, 11, 0.0});
  DirectedGraph g(12, edges);
  TriggeringParams p = AssignWeightedCascade(g);
  for (EdgeIndex e = g.in_begin(0); e < g.in_end(0); ++e) CHECK(p.at(e) == doctest::Approx(0.1));
  CHECK(p.at(g.in_begin(11)) == 1.0);

  std::vector<DirectedGraph::Edge> four;
  for (NodeId u = 1; u <= 4; ++u) four.push_back({u, 0, 0.0});
  DirectedGraph g4(5, four);
  TriggeringParams p4 = AssignWeightedCascade(g4);
  for (EdgeIndex e = 0; e < 4; ++e) CHECK(p4.at(e) == 0.25);
}

TEST_CASE("parameter validation") {
  DirectedGraph g(3, std::vector<DirectedGraph::Edge>{{0, 2, 0.7}, {1, 2, 0.6}});
  CHECK_NOTHROW(ValidateParams(g, ParamsFromFile(g, Diffusion::kIC)));
  CHECK(CodeOf([&] { ParamsFromFile(g, Diffusion::kLT); }) == ErrorCode::kRange);
  DirectedGraph bare(2, std::vector<DirectedGraph::Edge>{{0, 1, NAN}});
  CHECK(CodeOf([&] { ParamsFromFile(bare, Diffusion::kIC); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("triggering set samples") {
  DirectedGraph lonely(1, std::vector<DirectedGraph::Edge>{});
  TriggeringParams none = AssignUniform(lonely, Diffusion::kIC, 0.5);
  RandomStream rng(1);
  CHECK(SampleTriggeringSet(lonely, none, 0, rng).empty());

  DirectedGraph g(3, std::vector<DirectedGraph::Edge>{{0, 2, 1.0}, {1, 2, 1.0}});
  TriggeringParams all = AssignUniform(g, Diffusion::kIC, 1.0);
  for (int t = 0; t < 100; ++t) CHECK(SampleTriggeringSet(g, all, 2, rng).size() == 2);

  TriggeringParams lt = AssignUniform(g, Diffusion::kLT, 0.3);
  const int N = 100000;
  std::map<int, int> freq;
  for (int t = 0; t < N; ++t) {
    auto s = SampleTriggeringSet(g, lt, 2, rng);
    REQUIRE(s.size() <= 1);
    freq[s.empty() ? -1 : static_cast<int>(s[0])]++;
  }
  CHECK(std::fabs(freq[0] / double(N) - 0.3) < 0.01);
  CHECK(std::fabs(freq[1] / double(N) - 0.3) < 0.01);
  CHECK(std::fabs(freq[-1] / double(N) - 0.4) < 0.01);
  for (int u : {0, 1}) {
    CHECK(std::fabs(freq[u] / double(N) - 0.3) < 4 * std::sqrt(0.3 * 0.7 / N));
  }
}
