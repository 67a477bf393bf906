// Copyright 2026 The Clusterwave Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "clusterwave/graph.hpp"
#include "clusterwave/io.hpp"
#include "clusterwave/netgen.hpp"
#include "support.hpp"

namespace cw = clusterwave;
using cwtest::graph_from_edges;

TEST(Graph, RejectsSelfLoopsAndDuplicates) {
  cw::Graph g(3);
  EXPECT_TRUE(g.add_edge(0, 1));
  EXPECT_FALSE(g.add_edge(1, 0));
  EXPECT_FALSE(g.add_edge(2, 2));
  EXPECT_EQ(g.num_edges(), 1u);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(1, 2));
  EXPECT_EQ(g.edges()[0], (cw::Edge{0, 1}));
}

TEST(Graph, DegreesMatchRecount) {
  const auto g = graph_from_edges(5, {{0, 1}, {0, 2}, {3, 0}, {2, 4}});
  const auto deg = cwtest::recount_degrees(g);
  for (cw::NodeId v = 0; v < 5; ++v) EXPECT_EQ(g.degree(v), deg[v]);
  EXPECT_EQ(g.max_degree(), 3u);
}

TEST(Graph, CliqueMembership) {
  cw::Graph g(4);
  g.set_clique(1, 0);
  g.set_clique(2, 1);
  EXPECT_FALSE(g.clique_of(0).has_value());
  EXPECT_EQ(g.clique_of(1), 0u);
  EXPECT_EQ(g.clique_of(2), 1u);
  EXPECT_EQ(g.num_cliques(), 2u);
}

TEST(RankSelect, EmptyCandidates) {
  cw::Rng rng(1);
  EXPECT_TRUE(cw::rank_select({}, 3, rng).empty());
}

TEST(RankSelect, SingleCandidateIsForced) {
  cw::Rng rng(2);
  const std::vector<cw::Candidate> c{{7, 42}};
  EXPECT_EQ(cw::rank_select(c, 1, rng), std::vector<cw::NodeId>{7});
  EXPECT_EQ(cw::rank_select(c, 4, rng), std::vector<cw::NodeId>{7});
}

TEST(RankSelect, ReturnsDistinctSubset) {
  cw::Rng rng(3);
  std::vector<cw::Candidate> c;
  for (cw::NodeId i = 0; i < 30; ++i) c.push_back({i * 2, i % 4});
  for (int rep = 0; rep < 200; ++rep) {
    const auto picked = cw::rank_select(c, 7, rng);
    ASSERT_EQ(picked.size(), 7u);
    std::set<cw::NodeId> s(picked.begin(), picked.end());
    EXPECT_EQ(s.size(), 7u);
    for (cw::NodeId v : picked) EXPECT_EQ(v % 2, 0u);
  }
}

TEST(RankSelect, DegreeWeightedFrequency) {
  // P(10 U > 1 V) = 1 - 1/(2 * 10) for independent uniforms.
  const std::vector<cw::Candidate> c{{0, 9}, {1, 0}};
  cw::Rng rng(4);
  const int draws = 100000;
  int a_wins = 0;
  for (int i = 0; i < draws; ++i) a_wins += cw::rank_select(c, 1, rng)[0] == 0;
  EXPECT_NEAR(a_wins / static_cast<double>(draws), 0.95, 0.01);
}

TEST(RankSelect, ZeroDegreeCandidatesAreReachable) {
  const std::vector<cw::Candidate> c{{0, 0}, {1, 0}, {2, 0}};
  cw::Rng rng(5);
  std::array<int, 3> hits{};
  for (int i = 0; i < 30000; ++i) ++hits[cw::rank_select(c, 1, rng)[0]];
  for (int h : hits) EXPECT_NEAR(h / 30000.0, 1.0 / 3.0, 0.015);
}

TEST(BuildGroups, Triangle) {
  const auto groups = cw::build_groups(graph_from_edges(3, {{0, 1}, {1, 2}, {0, 2}}));
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].center, 0u);
  EXPECT_EQ(groups[0].members, (std::vector<cw::NodeId>{0, 1, 2}));
}

TEST(BuildGroups, PathHasNone) {
  EXPECT_TRUE(cw::build_groups(graph_from_edges(3, {{0, 1}, {1, 2}})).empty());
}

TEST(BuildGroups, Star) {
  const auto groups =
      cw::build_groups(graph_from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}));
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_EQ(groups[0].members.size(), 6u);
}

TEST(BuildGroups, MembersAreLaterNeighborsOfCenter) {
  cw::Rng rng(6);
  const cw::Graph g = cw::generate({300, 6, 3, 2, cw::GraphKind::sfn_ssc}, rng);
  const auto groups = cw::build_groups(g);
  ASSERT_FALSE(groups.empty());
  cw::NodeId last_center = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& grp = groups[i];
    if (i > 0) {
      EXPECT_GT(grp.center, last_center);
    }
    last_center = grp.center;
    EXPECT_GE(grp.members.size(), 3u);
    EXPECT_TRUE(std::is_sorted(grp.members.begin(), grp.members.end()));
    for (cw::NodeId m : grp.members) {
      if (m == grp.center) continue;
      EXPECT_GT(m, grp.center);
      EXPECT_TRUE(g.has_edge(grp.center, m));
    }
  }
  // Deterministic: no randomness involved.
  const auto again = cw::build_groups(g);
  ASSERT_EQ(again.size(), groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) EXPECT_EQ(again[i].members, groups[i].members);
}

TEST(EdgeList, RoundTrip) {
  cw::Rng rng(8);
  const cw::GenParams params{60, 5, 3, 2, cw::GraphKind::sfn_sc};
  const cw::Graph g = cw::generate(params, rng);
  const std::string text = cw::to_edge_list(g, params, 8);
  std::istringstream in(text);
  const cw::EdgeListFile back = cw::read_edge_list(in);
  EXPECT_EQ(back.seed, 8u);
  EXPECT_EQ(back.params.n, 60u);
  EXPECT_EQ(back.params.k, 2u);
  EXPECT_EQ(back.params.kind, cw::GraphKind::sfn_sc);
  EXPECT_EQ(back.graph.num_edges(), g.num_edges());
  EXPECT_EQ(cw::graph_hash(back.graph), cw::graph_hash(g));
  EXPECT_EQ(cw::to_edge_list(back.graph, back.params, back.seed), text);
  for (cw::NodeId v = 0; v < 60; ++v) EXPECT_EQ(back.graph.clique_of(v), g.clique_of(v));
}

TEST(EdgeList, LinesAreSorted) {
  cw::Rng rng(9);
  const cw::GenParams params{40, 4, 2, 1, cw::GraphKind::sfn_ssc};
  const std::string text = cw::to_edge_list(cw::generate(params, rng), params, 9);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "40 4 2 1 ssc 9");
  std::pair<long, long> prev{-1, -1};
  while (std::getline(in, line) && line[0] != '#') {
    std::istringstream ls(line);
    std::pair<long, long> cur;
    ls >> cur.first >> cur.second;
    EXPECT_LT(cur.first, cur.second);
    EXPECT_LT(prev, cur);
    prev = cur;
  }
}

TEST(EdgeList, GoldenFixture) {
  // Generated once from (ssc, n=20, w=4, m0=2, k=1, seed=3) and frozen.
  const std::string golden = cw::read_file(CLUSTERWAVE_TEST_DATA "/ssc_n20_w4_m2_k1_s3.txt");
  const cw::GenParams params{20, 4, 2, 1, cw::GraphKind::sfn_ssc};
  cw::Rng rng(3);
  EXPECT_EQ(cw::to_edge_list(cw::generate(params, rng), params, 3), golden);
}

TEST(EdgeList, RejectsMalformedInput) {
  std::istringstream bad_header("10 2 x 1 ssc 0\n");
  EXPECT_THROW(cw::read_edge_list(bad_header), std::exception);
  std::istringstream bad_node("3 2 1 1 sc 0\n0 7\n");
  EXPECT_THROW(cw::read_edge_list(bad_node), std::exception);
}
