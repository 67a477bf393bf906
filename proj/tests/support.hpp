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

// Small helpers shared by the test binaries. Nothing here calls into the
// library's own bookkeeping when an independent recount is the point.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "clusterwave/graph.hpp"

namespace cwtest {

using clusterwave::Graph;
using clusterwave::Group;
using clusterwave::Network;
using clusterwave::NodeId;

inline Graph graph_from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  Graph g(n);
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

inline std::shared_ptr<const Network> network_of(Graph g, std::vector<Group> groups = {}) {
  return std::make_shared<const Network>(Network{std::move(g), std::move(groups)});
}

/// Degrees recounted from the edge list alone.
inline std::vector<std::size_t> recount_degrees(const Graph& g) {
  std::vector<std::size_t> deg(g.num_nodes(), 0);
  for (const auto& e : g.edges()) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

inline std::size_t component_count(const Graph& g) {
  DisjointSets sets(g.num_nodes());
  std::size_t count = g.num_nodes();
  for (const auto& e : g.edges()) count -= sets.unite(e.u, e.v);
  return count;
}

/// |observed - expected| in units of the binomial standard error.
inline double binomial_z(double observed_freq, double expected_p, std::size_t samples) {
  const double var = expected_p * (1.0 - expected_p) / static_cast<double>(samples);
  if (var == 0.0) return observed_freq == expected_p ? 0.0 : INFINITY;
  return std::abs(observed_freq - expected_p) / std::sqrt(var);
}

/// Per-process scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("clusterwave_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace cwtest
