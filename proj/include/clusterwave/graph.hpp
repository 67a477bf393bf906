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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "clusterwave/rng.hpp"

namespace clusterwave {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Undirected simple contact graph. Edges are kept in insertion order (the
/// order the generators created them) and every edge is stored with u < v.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n_nodes);

  std::size_t num_nodes() const { return adjacency_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
  std::span<const Edge> edges() const { return edges_; }

  bool has_edge(NodeId a, NodeId b) const;

  /// Adds {a, b}. Self-loops and duplicates are rejected (returns false).
  bool add_edge(NodeId a, NodeId b);

  void set_clique(NodeId v, std::uint32_t clique);
  std::optional<std::uint32_t> clique_of(NodeId v) const;
  std::uint32_t num_cliques() const { return num_cliques_; }

  std::size_t max_degree() const;

 private:
  static constexpr std::uint32_t kNoClique = UINT32_MAX;

  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> clique_;
  std::uint32_t num_cliques_ = 0;
};

/// A meeting room: a center plus its later-arriving neighbors.
struct Group {
  NodeId center;
  std::vector<NodeId> members;  // sorted, includes center
};

/// A graph together with its meeting rooms. Immutable once built, so trials
/// running concurrently may share one instance.
struct Network {
  Graph graph;
  std::vector<Group> groups;
};

enum class GraphKind { sfn, sfn_sc, sfn_ssc };

std::string_view to_string(GraphKind kind);
GraphKind parse_graph_kind(std::string_view text);

struct GenParams {
  std::size_t n = 0;   // node count
  std::size_t w = 1;   // acceptance cap
  std::size_t m0 = 0;  // chosen contacts per director
  std::size_t k = 1;   // initial clique count
  GraphKind kind = GraphKind::sfn_ssc;

  /// Nodes per initial clique: min(m0, w) for the constrained kinds, m0 for
  /// the unconstrained baseline.
  std::size_t clique_size() const;

  /// Throws ParameterError when the combination is not generable.
  void validate() const;
};

struct Candidate {
  NodeId id;
  std::size_t degree;
};

/// Degree-preferential rank selection. Every candidate draws a fresh key
/// u * (degree + 1), u ~ U(0,1); the top-m keys win. Returns
/// min(m, candidates.size()) distinct ids in rank order (highest key first).
std::vector<NodeId> rank_select(std::span<const Candidate> candidates,
                                std::size_t m, Rng& rng);

/// One candidate group per node i: {i} and every j > i adjacent to i. Only
/// groups with at least three members are returned, ordered by center.
std::vector<Group> build_groups(const Graph& g);

// Edge-list text format:
//   N W m0 K kind seed
//   u v           (one line per edge, u < v, sorted)
//   #clique v k   (one line per clique member, sorted by v)
void write_edge_list(std::ostream& out, const Graph& g, const GenParams& params,
                     std::uint64_t seed);
std::string to_edge_list(const Graph& g, const GenParams& params,
                         std::uint64_t seed);

struct EdgeListFile {
  Graph graph;
  GenParams params;
  std::uint64_t seed = 0;
};
EdgeListFile read_edge_list(std::istream& in);

/// Stable 64-bit hash of the serialized edge set and clique membership.
std::uint64_t graph_hash(const Graph& g);

}  // namespace clusterwave
