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

#include "clusterwave/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

namespace clusterwave {

Graph::Graph(std::size_t n_nodes)
    : adjacency_(n_nodes), clique_(n_nodes, kNoClique) {}

bool Graph::has_edge(NodeId a, NodeId b) const {
  const auto& shorter =
      adjacency_[a].size() <= adjacency_[b].size() ? adjacency_[a] : adjacency_[b];
  const NodeId other = adjacency_[a].size() <= adjacency_[b].size() ? b : a;
  return std::find(shorter.begin(), shorter.end(), other) != shorter.end();
}

bool Graph::add_edge(NodeId a, NodeId b) {
  if (a == b || a >= num_nodes() || b >= num_nodes() || has_edge(a, b)) {
    return false;
  }
  adjacency_[a].push_back(b);
  adjacency_[b].push_back(a);
  edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
  return true;
}

void Graph::set_clique(NodeId v, std::uint32_t clique) {
  clique_[v] = clique;
  num_cliques_ = std::max(num_cliques_, clique + 1);
}

std::optional<std::uint32_t> Graph::clique_of(NodeId v) const {
  if (clique_[v] == kNoClique) return std::nullopt;
  return clique_[v];
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& adj : adjacency_) best = std::max(best, adj.size());
  return best;
}

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::sfn:
      return "sfn";
    case GraphKind::sfn_sc:
      return "sc";
    case GraphKind::sfn_ssc:
      return "ssc";
  }
  return "?";
}

GraphKind parse_graph_kind(std::string_view text) {
  if (text == "sfn") return GraphKind::sfn;
  if (text == "sc" || text == "sfn-sc" || text == "sfn_sc") return GraphKind::sfn_sc;
  if (text == "ssc" || text == "sfn-ssc" || text == "sfn_ssc") return GraphKind::sfn_ssc;
  throw ParameterError("unknown graph kind '" + std::string(text) + "'");
}

std::size_t GenParams::clique_size() const {
  return kind == GraphKind::sfn ? m0 : std::min(m0, w);
}

void GenParams::validate() const {
  if (n == 0) throw ParameterError("n must be positive");
  if (w == 0) throw ParameterError("w must be positive");
  if (k == 0) throw ParameterError("k must be positive");
  if (kind == GraphKind::sfn) {
    if (k != 1) throw ParameterError("the baseline generator uses a single clique (k = 1)");
    if (m0 == 0) throw ParameterError("the baseline generator needs m0 >= 1");
    if (n < m0) throw ParameterError("n must be at least m0");
    return;
  }
  if (n < k * clique_size()) {
    throw ParameterError("n must be at least k * min(m0, w)");
  }
}

std::vector<NodeId> rank_select(std::span<const Candidate> candidates,
                                std::size_t m, Rng& rng) {
  struct Keyed {
    double key;
    NodeId id;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(candidates.size());
  for (const auto& c : candidates) {
    keyed.push_back({rng.uniform() * static_cast<double>(c.degree + 1), c.id});
  }
  const std::size_t take = std::min(m, keyed.size());
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(take),
                    keyed.end(), [](const Keyed& a, const Keyed& b) {
                      return a.key > b.key || (a.key == b.key && a.id < b.id);
                    });
  std::vector<NodeId> chosen;
  chosen.reserve(take);
  for (std::size_t i = 0; i < take; ++i) chosen.push_back(keyed[i].id);
  return chosen;
}

std::vector<Group> build_groups(const Graph& g) {
  std::vector<Group> groups;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    std::vector<NodeId> members{i};
    for (NodeId j : g.neighbors(i)) {
      if (j > i) members.push_back(j);
    }
    if (members.size() < 3) continue;
    std::sort(members.begin(), members.end());
    groups.push_back(Group{i, std::move(members)});
  }
  return groups;
}

namespace {

std::vector<Edge> sorted_edges(const Graph& g) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

void write_edge_list(std::ostream& out, const Graph& g, const GenParams& params,
                     std::uint64_t seed) {
  out << g.num_nodes() << ' ' << params.w << ' ' << params.m0 << ' ' << params.k
      << ' ' << to_string(params.kind) << ' ' << seed << '\n';
  for (const Edge& e : sorted_edges(g)) out << e.u << ' ' << e.v << '\n';
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (auto k = g.clique_of(v)) out << "#clique " << v << ' ' << *k << '\n';
  }
}

std::string to_edge_list(const Graph& g, const GenParams& params, std::uint64_t seed) {
  std::ostringstream out;
  write_edge_list(out, g, params, seed);
  return out.str();
}

EdgeListFile read_edge_list(std::istream& in) {
  EdgeListFile file;
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("edge list: missing header");
  std::istringstream hs(header);
  std::string kind;
  if (!(hs >> file.params.n >> file.params.w >> file.params.m0 >> file.params.k >> kind >>
        file.seed)) {
    throw std::runtime_error("edge list: malformed header '" + header + "'");
  }
  file.params.kind = parse_graph_kind(kind);
  file.graph = Graph(file.params.n);

  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line.starts_with("#clique")) {
      std::string tag;
      NodeId v = 0;
      std::uint32_t k = 0;
      if (!(ls >> tag >> v >> k) || v >= file.params.n) {
        throw std::runtime_error("edge list: bad clique line " + std::to_string(line_no));
      }
      file.graph.set_clique(v, k);
      continue;
    }
    NodeId u = 0;
    NodeId v = 0;
    if (!(ls >> u >> v) || !file.graph.add_edge(u, v)) {
      throw std::runtime_error("edge list: bad edge line " + std::to_string(line_no));
    }
  }
  return file;
}

std::uint64_t graph_hash(const Graph& g) {
  std::uint64_t hash = fnv1a(std::to_string(g.num_nodes()));
  for (const Edge& e : sorted_edges(g)) {
    hash = fnv1a(std::to_string(e.u) + ' ' + std::to_string(e.v) + '\n', hash);
  }
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (auto k = g.clique_of(v)) {
      hash = fnv1a("#" + std::to_string(v) + ' ' + std::to_string(*k) + '\n', hash);
    }
  }
  return hash;
}

}  // namespace clusterwave
