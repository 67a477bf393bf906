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

#include "clusterwave/netgen.hpp"

#include <algorithm>
#include <vector>

namespace clusterwave {
namespace {

void require_kind(const GenParams& params, GraphKind kind) {
  if (params.kind != kind) {
    throw ParameterError("generator called with kind '" +
                         std::string(to_string(params.kind)) + "', expected '" +
                         std::string(to_string(kind)) + "'");
  }
  params.validate();
}

void add_cliques(Graph& g, std::size_t count, std::size_t size) {
  for (std::size_t k = 0; k < count; ++k) {
    const auto first = static_cast<NodeId>(k * size);
    for (NodeId a = first; a < first + size; ++a) {
      g.set_clique(a, static_cast<std::uint32_t>(k));
      for (NodeId b = a + 1; b < first + size; ++b) g.add_edge(a, b);
    }
  }
}

// Connects `director` to the rank-selected targets. Eligibility is checked
// again per edge; with distinct targets and the director excluded from the
// candidates it cannot change inside one batch, so every selection lands.
void connect_ranked(Graph& g, NodeId director, std::span<const Candidate> candidates,
                    std::size_t m0, std::size_t w, Rng& rng) {
  for (NodeId target : rank_select(candidates, m0, rng)) {
    if (g.degree(target) >= w) continue;
    g.add_edge(director, target);
  }
}

}  // namespace

Graph gen_sfn(const GenParams& params, Rng& rng) {
  require_kind(params, GraphKind::sfn);
  Graph g(params.n);
  add_cliques(g, 1, params.m0);

  std::vector<Candidate> candidates;
  candidates.reserve(params.n);
  for (auto i = static_cast<NodeId>(params.m0); i < params.n; ++i) {
    candidates.clear();
    for (NodeId j = 0; j < i; ++j) candidates.push_back({j, g.degree(j)});
    for (NodeId target : rank_select(candidates, params.m0, rng)) g.add_edge(i, target);
  }
  return g;
}

Graph gen_sfn_sc(const GenParams& params, Rng& rng) {
  require_kind(params, GraphKind::sfn_sc);
  Graph g(params.n);
  const std::size_t block = params.k * params.clique_size();
  add_cliques(g, params.k, params.clique_size());

  std::vector<Candidate> candidates;
  candidates.reserve(params.n);
  for (auto i = static_cast<NodeId>(block); i < params.n; ++i) {
    candidates.clear();
    for (NodeId j = 0; j < i; ++j) {
      if (g.degree(j) < params.w) candidates.push_back({j, g.degree(j)});
    }
    connect_ranked(g, i, candidates, params.m0, params.w, rng);
  }
  return g;
}

Graph gen_sfn_ssc(const GenParams& params, Rng& rng) {
  require_kind(params, GraphKind::sfn_ssc);
  Graph g(params.n);
  const std::size_t block = params.k * params.clique_size();
  add_cliques(g, params.k, params.clique_size());

  std::vector<Candidate> candidates;
  candidates.reserve(params.n);
  std::vector<char> adjacent(params.n, 0);
  for (auto i = static_cast<NodeId>(block); i < params.n; ++i) {
    for (NodeId j : g.neighbors(i)) adjacent[j] = 1;
    candidates.clear();
    for (NodeId j = 0; j < params.n; ++j) {
      if (j != i && !adjacent[j] && g.degree(j) < params.w) {
        candidates.push_back({j, g.degree(j)});
      }
    }
    for (NodeId j : g.neighbors(i)) adjacent[j] = 0;
    connect_ranked(g, i, candidates, params.m0, params.w, rng);
  }
  return g;
}

Graph generate(const GenParams& params, Rng& rng) {
  switch (params.kind) {
    case GraphKind::sfn:
      return gen_sfn(params, rng);
    case GraphKind::sfn_sc:
      return gen_sfn_sc(params, rng);
    case GraphKind::sfn_ssc:
      return gen_sfn_ssc(params, rng);
  }
  throw ParameterError("unknown graph kind");
}

Network make_network(const GenParams& params, Rng& rng) {
  Network net{generate(params, rng), {}};
  if (params.kind != GraphKind::sfn) net.groups = build_groups(net.graph);
  return net;
}

std::size_t paper_clique_count(std::size_t n, std::size_t w) {
  if (w == 0) throw ParameterError("w must be positive");
  return std::max<std::size_t>(1, (n + 5 * w) / (10 * w));
}

}  // namespace clusterwave
