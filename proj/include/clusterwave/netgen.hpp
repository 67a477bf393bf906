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

#include "clusterwave/graph.hpp"

namespace clusterwave {

/// Unconstrained preferential growth from a single clique of m0 nodes. Each
/// later node directs min(m0, i) edges to rank-selected earlier nodes.
Graph gen_sfn(const GenParams& params, Rng& rng);

/// Capacity-constrained growth. K disjoint cliques of min(m0, w) nodes, then
/// each arriving node directs up to m0 edges to earlier nodes whose degree is
/// still below w. Nodes that find nobody eligible stay isolated.
Graph gen_sfn_sc(const GenParams& params, Rng& rng);

/// Selfish variant: every node exists from the start. After the clique block,
/// nodes direct up to m0 edges in index order to any non-adjacent node whose
/// degree is below w, regardless of the director's own degree.
Graph gen_sfn_ssc(const GenParams& params, Rng& rng);

/// Dispatches on params.kind after validating.
Graph generate(const GenParams& params, Rng& rng);

/// Generates the graph and its meeting rooms. Rooms exist only for the two
/// constrained kinds.
Network make_network(const GenParams& params, Rng& rng);

/// K = max(1, round(0.1 * n / w)) with round-half-up, in exact integer
/// arithmetic.
std::size_t paper_clique_count(std::size_t n, std::size_t w);

}  // namespace clusterwave
