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

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "clusterwave/epidemic.hpp"
#include "clusterwave/graph.hpp"

namespace clusterwave {

/// Replace the contact network by a freshly generated one.
struct StructuralChange {
  GenParams params;
  std::uint64_t seed = 0;
};

/// Change the weekly activation rate.
struct SetActivation {
  double p = 1.0;
};

using ScenarioAction = std::variant<StructuralChange, SetActivation>;

struct ScenarioEvent {
  int week = 1;
  ScenarioAction action;
};

struct ScenarioScript {
  std::vector<ScenarioEvent> events;  // strictly increasing weeks

  bool empty() const { return events.empty(); }
  bool has_activation_change() const;
  /// Throws ParameterError unless weeks are strictly increasing in [1, horizon].
  void validate(int horizon) const;
};

struct NetworkSwap {
  std::shared_ptr<const Network> network;
  std::int64_t edge_delta = 0;
};

/// Builds the replacement network for a structural change. The node count must
/// match; identity is by index so node states carry over unchanged.
NetworkSwap apply_structural_change(const Graph& old_graph, const GenParams& new_params,
                                    Rng& rng);

/// Applies one scripted action to a running simulation.
void apply_action(Simulation& sim, const ScenarioAction& action);

/// Like run_trial, but applies every event scheduled for week t right before
/// week t is simulated.
TrialResult run_scenario(std::shared_ptr<const Network> net, std::size_t w,
                         const EpidemicParams& params, const ScenarioScript& script,
                         std::uint64_t seed);

/// Paired trajectories sharing history up to the first scripted week.
struct BranchedRun {
  TrialResult baseline;  // script ignored
  TrialResult scenario;  // script applied from the checkpoint
};

/// Runs the unmodified trial, checkpoints it right before the first scripted
/// week and replays the script on a copy. The copy continues on the stream
/// derive_seed(seed, "release") so both continuations are independent.
BranchedRun run_branched(std::shared_ptr<const Network> net, std::size_t w,
                         const EpidemicParams& params, const ScenarioScript& script,
                         std::uint64_t seed);

}  // namespace clusterwave
