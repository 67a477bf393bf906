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

#include "clusterwave/scenario.hpp"

#include <utility>

#include "clusterwave/netgen.hpp"

namespace clusterwave {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Steps `sim` to the horizon, applying events whose week is still ahead.
void play(Simulation& sim, const ScenarioScript& script) {
  auto next = script.events.begin();
  while (next != script.events.end() && next->week <= sim.week()) ++next;
  while (!sim.finished()) {
    const int upcoming = sim.week() + 1;
    for (; next != script.events.end() && next->week == upcoming; ++next) {
      apply_action(sim, next->action);
    }
    sim.step();
  }
}

}  // namespace

bool ScenarioScript::has_activation_change() const {
  for (const auto& e : events) {
    if (std::holds_alternative<SetActivation>(e.action)) return true;
  }
  return false;
}

void ScenarioScript::validate(int horizon) const {
  int last = 0;
  for (const auto& e : events) {
    if (e.week <= last || e.week > horizon) {
      throw ParameterError("scenario event weeks must be strictly increasing within [1, horizon]");
    }
    last = e.week;
    if (const auto* set = std::get_if<SetActivation>(&e.action)) {
      if (!(set->p >= 0.0 && set->p <= 1.0)) {
        throw ParameterError("scenario activation rate must lie in [0, 1]");
      }
    }
  }
}

NetworkSwap apply_structural_change(const Graph& old_graph, const GenParams& new_params,
                                    Rng& rng) {
  if (new_params.n != old_graph.num_nodes()) {
    throw ParameterError("structural change must keep the node count");
  }
  auto net = std::make_shared<const Network>(make_network(new_params, rng));
  const auto delta = static_cast<std::int64_t>(net->graph.num_edges()) -
                     static_cast<std::int64_t>(old_graph.num_edges());
  return {std::move(net), delta};
}

void apply_action(Simulation& sim, const ScenarioAction& action) {
  std::visit(overloaded{
                 [&](const SetActivation& set) { sim.set_activation(set.p); },
                 [&](const StructuralChange& change) {
                   Rng rng(change.seed);
                   NetworkSwap swap =
                       apply_structural_change(sim.network().graph, change.params, rng);
                   sim.mutable_result().network_changes.push_back(
                       {sim.week() + 1, swap.edge_delta, graph_hash(swap.network->graph)});
                   sim.replace_network(std::move(swap.network));
                 },
             },
             action);
}

TrialResult run_scenario(std::shared_ptr<const Network> net, std::size_t w,
                         const EpidemicParams& params, const ScenarioScript& script,
                         std::uint64_t seed) {
  script.validate(params.horizon);
  Simulation sim(std::move(net), w, params, seed);
  play(sim, script);
  return sim.result();
}

BranchedRun run_branched(std::shared_ptr<const Network> net, std::size_t w,
                         const EpidemicParams& params, const ScenarioScript& script,
                         std::uint64_t seed) {
  script.validate(params.horizon);
  Simulation baseline(std::move(net), w, params, seed);
  if (script.empty()) {
    baseline.run();
    return {baseline.result(), baseline.result()};
  }
  baseline.run_through(script.events.front().week - 1);
  Simulation branch = baseline;
  branch.reseed(derive_seed(seed, "release"));
  play(branch, script);
  baseline.run();
  return {baseline.result(), branch.result()};
}

}  // namespace clusterwave
