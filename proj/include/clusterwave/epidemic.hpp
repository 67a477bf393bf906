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

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "clusterwave/graph.hpp"
#include "clusterwave/rng.hpp"

namespace clusterwave {

using CountSeries = Eigen::ArrayXi;
using RealSeries = Eigen::ArrayXd;

enum class InfectionRule {
  scaled,   // P(infection) = q_inf * catch
  literal,  // P(infection) = catch
};

struct EpidemicParams {
  double p = 1.0;                   // weekly activation rate of edges and groups
  double r = 0.7;                   // weekly fading factor
  double q_inf = 0.5;               // infection probability scale
  double q_spread = 0.2;            // probability an infection makes an infector
  int horizon = 100;                // weeks simulated after week 0
  double recovered_threshold = 0.1;  // reporting only; does not gate dynamics
  InfectionRule rule = InfectionRule::scaled;

  void validate() const;
};

enum class Status : std::uint8_t { susceptible, infected, recovered };

struct NodeState {
  double caught = 0.0;  // max infector value sensed in the infection week
  double infected = 0.0;
  double infector = 0.0;
  Status status = Status::susceptible;
  std::optional<int> week_infected;

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

enum class NodeEventKind : std::uint8_t { infected, became_infector, recovered };

struct NodeEvent {
  int week;
  NodeId node;
  NodeEventKind kind;
};

/// Record of a mid-run network replacement.
struct NetworkChange {
  int week;
  std::int64_t edge_delta;  // |E_new| - |E_old|
  std::uint64_t graph_hash;
};

struct TrialResult {
  CountSeries cases;         // new infections per week, week 0 holds the seeds
  CountSeries cumulative;    // total ever infected after each week
  RealSeries infectious_mass;  // sum of infector values after each week
  std::vector<NodeEvent> events;
  std::array<NodeId, 2> seed_nodes{};
  std::uint64_t rng_seed = 0;
  bool seed_fallback = false;  // seeding could not satisfy the cluster rule
  int weeks_without_active_edges = 0;  // p > 0 but round(p|E|) was 0
  std::vector<NetworkChange> network_changes;
};

struct Seeding {
  std::vector<NodeState> states;
  std::array<NodeId, 2> seeds{};
  bool fallback = false;
};

/// Infects two nodes at week 0: one uniformly among nodes of degree exactly w
/// (else among the max-degree nodes) and one uniformly among nodes outside
/// every initial clique (else any other node). Both are forced infectors.
Seeding seed_infection(const Graph& g, std::size_t w, Rng& rng);

/// Edges and groups active in one week, as indices into the network.
struct Contacts {
  std::vector<std::uint32_t> edges;
  std::vector<std::uint32_t> groups;
};

/// round(p * count) with ties rounded up, clamped to count.
std::size_t active_count(double p, std::size_t count);

/// Picks round(p|E|) edges and round(p * #groups) groups uniformly without
/// replacement.
Contacts sample_active_contacts(const Network& net, double p, Rng& rng);

/// Expands contacts into per-node sorted neighbor sets.
std::vector<std::vector<NodeId>> contact_neighbors(const Network& net,
                                                   const Contacts& contacts);

/// Advances every node by one week: catch, infect, fade, recover. Returns the
/// number of new infections. Appends to `events` when it is non-null.
int step_week(std::span<NodeState> states, const Network& net, const Contacts& contacts,
              const EpidemicParams& params, int week, Rng& rng,
              std::vector<NodeEvent>* events = nullptr);

/// A single trial as a copyable state machine. Copying a Simulation takes a
/// checkpoint; both copies then evolve independently.
class Simulation {
 public:
  Simulation(std::shared_ptr<const Network> net, std::size_t w, EpidemicParams params,
             std::uint64_t seed);

  int week() const { return week_; }
  bool finished() const { return week_ >= params_.horizon; }

  /// Simulates the next week.
  void step();
  /// Steps until `week` has been simulated (or the horizon is reached).
  void run_through(int week);
  void run() { run_through(params_.horizon); }

  void set_activation(double p);
  double activation() const { return params_.p; }
  /// Swaps the contact network; node states are untouched.
  void replace_network(std::shared_ptr<const Network> net);
  /// Continues on a fresh random stream.
  void reseed(std::uint64_t seed) { rng_ = Rng(seed); }

  const Network& network() const { return *net_; }
  std::shared_ptr<const Network> shared_network() const { return net_; }
  std::span<const NodeState> states() const { return states_; }
  const EpidemicParams& params() const { return params_; }
  const TrialResult& result() const { return result_; }
  TrialResult& mutable_result() { return result_; }

 private:
  std::shared_ptr<const Network> net_;
  EpidemicParams params_;
  Rng rng_;
  std::vector<NodeState> states_;
  TrialResult result_;
  int week_ = 0;
};

TrialResult run_trial(std::shared_ptr<const Network> net, std::size_t w,
                      const EpidemicParams& params, std::uint64_t seed);

}  // namespace clusterwave
