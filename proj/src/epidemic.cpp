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

#include "clusterwave/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace clusterwave {
namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

template <typename T>
T pick_uniform(const std::vector<T>& pool, Rng& rng) {
  return pool[rng.below(pool.size())];
}

// Partial Fisher-Yates over 0..count-1; the first `take` slots are a uniform
// sample without replacement.
std::vector<std::uint32_t> sample_indices(std::size_t count, std::size_t take, Rng& rng) {
  std::vector<std::uint32_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0u);
  if (take >= count) return idx;
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + rng.below(count - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(take);
  return idx;
}

}  // namespace

void EpidemicParams::validate() const {
  if (!is_probability(p) || !is_probability(r) || !is_probability(q_inf) ||
      !is_probability(q_spread) || !is_probability(recovered_threshold)) {
    throw ParameterError("epidemic probabilities must lie in [0, 1]");
  }
  if (horizon < 1) throw ParameterError("horizon must be at least one week");
}

Seeding seed_infection(const Graph& g, std::size_t w, Rng& rng) {
  const std::size_t n = g.num_nodes();
  if (n < 2) throw ParameterError("seeding needs at least two nodes");

  Seeding seeding;
  seeding.states.assign(n, NodeState{});

  std::vector<NodeId> pool;
  for (NodeId v = 0; v < n; ++v) {
    if (g.degree(v) == w) pool.push_back(v);
  }
  if (pool.empty()) {
    seeding.fallback = true;
    const std::size_t best = g.max_degree();
    for (NodeId v = 0; v < n; ++v) {
      if (g.degree(v) == best) pool.push_back(v);
    }
  }
  const NodeId first = pick_uniform(pool, rng);

  pool.clear();
  for (NodeId v = 0; v < n; ++v) {
    if (v != first && !g.clique_of(v)) pool.push_back(v);
  }
  if (pool.empty()) {
    seeding.fallback = true;
    for (NodeId v = 0; v < n; ++v) {
      if (v != first) pool.push_back(v);
    }
  }
  const NodeId second = pick_uniform(pool, rng);

  seeding.seeds = {first, second};
  for (NodeId s : seeding.seeds) {
    NodeState& st = seeding.states[s];
    st.infected = 1.0;
    st.infector = 1.0;
    st.status = Status::infected;
    st.week_infected = 0;
  }
  return seeding;
}

std::size_t active_count(double p, std::size_t count) {
  const auto rounded = static_cast<std::size_t>(std::floor(p * static_cast<double>(count) + 0.5));
  return std::min(rounded, count);
}

Contacts sample_active_contacts(const Network& net, double p, Rng& rng) {
  Contacts contacts;
  const std::size_t n_edges = net.graph.num_edges();
  const std::size_t n_groups = net.groups.size();
  contacts.edges = sample_indices(n_edges, active_count(p, n_edges), rng);
  contacts.groups = sample_indices(n_groups, active_count(p, n_groups), rng);
  return contacts;
}

std::vector<std::vector<NodeId>> contact_neighbors(const Network& net,
                                                   const Contacts& contacts) {
  std::vector<std::vector<NodeId>> out(net.graph.num_nodes());
  const auto edges = net.graph.edges();
  for (std::uint32_t e : contacts.edges) {
    out[edges[e].u].push_back(edges[e].v);
    out[edges[e].v].push_back(edges[e].u);
  }
  for (std::uint32_t gi : contacts.groups) {
    const auto& members = net.groups[gi].members;
    for (NodeId a : members) {
      for (NodeId b : members) {
        if (a != b) out[a].push_back(b);
      }
    }
  }
  for (auto& list : out) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return out;
}

int step_week(std::span<NodeState> states, const Network& net, const Contacts& contacts,
              const EpidemicParams& params, int week, Rng& rng,
              std::vector<NodeEvent>* events) {
  const std::size_t n = states.size();

  // 1. catch: max infector over this week's contacting neighbors.
  std::vector<double> caught(n, 0.0);
  const auto edges = net.graph.edges();
  for (std::uint32_t e : contacts.edges) {
    const Edge& edge = edges[e];
    caught[edge.u] = std::max(caught[edge.u], states[edge.v].infector);
    caught[edge.v] = std::max(caught[edge.v], states[edge.u].infector);
  }
  for (std::uint32_t gi : contacts.groups) {
    const auto& members = net.groups[gi].members;
    double top = 0.0;
    double second = 0.0;
    NodeId top_node = members.front();
    for (NodeId m : members) {
      const double x = states[m].infector;
      if (x > top) {
        second = top;
        top = x;
        top_node = m;
      } else if (x > second) {
        second = x;
      }
    }
    for (NodeId m : members) {
      caught[m] = std::max(caught[m], m == top_node ? second : top);
    }
  }

  // 2. infection, with the infector role decided once.
  int new_cases = 0;
  for (NodeId i = 0; i < n; ++i) {
    NodeState& st = states[i];
    if (st.status != Status::susceptible) continue;
    st.caught = caught[i];
    if (caught[i] <= 0.0) continue;
    const double threshold =
        params.rule == InfectionRule::scaled ? params.q_inf * caught[i] : caught[i];
    if (!(rng.uniform() < threshold)) continue;
    st.status = Status::infected;
    st.infected = caught[i];
    st.week_infected = week;
    st.infector = rng.bernoulli(params.q_spread) ? 1.0 : 0.0;
    ++new_cases;
    if (events) {
      events->push_back({week, i, NodeEventKind::infected});
      if (st.infector > 0.0) events->push_back({week, i, NodeEventKind::became_infector});
    }
  }

  // 3. fading of earlier infections, 4. reporting status.
  for (NodeId i = 0; i < n; ++i) {
    NodeState& st = states[i];
    if (!st.week_infected || *st.week_infected >= week) continue;
    st.infected *= params.r;
    st.infector *= params.r;
  }
  for (NodeId i = 0; i < n; ++i) {
    NodeState& st = states[i];
    if (st.status == Status::infected && st.infected < params.recovered_threshold) {
      st.status = Status::recovered;
      if (events) events->push_back({week, i, NodeEventKind::recovered});
    }
  }
  return new_cases;
}

Simulation::Simulation(std::shared_ptr<const Network> net, std::size_t w,
                       EpidemicParams params, std::uint64_t seed)
    : net_(std::move(net)), params_(params), rng_(seed) {
  params_.validate();
  Seeding seeding = seed_infection(net_->graph, w, rng_);
  states_ = std::move(seeding.states);

  const int len = params_.horizon + 1;
  result_.cases = CountSeries::Zero(len);
  result_.cumulative = CountSeries::Zero(len);
  result_.infectious_mass = RealSeries::Zero(len);
  result_.seed_nodes = seeding.seeds;
  result_.seed_fallback = seeding.fallback;
  result_.rng_seed = seed;
  for (NodeId s : seeding.seeds) result_.events.push_back({0, s, NodeEventKind::infected});
  for (NodeId s : seeding.seeds) {
    result_.events.push_back({0, s, NodeEventKind::became_infector});
  }
  result_.cases(0) = 2;
  result_.cumulative(0) = 2;
  result_.infectious_mass(0) = 2.0;
}

void Simulation::step() {
  if (finished()) throw std::logic_error("simulation already reached its horizon");
  ++week_;
  const Contacts contacts = sample_active_contacts(*net_, params_.p, rng_);
  if (contacts.edges.empty() && params_.p > 0.0 && net_->graph.num_edges() > 0) {
    ++result_.weeks_without_active_edges;
  }
  const int new_cases =
      step_week(states_, *net_, contacts, params_, week_, rng_, &result_.events);
  double mass = 0.0;
  for (const NodeState& st : states_) mass += st.infector;
  result_.cases(week_) = new_cases;
  result_.cumulative(week_) = result_.cumulative(week_ - 1) + new_cases;
  result_.infectious_mass(week_) = mass;
}

void Simulation::run_through(int week) {
  while (week_ < week && !finished()) step();
}

void Simulation::set_activation(double p) {
  if (!is_probability(p)) throw ParameterError("activation rate must lie in [0, 1]");
  params_.p = p;
}

void Simulation::replace_network(std::shared_ptr<const Network> net) {
  if (net->graph.num_nodes() != states_.size()) {
    throw ParameterError("replacement network must keep the node count");
  }
  net_ = std::move(net);
}

TrialResult run_trial(std::shared_ptr<const Network> net, std::size_t w,
                      const EpidemicParams& params, std::uint64_t seed) {
  Simulation sim(std::move(net), w, params, seed);
  sim.run();
  return sim.result();
}

}  // namespace clusterwave
