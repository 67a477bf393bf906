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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "clusterwave/analysis.hpp"
#include "clusterwave/epidemic.hpp"
#include "clusterwave/graph.hpp"

namespace clusterwave {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How the initial clique count is chosen for a cell.
struct KRule {
  enum class Mode { fixed, paper };
  Mode mode = Mode::fixed;
  std::size_t k = 1;  // used when mode == fixed

  static KRule fixed(std::size_t k) { return {Mode::fixed, k}; }
  static KRule paper() { return {Mode::paper, 0}; }

  std::size_t resolve(std::size_t n, std::size_t w) const;
  /// "1", "5", or "paper".
  std::string label() const;

  friend bool operator==(const KRule&, const KRule&) = default;
};

/// A scheduled intervention as written in a config. Structural changes are
/// resolved per cell: same n, w, m0 and kind, clique count from `k_rule`.
struct ConfigEvent {
  enum class Kind { set_activation, structural_change };
  int week = 20;
  Kind kind = Kind::set_activation;
  double p = 1.0;
  KRule k_rule = KRule::fixed(1);
};

struct SweepConfig {
  std::string name = "custom";
  std::vector<GraphKind> kinds{GraphKind::sfn_ssc};
  std::vector<KRule> k_rules{KRule::fixed(1)};
  std::vector<std::size_t> n_values{1000};
  std::vector<std::size_t> w_values{8};
  std::vector<std::size_t> m0_values{2};
  std::vector<double> p_values{1.0};
  int trials = 10;
  std::uint64_t base_seed = 20200703;
  EpidemicParams epidemic;  // p is overridden per cell
  PeakParams peaks{5, 1.0, 1};
  std::vector<ConfigEvent> events;
  std::string output_dir = "results";

  bool has_activation_change() const;
  /// Week of the first activation change; throws ConfigError if none.
  int release_week() const;
  void validate() const;
};

SweepConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const SweepConfig& config);
SweepConfig load_config(const std::filesystem::path& path);

/// Content hash of the canonical JSON form.
std::uint64_t config_hash(const SweepConfig& config);

/// Named experiment grids: table1..table4, fig7, release, structural_change,
/// each also as a *_small variant restricted to n = 1000.
SweepConfig preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace clusterwave
