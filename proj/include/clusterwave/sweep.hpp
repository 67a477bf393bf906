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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "clusterwave/config.hpp"
#include "clusterwave/io.hpp"
#include "clusterwave/scenario.hpp"

namespace clusterwave {

/// One point of the parameter grid.
struct CellKey {
  GraphKind kind = GraphKind::sfn_ssc;
  KRule k_rule;
  std::size_t n = 0;
  std::size_t w = 0;
  std::size_t m0 = 0;
  double p = 1.0;

  /// e.g. "ssc_Kpaper_N1000_W8_m2_p1"
  std::string id() const;
  GenParams gen_params() const;
};

struct RunDescriptor {
  CellKey cell;
  std::size_t cell_index = 0;
  int trial = 0;
  std::uint64_t seed = 0;

  std::string run_id() const;  // "<cell id>/t<trial>"
};

/// Derived seed for (cell, trial); the same for a cell wherever it appears.
std::uint64_t cell_seed(std::uint64_t base_seed, const CellKey& cell, int trial);

/// Cartesian product kinds x k_rules x n x w x m0 x p x trial. Throws
/// ConfigError on an empty product or a seed collision.
std::vector<RunDescriptor> expand_sweep(const SweepConfig& config);

/// The config's events resolved for one run.
ScenarioScript resolve_script(const SweepConfig& config, const RunDescriptor& run);

/// Contact network and epidemic parameters for one run.
struct RunSetup {
  GenParams gen;
  std::shared_ptr<const Network> network;
  EpidemicParams epidemic;
  std::uint64_t epidemic_seed = 0;
};
RunSetup prepare_run(const SweepConfig& config, const RunDescriptor& run);

struct RunOutput {
  std::string status = "ok";
  std::uint64_t graph_hash = 0;
  std::size_t edges = 0;
  std::size_t groups = 0;
  TrialSeries baseline;
  std::optional<TrialSeries> scenario;
  nlohmann::json meta;
};

/// Generates the network and simulates one descriptor. With scenario events
/// the scripted run branches from the baseline at the first event week.
RunOutput execute_run(const SweepConfig& config, const RunDescriptor& run);

/// All trials of one cell, as stored on disk.
struct CellData {
  CellKey key;
  std::size_t k = 0;
  std::vector<TrialSeries> baseline;
  std::vector<TrialSeries> scenario;
};

/// peaks.csv, waves.csv, summary.csv, per-block summary tables and, when the
/// config changes the activation rate, release.csv and release_summary.csv.
void write_analysis(const std::filesystem::path& dir, const SweepConfig& config,
                    const std::vector<CellData>& cells);

struct SweepReport {
  std::size_t runs = 0;
  std::size_t failed = 0;
  std::size_t cells = 0;
};

/// Executes every descriptor on a bounded worker pool, then writes the result
/// tree: series/<cell>.csv (+ .scenario.csv, .json), manifest.json and the
/// analysis files.
SweepReport run_sweep(const SweepConfig& config, const std::filesystem::path& out_dir,
                      unsigned threads);

/// Recomputes the analysis files of an existing result tree.
void analyze_tree(const std::filesystem::path& dir);

/// CLUSTERWAVE_THREADS if set and positive, else hardware concurrency.
unsigned worker_count_from_env();

std::string_view code_version();

}  // namespace clusterwave
