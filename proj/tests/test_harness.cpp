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

#include <gtest/gtest.h>

#include <filesystem>
#include <set>
#include <sstream>

#include "clusterwave/config.hpp"
#include "clusterwave/io.hpp"
#include "clusterwave/sweep.hpp"
#include "support.hpp"

namespace cw = clusterwave;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

cw::SweepConfig tiny_config() {
  cw::SweepConfig c;
  c.name = "tiny";
  c.kinds = {cw::GraphKind::sfn_sc, cw::GraphKind::sfn_ssc};
  c.k_rules = {cw::KRule::fixed(1), cw::KRule::paper()};
  c.n_values = {300};
  c.w_values = {8, 4};
  c.m0_values = {1, 2};
  c.trials = 2;
  c.epidemic.horizon = 40;
  return c;
}

std::map<std::string, std::string> tree_contents(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      out[fs::relative(entry.path(), dir).string()] = cw::read_file(entry.path());
    }
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Expand, SingleCell) {
  cw::SweepConfig c;
  c.trials = 1;
  EXPECT_EQ(cw::expand_sweep(c).size(), 1u);
}

TEST(Expand, FineGridHas480Cells) {
  cw::SweepConfig c = cw::preset("fig7");
  EXPECT_EQ(c.w_values.size(), 20u);
  EXPECT_EQ(c.m0_values.size(), 3u);
  c.trials = 1;
  EXPECT_EQ(cw::expand_sweep(c).size(), 480u);
}

TEST(Expand, ReleaseGridHas200Descriptors) {
  const cw::SweepConfig c = cw::preset("release");
  EXPECT_EQ(cw::expand_sweep(c).size(), 200u);
  EXPECT_EQ(c.w_values, (std::vector<std::size_t>{32, 20, 16, 10, 8, 4, 2, 1}));
  EXPECT_EQ(c.m0_values, (std::vector<std::size_t>{16, 8, 4, 2, 1}));
}

TEST(Expand, SeedsAreDistinctAndOrderIndependent) {
  const cw::SweepConfig c = cw::preset("table1");
  const auto runs = cw::expand_sweep(c);
  std::set<std::uint64_t> seeds;
  for (const auto& r : runs) seeds.insert(r.seed);
  EXPECT_EQ(seeds.size(), runs.size());

  // The same cell in a reordered, smaller grid keeps its seed.
  cw::SweepConfig sub = c;
  sub.w_values = {2, 32};
  sub.kinds = {cw::GraphKind::sfn_ssc};
  for (const auto& r : cw::expand_sweep(sub)) {
    EXPECT_EQ(r.seed, cw::cell_seed(c.base_seed, r.cell, r.trial));
    EXPECT_TRUE(seeds.count(r.seed));
  }
}

TEST(Expand, EmptyAxisIsAnError) {
  cw::SweepConfig c;
  c.w_values.clear();
  EXPECT_THROW(cw::expand_sweep(c), cw::ConfigError);
  c = {};
  c.trials = 0;
  EXPECT_THROW(cw::expand_sweep(c), cw::ConfigError);
}

TEST(Config, JsonRoundTrip) {
  for (const std::string& name : cw::preset_names()) {
    const cw::SweepConfig c = cw::preset(name);
    const json doc = cw::config_to_json(c);
    const cw::SweepConfig back = cw::config_from_json(doc);
    EXPECT_EQ(cw::config_to_json(back), doc) << name;
    EXPECT_EQ(cw::config_hash(back), cw::config_hash(c)) << name;
  }
}

TEST(Config, StrictKeysAndValues) {
  json doc = cw::config_to_json(cw::SweepConfig{});
  doc["trails"] = 3;
  EXPECT_THROW(cw::config_from_json(doc), cw::ConfigError);

  doc = cw::config_to_json(cw::SweepConfig{});
  doc["kinds"] = json::array({"ba"});
  EXPECT_THROW(cw::config_from_json(doc), std::exception);

  doc = cw::config_to_json(cw::SweepConfig{});
  doc["p"] = json::array({1.5});
  EXPECT_THROW(cw::config_from_json(doc), cw::ConfigError);

  doc = cw::config_to_json(cw::SweepConfig{});
  doc["events"] = json::array({{{"week", 20}, {"kind", "lockdown"}}});
  EXPECT_THROW(cw::config_from_json(doc), cw::ConfigError);
}

TEST(Config, LoadFromFile) {
  const fs::path dir = cwtest::scratch_dir("config");
  const fs::path file = dir / "c.json";
  cw::write_file(file, R"({
    // comments are allowed
    "name": "from_file",
    "kinds": ["sc"],
    "k_rules": ["paper", 2],
    "n": [1000], "w": [16, 8], "m0": [2], "p": [0.5],
    "trials": 3, "base_seed": 11, "horizon": 50,
    "events": [{"week": 20, "kind": "set_activation", "p": 1.0}]
  })");
  const cw::SweepConfig c = cw::load_config(file);
  EXPECT_EQ(c.name, "from_file");
  EXPECT_EQ(c.k_rules, (std::vector<cw::KRule>{cw::KRule::paper(), cw::KRule::fixed(2)}));
  EXPECT_EQ(c.epidemic.horizon, 50);
  EXPECT_TRUE(c.has_activation_change());
  EXPECT_EQ(c.release_week(), 20);
  EXPECT_EQ(cw::expand_sweep(c).size(), 2u * 2u * 3u);
}

TEST(Config, PresetsValidate) {
  for (const std::string& name : cw::preset_names()) {
    EXPECT_NO_THROW(cw::preset(name).validate()) << name;
  }
  EXPECT_THROW(cw::preset("table9"), cw::ConfigError);
  const cw::SweepConfig small = cw::preset("table1_small");
  EXPECT_EQ(small.n_values, (std::vector<std::size_t>{1000}));
}

TEST(Sweep, TableLayout) {
  cw::SweepConfig c = cw::preset("table1_small");
  c.trials = 1;
  c.epidemic.horizon = 30;
  const fs::path dir = cwtest::scratch_dir("layout");
  const cw::SweepReport report = cw::run_sweep(c, dir, 2);
  EXPECT_EQ(report.failed, 0u);
  EXPECT_EQ(report.cells, 2u * 2u * 9u * 5u);

  std::size_t tables = 0;
  for (const auto& entry : fs::directory_iterator(dir / "tables")) {
    ++tables;
    const auto rows = lines_of(cw::read_file(entry.path()));
    ASSERT_EQ(rows.size(), 10u) << entry.path();
    EXPECT_EQ(rows[0], "W\\m0,1,2,4,8,16");
    const std::size_t expected_w[] = {32, 20, 16, 10, 8, 6, 4, 2, 1};
    for (std::size_t r = 0; r < 9; ++r) {
      EXPECT_EQ(rows[r + 1].substr(0, rows[r + 1].find(',')), std::to_string(expected_w[r]));
    }
  }
  // (kind x K rule) blocks, peak and timing, baseline only.
  EXPECT_EQ(tables, 2u * 2u * 2u);
  EXPECT_FALSE(fs::exists(dir / "release.csv"));

  const json manifest = json::parse(cw::read_file(dir / "manifest.json"));
  EXPECT_EQ(manifest["run_count"], 180);
  EXPECT_EQ(manifest["runs"].size(), 180u);
  for (const auto& run : manifest["runs"]) EXPECT_EQ(run["status"], "ok");
}

TEST(Sweep, RerunAndThreadCountAreByteIdentical) {
  const cw::SweepConfig c = tiny_config();
  const fs::path a = cwtest::scratch_dir("rerun_a");
  const fs::path b = cwtest::scratch_dir("rerun_b");
  cw::run_sweep(c, a, 1);
  cw::run_sweep(c, b, 3);
  const auto ta = tree_contents(a);
  EXPECT_EQ(ta, tree_contents(b));
  EXPECT_TRUE(ta.count("summary.csv"));
  EXPECT_TRUE(ta.count("peaks.csv"));
  EXPECT_TRUE(ta.count("waves.csv"));
}

TEST(Sweep, AnalyzeRecomputesTheSameFiles) {
  const cw::SweepConfig c = tiny_config();
  const fs::path dir = cwtest::scratch_dir("analyze");
  cw::run_sweep(c, dir, 2);
  const auto before = tree_contents(dir);
  fs::remove(dir / "summary.csv");
  fs::remove(dir / "peaks.csv");
  fs::remove_all(dir / "tables");
  cw::analyze_tree(dir);
  EXPECT_EQ(tree_contents(dir), before);
}

TEST(Sweep, SeriesCsvRoundTrip) {
  const cw::SweepConfig c = tiny_config();
  const fs::path dir = cwtest::scratch_dir("series");
  cw::run_sweep(c, dir, 1);
  for (const auto& entry : fs::directory_iterator(dir / "series")) {
    if (entry.path().extension() != ".csv") continue;
    const std::string text = cw::read_file(entry.path());
    std::istringstream in(text);
    const auto trials = cw::read_series_csv(in);
    std::ostringstream out;
    cw::write_series_csv(out, trials);
    EXPECT_EQ(out.str(), text);
    EXPECT_EQ(lines_of(text).front(), std::string(cw::kSeriesHeader));
    EXPECT_EQ(text.find('\r'), std::string::npos);
  }
}

TEST(Sweep, ReleaseRowsMatchEligibleTrials) {
  cw::SweepConfig c = tiny_config();
  c.p_values = {0.2};
  c.events = {cw::ConfigEvent{20, cw::ConfigEvent::Kind::set_activation, 1.0, {}}};
  c.epidemic.horizon = 60;
  const fs::path dir = cwtest::scratch_dir("release");
  cw::run_sweep(c, dir, 2);
  const auto rows = lines_of(cw::read_file(dir / "release.csv"));
  const auto summary = lines_of(cw::read_file(dir / "release_summary.csv"));
  ASSERT_EQ(summary.size(), 2u);
  std::istringstream fields(summary[1]);
  std::string total, eligible;
  std::getline(fields, total, ',');
  std::getline(fields, eligible, ',');
  EXPECT_EQ(std::stoul(total), cw::expand_sweep(c).size());
  EXPECT_EQ(rows.size() - 1, std::stoul(eligible));

  // Independent recount of the eligibility filter from the stored series.
  std::size_t recount = 0;
  for (const auto& entry : fs::directory_iterator(dir / "series")) {
    const std::string name = entry.path().filename().string();
    if (name.size() < 4 || name.substr(name.size() - 4) != ".csv" ||
        name.find(".scenario") != std::string::npos) {
      continue;
    }
    std::istringstream in(cw::read_file(entry.path()));
    for (const auto& t : cw::read_series_csv(in)) {
      int best = 0;
      int arg = 0;
      // The seed week is not a peak.
      for (int w = 1; w < t.cases.size(); ++w) {
        if (t.cases(w) > best) {
          best = t.cases(w);
          arg = w;
        }
      }
      recount += best > 0 && arg < 20;
    }
  }
  EXPECT_EQ(recount, std::stoul(eligible));
}

TEST(Sweep, WriteFailureIsRecordedPerRun) {
  cw::SweepConfig c = tiny_config();
  c.kinds = {cw::GraphKind::sfn_ssc};
  c.k_rules = {cw::KRule::fixed(1)};
  const fs::path dir = cwtest::scratch_dir("ioerror");
  const auto runs = cw::expand_sweep(c);
  // Occupy one cell's series path with a directory so the write fails.
  const std::string blocked = runs.front().cell.id();
  fs::create_directories(dir / "series" / (blocked + ".csv"));
  const cw::SweepReport report = cw::run_sweep(c, dir, 1);
  EXPECT_EQ(report.failed, static_cast<std::size_t>(c.trials));
  const json manifest = json::parse(cw::read_file(dir / "manifest.json"));
  for (const auto& run : manifest["runs"]) {
    const bool in_blocked = run["cell"] == blocked;
    EXPECT_EQ(run["status"].get<std::string>().rfind("io_error", 0) == 0, in_blocked);
  }
  EXPECT_EQ(manifest["failed"], c.trials);
}

TEST(Sweep, StructuralChangeWritesScenarioSeries) {
  cw::SweepConfig c = tiny_config();
  c.kinds = {cw::GraphKind::sfn_ssc};
  c.k_rules = {cw::KRule::paper()};
  c.events = {cw::ConfigEvent{20, cw::ConfigEvent::Kind::structural_change, 1.0,
                              cw::KRule::fixed(1)}};
  const fs::path dir = cwtest::scratch_dir("structural");
  cw::run_sweep(c, dir, 2);
  const auto runs = cw::expand_sweep(c);
  const fs::path stem = dir / "series" / runs.front().cell.id();
  EXPECT_TRUE(fs::exists(fs::path(stem).concat(".scenario.csv")));
  const json sidecar = json::parse(cw::read_file(fs::path(stem).concat(".json")));
  EXPECT_EQ(sidecar["k_rounding"], "half-up");
  EXPECT_EQ(sidecar["trials"][0]["baseline"]["network_changes"].size(), 0u);
  EXPECT_EQ(sidecar["trials"][0]["scenario"]["network_changes"].size(), 1u);
  const std::string summary = cw::read_file(dir / "summary.csv");
  EXPECT_NE(summary.find(",scenario,"), std::string::npos);
}
