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

#include "clusterwave/sweep.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "clusterwave/netgen.hpp"

#ifndef CLUSTERWAVE_VERSION
#define CLUSTERWAVE_VERSION "dev"
#endif

namespace clusterwave {

using nlohmann::json;
namespace fs = std::filesystem;

std::string_view code_version() { return CLUSTERWAVE_VERSION; }

std::string CellKey::id() const {
  return std::string(to_string(kind)) + "_K" + k_rule.label() + "_N" + std::to_string(n) +
         "_W" + std::to_string(w) + "_m" + std::to_string(m0) + "_p" + format_number(p);
}

GenParams CellKey::gen_params() const {
  return GenParams{n, w, m0, k_rule.resolve(n, w), kind};
}

std::string RunDescriptor::run_id() const {
  return cell.id() + "/t" + std::to_string(trial);
}

std::uint64_t cell_seed(std::uint64_t base_seed, const CellKey& cell, int trial) {
  std::uint64_t s = derive_seed(base_seed, to_string(cell.kind));
  s = derive_seed(s, cell.k_rule.label());
  s = derive_seed(s, static_cast<std::uint64_t>(cell.n));
  s = derive_seed(s, static_cast<std::uint64_t>(cell.w));
  s = derive_seed(s, static_cast<std::uint64_t>(cell.m0));
  s = derive_seed(s, std::bit_cast<std::uint64_t>(cell.p));
  return derive_seed(s, static_cast<std::uint64_t>(trial));
}

std::vector<RunDescriptor> expand_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<RunDescriptor> runs;
  std::unordered_set<std::uint64_t> seeds;
  std::size_t cell_index = 0;
  for (GraphKind kind : config.kinds) {
    for (const KRule& rule : config.k_rules) {
      for (std::size_t n : config.n_values) {
        for (std::size_t w : config.w_values) {
          for (std::size_t m0 : config.m0_values) {
            for (double p : config.p_values) {
              const CellKey cell{kind, rule, n, w, m0, p};
              for (int trial = 0; trial < config.trials; ++trial) {
                const std::uint64_t seed = cell_seed(config.base_seed, cell, trial);
                if (!seeds.insert(seed).second) {
                  throw ConfigError("seed collision at " + cell.id() + "/t" +
                                    std::to_string(trial));
                }
                runs.push_back({cell, cell_index, trial, seed});
              }
              ++cell_index;
            }
          }
        }
      }
    }
  }
  if (runs.empty()) throw ConfigError("sweep expands to no runs");
  return runs;
}

ScenarioScript resolve_script(const SweepConfig& config, const RunDescriptor& run) {
  ScenarioScript script;
  for (const ConfigEvent& e : config.events) {
    if (e.kind == ConfigEvent::Kind::set_activation) {
      script.events.push_back({e.week, SetActivation{e.p}});
    } else {
      GenParams params = run.cell.gen_params();
      params.k = e.k_rule.resolve(params.n, params.w);
      script.events.push_back(
          {e.week, StructuralChange{params, derive_seed(run.seed, "structure")}});
    }
  }
  return script;
}

RunSetup prepare_run(const SweepConfig& config, const RunDescriptor& run) {
  RunSetup setup;
  setup.gen = run.cell.gen_params();
  Rng graph_rng(derive_seed(run.seed, "graph"));
  setup.network = std::make_shared<const Network>(make_network(setup.gen, graph_rng));
  setup.epidemic = config.epidemic;
  setup.epidemic.p = run.cell.p;
  setup.epidemic_seed = derive_seed(run.seed, "epidemic");
  return setup;
}

RunOutput execute_run(const SweepConfig& config, const RunDescriptor& run) {
  RunOutput out;
  const RunSetup setup = prepare_run(config, run);
  out.graph_hash = graph_hash(setup.network->graph);
  out.edges = setup.network->graph.num_edges();
  out.groups = setup.network->groups.size();

  const ScenarioScript script = resolve_script(config, run);
  if (script.empty()) {
    const TrialResult result =
        run_trial(setup.network, setup.gen.w, setup.epidemic, setup.epidemic_seed);
    out.baseline = series_of(result, run.trial);
    out.meta["baseline"] = trial_metadata(result);
  } else {
    const BranchedRun branched =
        run_branched(setup.network, setup.gen.w, setup.epidemic, script, setup.epidemic_seed);
    out.baseline = series_of(branched.baseline, run.trial);
    out.scenario = series_of(branched.scenario, run.trial);
    out.meta["baseline"] = trial_metadata(branched.baseline);
    out.meta["scenario"] = trial_metadata(branched.scenario);
  }
  return out;
}

namespace {

std::string bool_text(bool b) { return b ? "1" : "0"; }

std::string opt_text(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

struct VariantView {
  std::string name;
  const std::vector<TrialSeries>* trials;
};

std::vector<VariantView> variants_of(const CellData& cell) {
  std::vector<VariantView> out{{"baseline", &cell.baseline}};
  if (!cell.scenario.empty()) out.push_back({"scenario", &cell.scenario});
  return out;
}

std::string run_base(const CellData& cell, const std::string& variant) {
  return variant == "baseline" ? cell.key.id() : cell.key.id() + ".scenario";
}

void write_peak_rows(std::ostream& out, const std::string& run_id,
                     const std::vector<Peak>& peaks) {
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    out << run_id << ',' << i << ',' << peaks[i].week << ',' << format_number(peaks[i].height)
        << '\n';
  }
}

void write_wave_row(std::ostream& out, const std::string& run_id, const WaveReport& w) {
  out << run_id << ',' << w.peaks.size() << ',' << bool_text(w.second_peak_exists) << ','
      << bool_text(w.second_higher_than_first) << ',' << opt_text(w.trough_ratio_before_second)
      << '\n';
}

std::vector<CountSeries> cases_of(const std::vector<TrialSeries>& trials) {
  std::vector<CountSeries> cases;
  cases.reserve(trials.size());
  for (const TrialSeries& t : trials) cases.push_back(t.cases);
  return cases;
}

struct CellStats {
  double peak = 0.0;
  double timing = 0.0;
};

// Table block: (variant, kind, k rule, n, p).
using BlockKey = std::tuple<std::string, std::string, std::string, std::size_t, double>;

}  // namespace

void write_analysis(const fs::path& dir, const SweepConfig& config,
                    const std::vector<CellData>& cells) {
  std::ostringstream peaks_csv;
  std::ostringstream waves_csv;
  std::ostringstream summary_csv;
  peaks_csv << "run_id,peak_index,week,height\n";
  waves_csv << "run_id,n_peaks,second_peak_exists,second_higher_than_first,"
               "trough_ratio_before_second\n";
  summary_csv << "cell,variant,kind,k_rule,k,n,w,m0,p,trials,peak,trial_mean_peak,timing,"
                 "second_peak,second_higher,trial_second_peak_fraction,"
                 "trial_second_higher_fraction\n";

  std::map<BlockKey, std::map<std::pair<std::size_t, std::size_t>, CellStats>> blocks;

  for (const CellData& cell : cells) {
    for (const VariantView& variant : variants_of(cell)) {
      if (variant.trials->empty()) continue;
      const std::vector<CountSeries> cases = cases_of(*variant.trials);
      const TrialAggregate agg = aggregate_trials(std::span<const CountSeries>(cases), config.peaks);
      const std::string base = run_base(cell, variant.name);

      write_peak_rows(peaks_csv, base + "/mean", agg.mean_waves.peaks);
      write_wave_row(waves_csv, base + "/mean", agg.mean_waves);
      double trial_peak_sum = 0.0;
      std::size_t second = 0;
      std::size_t higher = 0;
      for (std::size_t i = 0; i < agg.trials.size(); ++i) {
        const std::string id = base + "/t" + std::to_string((*variant.trials)[i].trial);
        write_peak_rows(peaks_csv, id, agg.trials[i].waves.peaks);
        write_wave_row(waves_csv, id, agg.trials[i].waves);
        trial_peak_sum += agg.trials[i].peak;
        second += agg.trials[i].waves.second_peak_exists;
        higher += agg.trials[i].waves.second_higher_than_first;
      }
      const double count = static_cast<double>(agg.trials.size());
      summary_csv << cell.key.id() << ',' << variant.name << ',' << to_string(cell.key.kind)
                  << ',' << cell.key.k_rule.label() << ',' << cell.k << ',' << cell.key.n << ','
                  << cell.key.w << ',' << cell.key.m0 << ',' << format_number(cell.key.p) << ','
                  << agg.trials.size() << ',' << format_number(agg.mean_peak) << ','
                  << format_number(trial_peak_sum / count) << ','
                  << format_number(agg.mean_timing) << ','
                  << bool_text(agg.mean_waves.second_peak_exists) << ','
                  << bool_text(agg.mean_waves.second_higher_than_first) << ','
                  << format_number(static_cast<double>(second) / count) << ','
                  << format_number(static_cast<double>(higher) / count) << '\n';

      const BlockKey block{variant.name, std::string(to_string(cell.key.kind)),
                           cell.key.k_rule.label(), cell.key.n, cell.key.p};
      blocks[block][{cell.key.w, cell.key.m0}] = {agg.mean_peak, agg.mean_timing};
    }
  }

  write_file(dir / "peaks.csv", peaks_csv.str());
  write_file(dir / "waves.csv", waves_csv.str());
  write_file(dir / "summary.csv", summary_csv.str());

  fs::create_directories(dir / "tables");
  for (const auto& [block, values] : blocks) {
    std::set<std::size_t, std::greater<>> ws;
    std::set<std::size_t> m0s;
    for (const auto& [wm, _] : values) {
      ws.insert(wm.first);
      m0s.insert(wm.second);
    }
    const auto& [variant, kind, rule, n, p] = block;
    for (const char* stat : {"peak", "timing"}) {
      std::ostringstream t;
      t << "W\\m0";
      for (std::size_t m0 : m0s) t << ',' << m0;
      t << '\n';
      for (std::size_t w : ws) {
        t << w;
        for (std::size_t m0 : m0s) {
          t << ',';
          auto it = values.find({w, m0});
          if (it == values.end()) continue;
          t << format_number(std::string_view(stat) == "peak" ? it->second.peak
                                                              : it->second.timing);
        }
        t << '\n';
      }
      const std::string name = std::string("summary_") + stat + "_" + variant + "_" + kind +
                               "_K" + rule + "_N" + std::to_string(n) + "_p" +
                               format_number(p) + ".csv";
      write_file(dir / "tables" / name, t.str());
    }
  }

  if (!config.has_activation_change()) return;
  const int release_week = config.release_week();
  std::ostringstream release_csv;
  release_csv << "run_id,x,y\n";
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t total = 0;
  for (const CellData& cell : cells) {
    for (std::size_t i = 0; i < cell.baseline.size() && i < cell.scenario.size(); ++i) {
      ++total;
      const CountSeries& base = cell.baseline[i].cases;
      if (!release_eligible(base, release_week, config.peaks.first_week)) continue;
      const ReleaseMetrics m = release_metrics(base, cell.scenario[i].cases, release_week);
      release_csv << cell.key.id() << "/t" << cell.baseline[i].trial << ','
                  << format_number(m.x) << ',' << format_number(m.y) << '\n';
      xs.push_back(m.x);
      ys.push_back(m.y);
    }
  }
  write_file(dir / "release.csv", release_csv.str());
  std::string corr = "undefined";
  try {
    corr = format_number(pearson(xs, ys));
  } catch (const UndefinedMetric&) {
  }
  write_file(dir / "release_summary.csv",
             "cases,eligible,pearson\n" + std::to_string(total) + ',' +
                 std::to_string(xs.size()) + ',' + corr + '\n');
}

unsigned worker_count_from_env() {
  if (const char* env = std::getenv("CLUSTERWAVE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

json cell_json(const CellData& cell) {
  return {{"id", cell.key.id()},
          {"kind", std::string(to_string(cell.key.kind))},
          {"k_rule", cell.key.k_rule.label()},
          {"k", cell.k},
          {"n", cell.key.n},
          {"w", cell.key.w},
          {"m0", cell.key.m0},
          {"p", cell.key.p}};
}

CellKey cell_key_from_json(const json& j) {
  CellKey key;
  key.kind = parse_graph_kind(j.at("kind").get<std::string>());
  const std::string rule = j.at("k_rule").get<std::string>();
  key.k_rule = rule == "paper" ? KRule::paper() : KRule::fixed(std::stoull(rule));
  key.n = j.at("n").get<std::size_t>();
  key.w = j.at("w").get<std::size_t>();
  key.m0 = j.at("m0").get<std::size_t>();
  key.p = j.at("p").get<double>();
  return key;
}

std::string series_text(const std::vector<TrialSeries>& trials) {
  std::ostringstream out;
  write_series_csv(out, trials);
  return out.str();
}

}  // namespace

SweepReport run_sweep(const SweepConfig& config, const fs::path& out_dir, unsigned threads) {
  const std::vector<RunDescriptor> runs = expand_sweep(config);
  std::vector<RunOutput> outputs(runs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        outputs[i] = execute_run(config, runs[i]);
      } catch (const std::exception& e) {
        outputs[i] = RunOutput{};
        outputs[i].status = std::string("error: ") + e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(runs.size())));
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  }

  fs::create_directories(out_dir / "series");

  // Sequential reduce in descriptor order.
  const std::size_t n_cells = runs.back().cell_index + 1;
  std::vector<CellData> cells(n_cells);
  std::vector<std::vector<std::size_t>> members(n_cells);
  for (std::size_t i = 0; i < runs.size(); ++i) members[runs[i].cell_index].push_back(i);

  for (std::size_t c = 0; c < n_cells; ++c) {
    CellData& cell = cells[c];
    const RunDescriptor& first = runs[members[c].front()];
    cell.key = first.cell;
    cell.k = first.cell.k_rule.resolve(first.cell.n, first.cell.w);

    json sidecar = cell_json(cell);
    sidecar["k_rounding"] = "half-up";
    sidecar["week0_counts_seeds"] = true;
    sidecar["epidemic"] = config_to_json(config)["epidemic"];
    sidecar["trials"] = json::array();
    for (std::size_t i : members[c]) {
      const RunOutput& out = outputs[i];
      json t = {{"trial", runs[i].trial},
                {"seed", runs[i].seed},
                {"status", out.status},
                {"graph_hash", hex64(out.graph_hash)},
                {"edges", out.edges},
                {"groups", out.groups}};
      if (!out.meta.is_null()) t.update(out.meta);
      sidecar["trials"].push_back(std::move(t));
      if (out.status != "ok") continue;
      cell.baseline.push_back(out.baseline);
      if (out.scenario) cell.scenario.push_back(*out.scenario);
    }

    const fs::path stem = out_dir / "series" / cell.key.id();
    try {
      write_file(fs::path(stem).concat(".csv"), series_text(cell.baseline));
      if (!cell.scenario.empty()) {
        write_file(fs::path(stem).concat(".scenario.csv"), series_text(cell.scenario));
      }
      write_file(fs::path(stem).concat(".json"), sidecar.dump(2) + "\n");
    } catch (const std::exception& e) {
      for (std::size_t i : members[c]) {
        if (outputs[i].status == "ok") outputs[i].status = std::string("io_error: ") + e.what();
      }
      cell.baseline.clear();
      cell.scenario.clear();
    }
  }

  SweepReport report;
  report.runs = runs.size();
  report.cells = n_cells;
  json manifest;
  manifest["config"] = config_to_json(config);
  manifest["config_hash"] = hex64(config_hash(config));
  manifest["code_version"] = std::string(code_version());
  manifest["run_count"] = runs.size();
  manifest["cells"] = json::array();
  for (const CellData& cell : cells) {
    json entry = cell_json(cell);
    entry["trials"] = json::array();
    for (const TrialSeries& t : cell.baseline) entry["trials"].push_back(t.trial);
    entry["has_scenario"] = !cell.scenario.empty();
    manifest["cells"].push_back(std::move(entry));
  }
  manifest["runs"] = json::array();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    report.failed += outputs[i].status != "ok";
    manifest["runs"].push_back({{"run_id", runs[i].run_id()},
                                {"cell", runs[i].cell.id()},
                                {"trial", runs[i].trial},
                                {"seed", runs[i].seed},
                                {"status", outputs[i].status},
                                {"graph_hash", hex64(outputs[i].graph_hash)}});
  }
  manifest["failed"] = report.failed;
  write_file(out_dir / "manifest.json", manifest.dump(2) + "\n");

  write_analysis(out_dir, config, cells);
  return report;
}

void analyze_tree(const fs::path& dir) {
  const json manifest = json::parse(read_file(dir / "manifest.json"));
  const SweepConfig config = config_from_json(manifest.at("config"));
  std::vector<CellData> cells;
  for (const json& entry : manifest.at("cells")) {
    CellData cell;
    cell.key = cell_key_from_json(entry);
    cell.k = entry.at("k").get<std::size_t>();
    const fs::path stem = dir / "series" / cell.key.id();
    if (!entry.at("trials").empty()) {
      std::istringstream base(read_file(fs::path(stem).concat(".csv")));
      cell.baseline = read_series_csv(base);
      if (entry.value("has_scenario", false)) {
        std::istringstream scen(read_file(fs::path(stem).concat(".scenario.csv")));
        cell.scenario = read_series_csv(scen);
      }
    }
    cells.push_back(std::move(cell));
  }
  write_analysis(dir, config, cells);
}

}  // namespace clusterwave
