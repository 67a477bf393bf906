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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "clusterwave/config.hpp"
#include "clusterwave/io.hpp"
#include "clusterwave/netgen.hpp"
#include "clusterwave/scenario.hpp"
#include "clusterwave/sweep.hpp"

namespace cw = clusterwave;

namespace {

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    cw::write_file(path, text);
  }
}

cw::SweepConfig resolve_config(const std::string& preset, const std::string& config_path) {
  if (!preset.empty() && !config_path.empty()) {
    throw cw::ConfigError("pass either --preset or --config, not both");
  }
  if (!preset.empty()) return cw::preset(preset);
  if (!config_path.empty()) return cw::load_config(config_path);
  throw cw::ConfigError("one of --preset or --config is required");
}

// "W=8,m0=2" style overrides; unspecified axes take their first value.
cw::CellKey pick_cell(const cw::SweepConfig& config, const std::string& spec) {
  cw::CellKey cell{config.kinds.front(), config.k_rules.front(), config.n_values.front(),
                   config.w_values.front(), config.m0_values.front(), config.p_values.front()};
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw cw::ConfigError("bad --cell entry '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "W" || key == "w") {
      cell.w = std::stoull(value);
    } else if (key == "m0") {
      cell.m0 = std::stoull(value);
    } else if (key == "N" || key == "n") {
      cell.n = std::stoull(value);
    } else if (key == "p") {
      cell.p = std::stod(value);
    } else if (key == "kind") {
      cell.kind = cw::parse_graph_kind(value);
    } else if (key == "K" || key == "k") {
      cell.k_rule = value == "paper" ? cw::KRule::paper() : cw::KRule::fixed(std::stoull(value));
    } else {
      throw cw::ConfigError("unknown --cell key '" + key + "'");
    }
  }
  return cell;
}

int run_generate(const std::string& kind, std::size_t n, std::size_t w, std::size_t m0,
                 std::size_t k, const std::string& k_rule, std::uint64_t seed,
                 const std::string& out) {
  cw::GenParams params{n, w, m0, k, cw::parse_graph_kind(kind)};
  if (!k_rule.empty()) {
    if (k_rule != "paper") throw cw::ConfigError("--k-rule accepts only 'paper'");
    params.k = cw::paper_clique_count(n, w);
  }
  cw::Rng rng(seed);
  const cw::Graph g = cw::generate(params, rng);
  emit(out, cw::to_edge_list(g, params, seed));
  std::cerr << "generated " << g.num_nodes() << " nodes, " << g.num_edges()
            << " edges, K=" << params.k << ", max degree " << g.max_degree() << '\n';
  return 0;
}

int run_simulate(const cw::SweepConfig& config, const std::string& cell_spec, int trial,
                 const std::string& out, const std::string& meta_out) {
  const cw::CellKey cell = pick_cell(config, cell_spec);
  std::vector<cw::TrialSeries> series;
  nlohmann::json meta = {{"cell", cell.id()},
                         {"k", cell.k_rule.resolve(cell.n, cell.w)},
                         {"k_rounding", "half-up"},
                         {"week0_counts_seeds", true},
                         {"trials", nlohmann::json::array()}};
  for (int t = 0; t < config.trials; ++t) {
    if (trial >= 0 && t != trial) continue;
    const cw::RunDescriptor run{cell, 0, t, cw::cell_seed(config.base_seed, cell, t)};
    const cw::RunSetup setup = cw::prepare_run(config, run);
    const cw::ScenarioScript script = cw::resolve_script(config, run);
    const cw::TrialResult result = cw::run_scenario(setup.network, setup.gen.w, setup.epidemic,
                                                    script, setup.epidemic_seed);
    series.push_back(cw::series_of(result, t));
    nlohmann::json entry = cw::trial_metadata(result);
    entry["trial"] = t;
    entry["graph_hash"] = cw::hex64(cw::graph_hash(setup.network->graph));
    meta["trials"].push_back(std::move(entry));
  }
  std::ostringstream csv;
  cw::write_series_csv(csv, series);
  emit(out, csv.str());
  if (!meta_out.empty()) emit(meta_out, meta.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Epidemic spreading over capacity-constrained scale-free contact networks"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Generate a contact network as an edge list");
  std::string kind = "ssc";
  std::size_t n = 1000;
  std::size_t w = 8;
  std::size_t m0 = 2;
  std::size_t k = 1;
  std::string k_rule;
  std::uint64_t seed = 1;
  std::string gen_out = "-";
  gen->add_option("--kind", kind, "sfn | sc | ssc")->check(CLI::IsMember({"sfn", "sc", "ssc"}));
  gen->add_option("--n", n, "Node count")->required();
  gen->add_option("--w", w, "Acceptance cap W");
  gen->add_option("--m0", m0, "Chosen contacts per node");
  auto* k_opt = gen->add_option("--k", k, "Initial clique count");
  gen->add_option("--k-rule", k_rule, "'paper' for K = round(0.1 N / W)")->excludes(k_opt);
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--out", gen_out, "Output path ('-' for stdout)");

  auto* sim = app.add_subcommand("simulate", "Run every trial of one sweep cell");
  std::string sim_preset;
  std::string sim_config;
  std::string cell_spec;
  int sim_trial = -1;
  std::string sim_out = "-";
  std::string sim_meta;
  sim->add_option("--config", sim_config, "Config file (JSON)");
  sim->add_option("--preset", sim_preset, "Named preset");
  sim->add_option("--cell", cell_spec, "Cell overrides, e.g. W=8,m0=2");
  sim->add_option("--trial", sim_trial, "Only this trial index");
  sim->add_option("--out", sim_out, "Series CSV path ('-' for stdout)");
  sim->add_option("--meta", sim_meta, "Metadata JSON path");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep into a result tree");
  std::string sweep_preset;
  std::string sweep_config;
  std::string sweep_out;
  unsigned threads = 0;
  bool print_config = false;
  sweep->add_option("--preset", sweep_preset, "Named preset")
      ->check(CLI::IsMember(cw::preset_names()));
  sweep->add_option("--config", sweep_config, "Config file (JSON)");
  sweep->add_option("--out", sweep_out, "Output directory (default: config output)");
  sweep->add_option("--threads", threads, "Worker count (default: CLUSTERWAVE_THREADS)");
  sweep->add_flag("--print-config", print_config, "Print the resolved config and exit");

  auto* analyze = app.add_subcommand("analyze", "Recompute analysis files of a result tree");
  std::string analyze_in;
  analyze->add_option("--in", analyze_in, "Result tree directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return run_generate(kind, n, w, m0, k, k_rule, seed, gen_out);
    if (*sim) {
      return run_simulate(resolve_config(sim_preset, sim_config), cell_spec, sim_trial, sim_out,
                          sim_meta);
    }
    if (*sweep) {
      const cw::SweepConfig config = resolve_config(sweep_preset, sweep_config);
      if (print_config) {
        std::cout << cw::config_to_json(config).dump(2) << '\n';
        return 0;
      }
      const std::string out = sweep_out.empty() ? config.output_dir : sweep_out;
      const unsigned workers = threads > 0 ? threads : cw::worker_count_from_env();
      const cw::SweepReport report = cw::run_sweep(config, out, workers);
      std::cerr << "sweep " << config.name << ": " << report.cells << " cells, " << report.runs
                << " runs, " << report.failed << " failed -> " << out << '\n';
      return report.failed == 0 ? 0 : 2;
    }
    if (*analyze) {
      cw::analyze_tree(analyze_in);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
