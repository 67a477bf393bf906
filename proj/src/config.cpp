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

#include "clusterwave/config.hpp"

#include <fstream>
#include <set>

#include "clusterwave/netgen.hpp"
#include "clusterwave/rng.hpp"

namespace clusterwave {

using nlohmann::json;

std::size_t KRule::resolve(std::size_t n, std::size_t w) const {
  return mode == Mode::paper ? paper_clique_count(n, w) : k;
}

std::string KRule::label() const {
  return mode == Mode::paper ? "paper" : std::to_string(k);
}

bool SweepConfig::has_activation_change() const {
  for (const auto& e : events) {
    if (e.kind == ConfigEvent::Kind::set_activation) return true;
  }
  return false;
}

int SweepConfig::release_week() const {
  for (const auto& e : events) {
    if (e.kind == ConfigEvent::Kind::set_activation) return e.week;
  }
  throw ConfigError("config has no set_activation event");
}

void SweepConfig::validate() const {
  if (kinds.empty() || k_rules.empty() || n_values.empty() || w_values.empty() ||
      m0_values.empty() || p_values.empty()) {
    throw ConfigError("every sweep axis needs at least one value");
  }
  if (trials < 1) throw ConfigError("trials must be at least 1");
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p values must lie in [0, 1]");
  }
  for (std::size_t w : w_values) {
    if (w == 0) throw ConfigError("w values must be positive");
  }
  for (const KRule& rule : k_rules) {
    if (rule.mode == KRule::Mode::fixed && rule.k == 0) throw ConfigError("k must be positive");
  }
  try {
    epidemic.validate();
    peaks.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  int last = 0;
  for (const auto& e : events) {
    if (e.week <= last || e.week > epidemic.horizon) {
      throw ConfigError("event weeks must be strictly increasing within [1, horizon]");
    }
    last = e.week;
  }
}

namespace {

const std::set<std::string> kTopKeys{"name",   "kinds",   "k_rules", "n",       "w",
                                     "m0",     "p",       "trials",  "base_seed",
                                     "horizon", "epidemic", "peaks", "events",  "output"};

void check_keys(const json& obj, const std::set<std::string>& allowed, std::string_view where) {
  if (!obj.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

KRule k_rule_from_json(const json& v) {
  if (v.is_string() && v.get<std::string>() == "paper") return KRule::paper();
  if (v.is_number_unsigned()) return KRule::fixed(v.get<std::size_t>());
  throw ConfigError("k rule must be a positive integer or \"paper\"");
}

json k_rule_to_json(const KRule& rule) {
  if (rule.mode == KRule::Mode::paper) return "paper";
  return rule.k;
}

template <typename T>
std::vector<T> list_of(const json& v, std::string_view key) {
  if (!v.is_array()) throw ConfigError(std::string(key) + " must be a list");
  return v.get<std::vector<T>>();
}

std::string_view rule_name(InfectionRule rule) {
  return rule == InfectionRule::scaled ? "scaled" : "literal";
}

}  // namespace

SweepConfig config_from_json(const json& doc) {
  check_keys(doc, kTopKeys, "config");
  SweepConfig c;
  try {
    if (doc.contains("name")) c.name = doc["name"].get<std::string>();
    if (doc.contains("kinds")) {
      c.kinds.clear();
      for (const auto& k : list_of<std::string>(doc["kinds"], "kinds")) {
        c.kinds.push_back(parse_graph_kind(k));
      }
    }
    if (doc.contains("k_rules")) {
      if (!doc["k_rules"].is_array()) throw ConfigError("k_rules must be a list");
      c.k_rules.clear();
      for (const auto& v : doc["k_rules"]) c.k_rules.push_back(k_rule_from_json(v));
    }
    if (doc.contains("n")) c.n_values = list_of<std::size_t>(doc["n"], "n");
    if (doc.contains("w")) c.w_values = list_of<std::size_t>(doc["w"], "w");
    if (doc.contains("m0")) c.m0_values = list_of<std::size_t>(doc["m0"], "m0");
    if (doc.contains("p")) c.p_values = list_of<double>(doc["p"], "p");
    if (doc.contains("trials")) c.trials = doc["trials"].get<int>();
    if (doc.contains("base_seed")) c.base_seed = doc["base_seed"].get<std::uint64_t>();
    if (doc.contains("horizon")) c.epidemic.horizon = doc["horizon"].get<int>();
    if (doc.contains("output")) c.output_dir = doc["output"].get<std::string>();
    if (doc.contains("epidemic")) {
      const json& e = doc["epidemic"];
      check_keys(e, {"r", "q_inf", "q_spread", "recovered_threshold", "infection_rule"},
                 "epidemic");
      c.epidemic.r = e.value("r", c.epidemic.r);
      c.epidemic.q_inf = e.value("q_inf", c.epidemic.q_inf);
      c.epidemic.q_spread = e.value("q_spread", c.epidemic.q_spread);
      c.epidemic.recovered_threshold =
          e.value("recovered_threshold", c.epidemic.recovered_threshold);
      const std::string rule = e.value("infection_rule", std::string("scaled"));
      if (rule == "scaled") {
        c.epidemic.rule = InfectionRule::scaled;
      } else if (rule == "literal") {
        c.epidemic.rule = InfectionRule::literal;
      } else {
        throw ConfigError("infection_rule must be \"scaled\" or \"literal\"");
      }
    }
    if (doc.contains("peaks")) {
      const json& pk = doc["peaks"];
      check_keys(pk, {"delta_t", "min_height", "first_week"}, "peaks");
      c.peaks.delta_t = pk.value("delta_t", c.peaks.delta_t);
      c.peaks.min_height = pk.value("min_height", c.peaks.min_height);
      c.peaks.first_week = pk.value("first_week", c.peaks.first_week);
    }
    if (doc.contains("events")) {
      if (!doc["events"].is_array()) throw ConfigError("events must be a list");
      for (const json& ev : doc["events"]) {
        check_keys(ev, {"week", "kind", "p", "k"}, "event");
        ConfigEvent e;
        e.week = ev.at("week").get<int>();
        const std::string kind = ev.at("kind").get<std::string>();
        if (kind == "set_activation") {
          e.kind = ConfigEvent::Kind::set_activation;
          e.p = ev.at("p").get<double>();
          if (!(e.p >= 0.0 && e.p <= 1.0)) throw ConfigError("event p must lie in [0, 1]");
        } else if (kind == "structural_change") {
          e.kind = ConfigEvent::Kind::structural_change;
          if (ev.contains("k")) e.k_rule = k_rule_from_json(ev["k"]);
        } else {
          throw ConfigError("unknown event kind '" + kind + "'");
        }
        c.events.push_back(e);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

json config_to_json(const SweepConfig& c) {
  json doc;
  doc["name"] = c.name;
  doc["kinds"] = json::array();
  for (GraphKind k : c.kinds) doc["kinds"].push_back(std::string(to_string(k)));
  doc["k_rules"] = json::array();
  for (const KRule& r : c.k_rules) doc["k_rules"].push_back(k_rule_to_json(r));
  doc["n"] = c.n_values;
  doc["w"] = c.w_values;
  doc["m0"] = c.m0_values;
  doc["p"] = c.p_values;
  doc["trials"] = c.trials;
  doc["base_seed"] = c.base_seed;
  doc["horizon"] = c.epidemic.horizon;
  doc["epidemic"] = {{"r", c.epidemic.r},
                     {"q_inf", c.epidemic.q_inf},
                     {"q_spread", c.epidemic.q_spread},
                     {"recovered_threshold", c.epidemic.recovered_threshold},
                     {"infection_rule", std::string(rule_name(c.epidemic.rule))}};
  doc["peaks"] = {{"delta_t", c.peaks.delta_t},
                  {"min_height", c.peaks.min_height},
                  {"first_week", c.peaks.first_week}};
  doc["events"] = json::array();
  for (const ConfigEvent& e : c.events) {
    if (e.kind == ConfigEvent::Kind::set_activation) {
      doc["events"].push_back({{"week", e.week}, {"kind", "set_activation"}, {"p", e.p}});
    } else {
      doc["events"].push_back(
          {{"week", e.week}, {"kind", "structural_change"}, {"k", k_rule_to_json(e.k_rule)}});
    }
  }
  doc["output"] = c.output_dir;
  return doc;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

std::uint64_t config_hash(const SweepConfig& config) {
  return fnv1a(config_to_json(config).dump());
}

namespace {

const std::vector<std::size_t> kTableW{32, 20, 16, 10, 8, 6, 4, 2, 1};
const std::vector<std::size_t> kTableM0{1, 2, 4, 8, 16};
const std::vector<std::size_t> kFineW{1,  2,  3,  4,  5,  6,  7,  8,  10, 12,
                                      14, 16, 18, 20, 22, 24, 26, 28, 30, 32};
const std::vector<std::size_t> kReleaseW{32, 20, 16, 10, 8, 4, 2, 1};
const std::vector<std::size_t> kReleaseM0{16, 8, 4, 2, 1};

SweepConfig table_grid(std::string name, double p) {
  SweepConfig c;
  c.name = std::move(name);
  c.kinds = {GraphKind::sfn_sc, GraphKind::sfn_ssc};
  c.k_rules = {KRule::fixed(1), KRule::paper()};
  c.n_values = {1000, 10000};
  c.w_values = kTableW;
  c.m0_values = kTableM0;
  c.p_values = {p};
  c.trials = 10;
  return c;
}

SweepConfig base_preset(std::string_view name) {
  if (name == "table1" || name == "table3") return table_grid(std::string(name), 1.0);
  if (name == "table2" || name == "table4") return table_grid(std::string(name), 0.5);
  if (name == "fig7") {
    SweepConfig c = table_grid("fig7", 1.0);
    c.w_values = kFineW;
    c.m0_values = {2, 4, 8};
    return c;
  }
  if (name == "release") {
    SweepConfig c;
    c.name = "release";
    c.kinds = {GraphKind::sfn_ssc};
    c.k_rules = {KRule::fixed(1)};
    c.n_values = {10000};
    c.w_values = kReleaseW;
    c.m0_values = kReleaseM0;
    c.p_values = {0.2};
    c.trials = 5;
    c.events = {ConfigEvent{20, ConfigEvent::Kind::set_activation, 1.0, KRule::fixed(1)}};
    return c;
  }
  if (name == "structural_change") {
    SweepConfig c;
    c.name = "structural_change";
    c.kinds = {GraphKind::sfn_ssc};
    c.k_rules = {KRule::paper()};
    c.n_values = {1000, 10000};
    c.w_values = kReleaseW;
    c.m0_values = kReleaseM0;
    c.p_values = {1.0};
    c.trials = 10;
    c.events = {ConfigEvent{20, ConfigEvent::Kind::structural_change, 1.0, KRule::fixed(1)}};
    return c;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace

SweepConfig preset(std::string_view name) {
  constexpr std::string_view suffix = "_small";
  SweepConfig c;
  if (name.ends_with(suffix)) {
    c = base_preset(name.substr(0, name.size() - suffix.size()));
    c.n_values = {1000};
  } else {
    c = base_preset(name);
  }
  c.name = std::string(name);
  c.output_dir = "results/" + c.name;
  c.validate();
  return c;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const char* base :
       {"table1", "table2", "table3", "table4", "fig7", "release", "structural_change"}) {
    names.emplace_back(base);
    names.emplace_back(std::string(base) + "_small");
  }
  return names;
}

}  // namespace clusterwave
