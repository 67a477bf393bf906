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

#include "clusterwave/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace clusterwave {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

TrialSeries series_of(const TrialResult& result, int trial) {
  return {trial, result.cases, result.cumulative, result.infectious_mass};
}

void write_series_csv(std::ostream& out, std::span<const TrialSeries> trials) {
  out << kSeriesHeader << '\n';
  for (const TrialSeries& t : trials) {
    for (Eigen::Index week = 0; week < t.cases.size(); ++week) {
      out << t.trial << ',' << week << ',' << t.cases(week) << ',' << t.cumulative(week) << ','
          << format_number(t.infectious_mass(week)) << '\n';
    }
  }
}

std::vector<TrialSeries> read_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSeriesHeader) {
    throw std::runtime_error("series csv: unexpected header");
  }
  struct Row {
    int cases;
    int cumulative;
    double mass;
  };
  std::map<int, std::vector<Row>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    int trial = 0;
    int week = 0;
    Row row{};
    char mass[64] = {0};
    if (std::sscanf(line.c_str(), "%d,%d,%d,%d,%63s", &trial, &week, &row.cases,
                    &row.cumulative, mass) != 5) {
      throw std::runtime_error("series csv: malformed line " + std::to_string(line_no));
    }
    const std::string_view text(mass);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), row.mass);
    if (res.ec != std::errc{}) {
      throw std::runtime_error("series csv: bad number on line " + std::to_string(line_no));
    }
    auto& series = rows[trial];
    if (week != static_cast<int>(series.size())) {
      throw std::runtime_error("series csv: weeks out of order on line " +
                               std::to_string(line_no));
    }
    series.push_back(row);
  }
  std::vector<TrialSeries> out;
  for (const auto& [trial, series] : rows) {
    TrialSeries t;
    t.trial = trial;
    const auto len = static_cast<Eigen::Index>(series.size());
    t.cases.resize(len);
    t.cumulative.resize(len);
    t.infectious_mass.resize(len);
    for (Eigen::Index w = 0; w < len; ++w) {
      t.cases(w) = series[static_cast<std::size_t>(w)].cases;
      t.cumulative(w) = series[static_cast<std::size_t>(w)].cumulative;
      t.infectious_mass(w) = series[static_cast<std::size_t>(w)].mass;
    }
    out.push_back(std::move(t));
  }
  return out;
}

nlohmann::json trial_metadata(const TrialResult& result) {
  nlohmann::json meta;
  meta["rng_seed"] = result.rng_seed;
  meta["seed_nodes"] = {result.seed_nodes[0], result.seed_nodes[1]};
  meta["seed_fallback"] = result.seed_fallback;
  meta["weeks_without_active_edges"] = result.weeks_without_active_edges;
  meta["network_changes"] = nlohmann::json::array();
  for (const NetworkChange& c : result.network_changes) {
    meta["network_changes"].push_back(
        {{"week", c.week}, {"edge_delta", c.edge_delta}, {"graph_hash", hex64(c.graph_hash)}});
  }
  return meta;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace clusterwave
