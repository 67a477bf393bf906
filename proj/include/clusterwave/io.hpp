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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "clusterwave/epidemic.hpp"

namespace clusterwave {

/// Shortest decimal form that round-trips (std::to_chars).
std::string format_number(double value);

/// The weekly series of one trial, without the event log.
struct TrialSeries {
  int trial = 0;
  CountSeries cases;
  CountSeries cumulative;
  RealSeries infectious_mass;
};

TrialSeries series_of(const TrialResult& result, int trial);

inline constexpr std::string_view kSeriesHeader =
    "trial,week,new_cases,cumulative,infectious_mass";

/// CSV with kSeriesHeader, one row per (trial, week), '\n' line endings.
void write_series_csv(std::ostream& out, std::span<const TrialSeries> trials);
std::vector<TrialSeries> read_series_csv(std::istream& in);

/// Seeds, flags and network changes of one trial, for metadata sidecars.
nlohmann::json trial_metadata(const TrialResult& result);

/// Writes `content` to `path` (binary, exact bytes). Throws std::runtime_error.
void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

std::string hex64(std::uint64_t value);

}  // namespace clusterwave
