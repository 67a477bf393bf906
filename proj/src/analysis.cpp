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

#include "clusterwave/analysis.hpp"

namespace clusterwave {

double average_infection_timing(const TrialResult& result) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const NodeEvent& e : result.events) {
    if (e.kind != NodeEventKind::infected) continue;
    if (e.node == result.seed_nodes[0] || e.node == result.seed_nodes[1]) continue;
    sum += e.week;
    ++count;
  }
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

TrialAggregate aggregate_trials(std::span<const CountSeries> cases, const PeakParams& params) {
  TrialAggregate agg;
  if (cases.empty()) return agg;
  const Eigen::Index len = cases.front().size();
  Eigen::MatrixXd table(static_cast<Eigen::Index>(cases.size()), len);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (cases[i].size() != len) throw std::invalid_argument("trials have different horizons");
    table.row(static_cast<Eigen::Index>(i)) = cases[i].cast<double>().matrix().transpose();
  }
  agg.mean = table.colwise().mean().transpose().array();

  const Eigen::Index from = std::min<Eigen::Index>(params.first_week, len - 1);
  agg.mean_peak = agg.mean.tail(len - from).maxCoeff();
  agg.mean_timing = average_infection_timing(agg.mean);
  agg.mean_waves = classify_waves(detect_peaks(agg.mean, params), agg.mean);

  agg.trials.reserve(cases.size());
  for (const CountSeries& series : cases) {
    TrialSummary row;
    row.peak = series.tail(len - from).maxCoeff();
    row.timing = average_infection_timing(series);
    row.waves = classify_waves(detect_peaks(series, params), series);
    agg.trials.push_back(std::move(row));
  }
  return agg;
}

TrialAggregate aggregate_trials(std::span<const TrialResult> results, const PeakParams& params) {
  std::vector<CountSeries> cases;
  cases.reserve(results.size());
  for (const TrialResult& r : results) cases.push_back(r.cases);
  return aggregate_trials(std::span<const CountSeries>(cases), params);
}

}  // namespace clusterwave
