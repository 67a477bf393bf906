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

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "clusterwave/epidemic.hpp"

namespace clusterwave {

class UndefinedMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct PeakParams {
  int delta_t = 5;          // half-window in weeks
  double min_height = 1.0;  // smaller maxima are not peaks
  int first_week = 0;       // weeks before this are ignored

  void validate() const {
    if (delta_t < 1) throw std::invalid_argument("delta_t must be at least 1");
    if (first_week < 0) throw std::invalid_argument("first_week must be non-negative");
  }
};

struct Peak {
  int week;
  double height;

  friend bool operator==(const Peak&, const Peak&) = default;
};

/// Window-max peaks: t is a peak when f(t) >= f(s) for every s within
/// delta_t weeks (clipped to the series), f(t) >= min_height, and no earlier
/// week in the window ties f(t). Returned in week order.
template <typename Derived>
std::vector<Peak> detect_peaks(const Eigen::DenseBase<Derived>& series,
                               const PeakParams& params = {}) {
  params.validate();
  const auto f = series.derived().template cast<double>().eval();
  const Eigen::Index len = f.size();
  const Eigen::Index first = params.first_week;
  std::vector<Peak> peaks;
  for (Eigen::Index t = first; t < len; ++t) {
    const double v = f(t);
    if (v < params.min_height) continue;
    const Eigen::Index lo = std::max(first, t - params.delta_t);
    const Eigen::Index hi = std::min(len - 1, t + static_cast<Eigen::Index>(params.delta_t));
    bool is_peak = true;
    for (Eigen::Index s = lo; s < t && is_peak; ++s) is_peak = f(s) < v;
    for (Eigen::Index s = t + 1; s <= hi && is_peak; ++s) is_peak = f(s) <= v;
    if (is_peak) peaks.push_back({static_cast<int>(t), v});
  }
  return peaks;
}

struct WaveReport {
  std::vector<Peak> peaks;
  bool second_peak_exists = false;
  bool second_higher_than_first = false;
  // min(f) strictly between the first two peaks, over the first height
  std::optional<double> trough_ratio_before_second;
};

template <typename Derived>
WaveReport classify_waves(std::vector<Peak> peaks, const Eigen::DenseBase<Derived>& series) {
  WaveReport report;
  report.peaks = std::move(peaks);
  if (report.peaks.size() < 2) return report;
  const Peak& first = report.peaks[0];
  const Peak& second = report.peaks[1];
  report.second_peak_exists = true;
  report.second_higher_than_first = second.height > first.height;
  const int gap = second.week - first.week - 1;
  if (gap > 0 && first.height > 0.0) {
    const double trough = static_cast<double>(
        series.derived().segment(first.week + 1, gap).minCoeff());
    report.trough_ratio_before_second = trough / first.height;
  }
  return report;
}

/// Mean week of every infection after week 0, computed from the weekly
/// new-case series; 0 when only the seeds were infected.
template <typename Derived>
double average_infection_timing(const Eigen::DenseBase<Derived>& cases) {
  const auto f = cases.derived().template cast<double>().eval();
  const Eigen::Index len = f.size();
  if (len < 2) return 0.0;
  const auto later = f.tail(len - 1);
  const double total = later.sum();
  if (total <= 0.0) return 0.0;
  const auto weeks = Eigen::ArrayXd::LinSpaced(len - 1, 1.0, static_cast<double>(len - 1));
  return (later * weeks).sum() / total;
}

/// Same statistic from the event log: mean week_infected over non-seed nodes.
double average_infection_timing(const TrialResult& result);

struct ReleaseMetrics {
  double x;  // restricted after-release max over restricted overall max
  double y;  // released after-release max over restricted overall max
};

template <typename DerivedA, typename DerivedB>
ReleaseMetrics release_metrics(const Eigen::DenseBase<DerivedA>& baseline,
                               const Eigen::DenseBase<DerivedB>& released, int release_week) {
  const auto base = baseline.derived().template cast<double>().eval();
  const auto rel = released.derived().template cast<double>().eval();
  if (base.size() != rel.size()) throw std::invalid_argument("series lengths differ");
  if (release_week < 0 || release_week >= base.size()) {
    throw std::invalid_argument("release week outside the series");
  }
  const double overall = base.maxCoeff();
  if (!(overall > 0.0)) throw UndefinedMetric("baseline never has a case");
  const Eigen::Index tail = base.size() - release_week;
  return {base.tail(tail).maxCoeff() / overall, rel.tail(tail).maxCoeff() / overall};
}

/// A release case counts only when the restricted run's highest week, looking
/// at weeks from `first_week` on, is positive and falls before the release.
/// With first_week = 1 a run that never spreads past its seeds is excluded.
template <typename Derived>
bool release_eligible(const Eigen::DenseBase<Derived>& baseline, int release_week,
                      int first_week = 0) {
  const auto base = baseline.derived().template cast<double>().eval();
  if (first_week < 0 || first_week >= base.size()) {
    throw std::invalid_argument("first week outside the series");
  }
  Eigen::Index arg = 0;
  const double top = base.tail(base.size() - first_week).maxCoeff(&arg);
  return top > 0.0 && arg + first_week < release_week;
}

/// Pearson product-moment correlation.
template <typename DerivedA, typename DerivedB>
double pearson(const Eigen::DenseBase<DerivedA>& xs, const Eigen::DenseBase<DerivedB>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson: sizes differ");
  if (xs.size() < 2) throw UndefinedMetric("pearson: need at least two points");
  const Eigen::ArrayXd x = xs.derived().template cast<double>();
  const Eigen::ArrayXd y = ys.derived().template cast<double>();
  const Eigen::ArrayXd dx = x - x.mean();
  const Eigen::ArrayXd dy = y - y.mean();
  const double sxx = dx.square().sum();
  const double syy = dy.square().sum();
  if (sxx == 0.0 || syy == 0.0) throw UndefinedMetric("pearson: zero variance");
  return std::clamp((dx * dy).sum() / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline double pearson(std::span<const double> xs, std::span<const double> ys) {
  using ConstMap = Eigen::Map<const Eigen::ArrayXd>;
  return pearson(ConstMap(xs.data(), static_cast<Eigen::Index>(xs.size())),
                 ConstMap(ys.data(), static_cast<Eigen::Index>(ys.size())));
}

struct TrialSummary {
  double peak = 0.0;    // max new cases from params.first_week on
  double timing = 0.0;  // average_infection_timing
  WaveReport waves;
};

struct TrialAggregate {
  RealSeries mean;         // week-wise mean over trials
  double mean_peak = 0.0;  // max of the mean curve from params.first_week on
  double mean_timing = 0.0;  // pooled over all infections of all trials
  WaveReport mean_waves;
  std::vector<TrialSummary> trials;
};

/// Week-wise mean plus peak statistics on the mean curve and on every trial.
TrialAggregate aggregate_trials(std::span<const CountSeries> cases,
                                const PeakParams& params = {});
TrialAggregate aggregate_trials(std::span<const TrialResult> results,
                                const PeakParams& params = {});

}  // namespace clusterwave
