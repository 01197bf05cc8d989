// Copyright 2026 The Watchtower Authors
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

#include "watchtower/techniques/types.hpp"

#include <chrono>
#include <optional>
#include <string_view>

namespace watchtower::techniques {

/// metric[a] = hours booked on a's subtree (inclusive). Every activity of
/// the hierarchy appears in the result. Throws TechniqueError when a record
/// names an activity missing from the hierarchy.
ControlMetric aggregate_effort(const EffortTable &effort, const ActivityHierarchy &hierarchy);

enum class ToleranceMode
{
  above_only,
  below_only,
  two_sided,
};

std::string_view             to_string(ToleranceMode mode);
std::optional<ToleranceMode> tolerance_mode_from_string(std::string_view text);

struct ToleranceParams
{
  double        yellow = 0.1;
  double        red    = 0.2;
  ToleranceMode mode   = ToleranceMode::above_only;
};

/// Absolute slack applied to both band limits so that boundaries written in
/// decimal (e.g. 110 vs 100 at 0.1) stay inclusive.
inline constexpr double kToleranceEpsilon = 1e-12;

/// One row per activity present in either metric, ordered by activity id.
/// Throws TechniqueError when yellow > red or a limit is negative.
IndicatorTable tolerance_range_check(const ControlMetric &actual, const ControlMetric &baseline,
                                     const ToleranceParams &params);

/// Share of [start, end] elapsed at `status`, clamped to [0, 1].
double planned_fraction(const Activity &activity, Date status);

/// Standard earned value figures over the hierarchy leaves. PV is
/// time-phased linearly per leaf; SPI/CPI are absent when PV/AC is zero.
EvaRow earned_value_analysis(const ActivityHierarchy &hierarchy, const ControlMetric &progress,
                             const ControlMetric &actual_cost, Date status_date);

inline constexpr double kTrendDeadBand = 0.05;

/// Least-squares slope of forecast day over reporting day.
double forecast_slope(const std::vector<ForecastPoint> &points);

/// Throws TechniqueError on non-increasing reporting dates.
MilestoneTrend milestone_trend_analysis(const std::vector<MilestoneSeries> &forecasts,
                                        double dead_band = kTrendDeadBand);

TimeSeries scale_time_series(const TimeSeries &series, double factor);

/// Hours per bucket, buckets aligned to the earliest record's midnight,
/// empty buckets between first and last emitted as zero.
TimeSeries effort_to_time_series(const EffortTable &effort, std::chrono::days bucket);

}  // namespace watchtower::techniques
