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

#include "watchtower/common/json.hpp"
#include "watchtower/common/time.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower::techniques {

/// Built-in data type ids.
namespace type_ids {
inline constexpr std::string_view activity_hierarchy = "activity-hierarchy";
inline constexpr std::string_view effort_table       = "effort-table";
inline constexpr std::string_view control_metric     = "control-metric";
inline constexpr std::string_view indicator_table    = "indicator-table";
inline constexpr std::string_view time_series        = "time-series";
inline constexpr std::string_view eva_report         = "eva-report";
inline constexpr std::string_view milestone_forecasts = "milestone-forecasts";
inline constexpr std::string_view milestone_trend    = "milestone-trend";
}  // namespace type_ids

struct Activity
{
  std::string                id;
  std::string                name;
  std::optional<std::string> parent;
  Date                       start;
  Date                       end;
  double                     baseline_effort_h = 0.0;

  bool operator==(const Activity &) const = default;
};

/// Forest of activities. Each tree has exactly one root; parent links are
/// acyclic. Child date ranges are not required to nest inside the parent.
class ActivityHierarchy
{
public:
  ActivityHierarchy() = default;
  /// Throws InvalidData when an invariant is violated.
  explicit ActivityHierarchy(std::vector<Activity> activities);

  const std::vector<Activity>    &activities() const noexcept { return activities_; }
  const Activity                 *find(std::string_view id) const;
  const std::vector<std::string> &children(std::string_view id) const;
  std::vector<std::string>        roots() const;
  bool                            is_leaf(std::string_view id) const { return children(id).empty(); }
  /// Activity ids ordered so that every child precedes its parent.
  std::vector<std::string> bottom_up() const;

private:
  std::vector<Activity>                           activities_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<std::string, std::vector<std::string>, std::less<>> children_;
};

struct EffortRecord
{
  std::string person;
  std::string activity;
  Date        date;
  double      hours = 0.0;

  bool operator==(const EffortRecord &) const = default;
};

struct EffortTable
{
  std::vector<EffortRecord> records;
};

/// Activity (or other key) -> value.
struct ControlMetric
{
  std::map<std::string, double> values;

  bool operator==(const ControlMetric &) const = default;
};

struct TimePoint
{
  Timestamp at;
  double    value = 0.0;

  bool operator==(const TimePoint &) const = default;
};

struct TimeSeries
{
  std::vector<TimePoint> points;

  bool operator==(const TimeSeries &) const = default;
};

enum class Status
{
  green,
  yellow,
  red,
  no_baseline,
};

std::string_view      to_string(Status status);
std::optional<Status> status_from_string(std::string_view text);
/// green < yellow < red; no_baseline ranks below green.
int severity_rank(Status status);

struct IndicatorRow
{
  std::string           activity;
  double                actual = 0.0;
  std::optional<double> planned;
  std::optional<double> deviation;
  Status                status = Status::no_baseline;

  bool operator==(const IndicatorRow &) const = default;
};

struct IndicatorTable
{
  std::vector<IndicatorRow> rows;

  bool operator==(const IndicatorTable &) const = default;
};

struct EvaRow
{
  Date                  status_date;
  double                bac = 0.0;
  double                pv  = 0.0;
  double                ev  = 0.0;
  double                ac  = 0.0;
  double                sv  = 0.0;
  double                cv  = 0.0;
  std::optional<double> spi;
  std::optional<double> cpi;

  bool operator==(const EvaRow &) const = default;
};

struct EvaReport
{
  std::vector<EvaRow> rows;
};

struct ForecastPoint
{
  Date reported;
  Date forecast;

  bool operator==(const ForecastPoint &) const = default;
};

struct MilestoneSeries
{
  std::string                milestone;
  std::vector<ForecastPoint> points;
};

enum class TrendClass
{
  stable,
  delayed,
  accelerated,
};

std::string_view to_string(TrendClass trend);

struct MilestoneTrendRow
{
  std::string                milestone;
  std::vector<ForecastPoint> points;
  double                     slope = 0.0;  // forecast days per reporting day
  TrendClass                 classification = TrendClass::stable;
};

struct MilestoneTrend
{
  std::vector<MilestoneTrendRow> rows;
};

// Payload body codecs. Decoders throw InvalidData.
json              to_body(const ActivityHierarchy &hierarchy);
json              to_body(const EffortTable &table);
json              to_body(const ControlMetric &metric);
json              to_body(const TimeSeries &series);
json              to_body(const IndicatorTable &table);
json              to_body(const EvaReport &report);
json              to_body(const std::vector<MilestoneSeries> &forecasts);
json              to_body(const MilestoneTrend &trend);
ActivityHierarchy hierarchy_from_body(const json &body);
EffortTable       effort_from_body(const json &body);
ControlMetric     metric_from_body(const json &body);
TimeSeries        series_from_body(const json &body);
IndicatorTable    indicators_from_body(const json &body);
EvaReport         eva_from_body(const json &body);
std::vector<MilestoneSeries> forecasts_from_body(const json &body);

/// Semantic invariants of built-in data types beyond their record schema
/// (unique keys, positive hours, strictly increasing timestamps, ...). Unknown
/// type ids have none.
std::vector<std::string> check_semantics(std::string_view type_id, const json &body);

}  // namespace watchtower::techniques
