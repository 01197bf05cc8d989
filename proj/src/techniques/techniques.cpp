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

#include "watchtower/techniques/techniques.hpp"

#include "watchtower/common/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace watchtower::techniques {

ControlMetric aggregate_effort(const EffortTable &effort, const ActivityHierarchy &hierarchy)
{
  std::map<std::string, double> own;
  for (auto const &a : hierarchy.activities())
  {
    own[a.id] = 0.0;
  }
  for (auto const &record : effort.records)
  {
    auto it = own.find(record.activity);
    if (it == own.end())
    {
      throw TechniqueError("effort record references unknown activity '" + record.activity + "'");
    }
    it->second += record.hours;
  }
  ControlMetric metric;
  for (auto const &id : hierarchy.bottom_up())
  {
    double total = own.at(id);
    for (auto const &child : hierarchy.children(id))
    {
      total += metric.values.at(child);
    }
    metric.values[id] = total;
  }
  return metric;
}

std::string_view to_string(ToleranceMode mode)
{
  switch (mode)
  {
  case ToleranceMode::above_only:
    return "above-only";
  case ToleranceMode::below_only:
    return "below-only";
  case ToleranceMode::two_sided:
    return "two-sided";
  }
  return "?";
}

std::optional<ToleranceMode> tolerance_mode_from_string(std::string_view text)
{
  for (auto m : {ToleranceMode::above_only, ToleranceMode::below_only, ToleranceMode::two_sided})
  {
    if (to_string(m) == text)
    {
      return m;
    }
  }
  return std::nullopt;
}

IndicatorTable tolerance_range_check(const ControlMetric &actual, const ControlMetric &baseline,
                                     const ToleranceParams &params)
{
  if (params.yellow < 0.0 || params.red < 0.0)
  {
    throw TechniqueError("tolerance limits must be non-negative");
  }
  if (params.yellow > params.red)
  {
    throw TechniqueError("yellow limit must not exceed red limit");
  }
  std::set<std::string> keys;
  for (auto const &[k, v] : actual.values)
  {
    keys.insert(k);
  }
  for (auto const &[k, v] : baseline.values)
  {
    keys.insert(k);
  }

  IndicatorTable table;
  for (auto const &key : keys)
  {
    IndicatorRow row;
    row.activity = key;
    auto a       = actual.values.find(key);
    row.actual   = a == actual.values.end() ? 0.0 : a->second;
    auto b       = baseline.values.find(key);
    if (b == baseline.values.end() || !(b->second > 0.0))
    {
      if (b != baseline.values.end())
      {
        row.planned = b->second;
      }
      row.status = Status::no_baseline;
      table.rows.push_back(std::move(row));
      continue;
    }
    row.planned   = b->second;
    double d      = (row.actual - b->second) / b->second;
    row.deviation = d;
    double excess = 0.0;
    switch (params.mode)
    {
    case ToleranceMode::above_only:
      excess = std::max(d, 0.0);
      break;
    case ToleranceMode::below_only:
      excess = std::max(-d, 0.0);
      break;
    case ToleranceMode::two_sided:
      excess = std::abs(d);
      break;
    }
    if (excess <= params.yellow + kToleranceEpsilon)
    {
      row.status = Status::green;
    }
    else if (excess <= params.red + kToleranceEpsilon)
    {
      row.status = Status::yellow;
    }
    else
    {
      row.status = Status::red;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

double planned_fraction(const Activity &activity, Date status)
{
  if (activity.end <= activity.start)
  {
    return status >= activity.end ? 1.0 : 0.0;
  }
  if (status <= activity.start)
  {
    return 0.0;
  }
  if (status >= activity.end)
  {
    return 1.0;
  }
  auto elapsed = (status - activity.start).count();
  auto span    = (activity.end - activity.start).count();
  return static_cast<double>(elapsed) / static_cast<double>(span);
}

EvaRow earned_value_analysis(const ActivityHierarchy &hierarchy, const ControlMetric &progress,
                             const ControlMetric &actual_cost, Date status_date)
{
  EvaRow row;
  row.status_date = status_date;
  for (auto const &a : hierarchy.activities())
  {
    if (!hierarchy.is_leaf(a.id))
    {
      continue;
    }
    double done = 0.0;
    if (auto it = progress.values.find(a.id); it != progress.values.end())
    {
      done = it->second;
    }
    if (!(done >= 0.0 && done <= 1.0))
    {
      throw TechniqueError("progress of '" + a.id + "' must lie in [0, 1]");
    }
    double cost = 0.0;
    if (auto it = actual_cost.values.find(a.id); it != actual_cost.values.end())
    {
      cost = it->second;
    }
    row.bac += a.baseline_effort_h;
    row.pv += a.baseline_effort_h * planned_fraction(a, status_date);
    row.ev += a.baseline_effort_h * done;
    row.ac += cost;
  }
  row.sv = row.ev - row.pv;
  row.cv = row.ev - row.ac;
  if (row.pv > 0.0)
  {
    row.spi = row.ev / row.pv;
  }
  if (row.ac > 0.0)
  {
    row.cpi = row.ev / row.ac;
  }
  return row;
}

double forecast_slope(const std::vector<ForecastPoint> &points)
{
  if (points.size() < 2)
  {
    return 0.0;
  }
  double n      = static_cast<double>(points.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (auto const &p : points)
  {
    mean_x += static_cast<double>(p.reported.time_since_epoch().count());
    mean_y += static_cast<double>(p.forecast.time_since_epoch().count());
  }
  mean_x /= n;
  mean_y /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (auto const &p : points)
  {
    double dx = static_cast<double>(p.reported.time_since_epoch().count()) - mean_x;
    double dy = static_cast<double>(p.forecast.time_since_epoch().count()) - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

MilestoneTrend milestone_trend_analysis(const std::vector<MilestoneSeries> &forecasts, double dead_band)
{
  MilestoneTrend trend;
  for (auto const &series : forecasts)
  {
    for (std::size_t i = 1; i < series.points.size(); ++i)
    {
      if (!(series.points[i - 1].reported < series.points[i].reported))
      {
        throw TechniqueError("non-increasing reporting dates for milestone '" + series.milestone + "'");
      }
    }
    MilestoneTrendRow row;
    row.milestone = series.milestone;
    row.points    = series.points;
    row.slope     = forecast_slope(series.points);
    if (row.slope > dead_band)
    {
      row.classification = TrendClass::delayed;
    }
    else if (row.slope < -dead_band)
    {
      row.classification = TrendClass::accelerated;
    }
    trend.rows.push_back(std::move(row));
  }
  return trend;
}

TimeSeries scale_time_series(const TimeSeries &series, double factor)
{
  TimeSeries out = series;
  for (auto &p : out.points)
  {
    p.value *= factor;
  }
  return out;
}

TimeSeries effort_to_time_series(const EffortTable &effort, std::chrono::days bucket)
{
  if (bucket.count() <= 0)
  {
    throw TechniqueError("bucket duration must be positive");
  }
  TimeSeries series;
  if (effort.records.empty())
  {
    return series;
  }
  auto origin = std::min_element(effort.records.begin(), effort.records.end(),
                                 [](auto const &a, auto const &b) { return a.date < b.date; })
                    ->date;
  std::map<long, double> sums;
  long                   last = 0;
  for (auto const &r : effort.records)
  {
    long idx = static_cast<long>((r.date - origin).count() / bucket.count());
    sums[idx] += r.hours;
    last = std::max(last, idx);
  }
  for (long idx = 0; idx <= last; ++idx)
  {
    auto it = sums.find(idx);
    series.points.push_back({at_midnight(origin + bucket * idx), it == sums.end() ? 0.0 : it->second});
  }
  return series;
}

}  // namespace watchtower::techniques
