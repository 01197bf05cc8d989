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

#include "watchtower/techniques/types.hpp"

#include "watchtower/common/error.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace watchtower::techniques {
namespace {

[[noreturn]] void invalid(std::string message)
{
  throw InvalidData({std::move(message)});
}

const json &field(const json &record, const char *name, std::size_t row)
{
  if (!record.is_object())
  {
    invalid("[" + std::to_string(row) + "]: expected a record object");
  }
  auto it = record.find(name);
  if (it == record.end() || it->is_null())
  {
    invalid("[" + std::to_string(row) + "]." + name + ": missing");
  }
  return *it;
}

std::string text_field(const json &record, const char *name, std::size_t row)
{
  auto const &v = field(record, name, row);
  if (!v.is_string())
  {
    invalid("[" + std::to_string(row) + "]." + name + ": expected text");
  }
  return v.get<std::string>();
}

double number_field(const json &record, const char *name, std::size_t row)
{
  auto const &v = field(record, name, row);
  if (!v.is_number())
  {
    invalid("[" + std::to_string(row) + "]." + name + ": expected number");
  }
  return v.get<double>();
}

std::optional<double> optional_number(const json &record, const char *name, std::size_t row)
{
  auto it = record.find(name);
  if (it == record.end() || it->is_null())
  {
    return std::nullopt;
  }
  return number_field(record, name, row);
}

Date date_field(const json &record, const char *name, std::size_t row)
{
  auto text = text_field(record, name, row);
  auto ts   = parse_timestamp(text);
  if (!ts)
  {
    invalid("[" + std::to_string(row) + "]." + name + ": invalid date '" + text + "'");
  }
  return date_of(*ts);
}

const json &rows_of(const json &body)
{
  if (!body.is_array())
  {
    invalid("body must be a list of records");
  }
  return body;
}

json optional_json(const std::optional<double> &v)
{
  return v ? json(*v) : json(nullptr);
}

const std::vector<std::string> kNoChildren;

}  // namespace

ActivityHierarchy::ActivityHierarchy(std::vector<Activity> activities)
  : activities_(std::move(activities))
{
  std::vector<std::string> issues;
  for (std::size_t i = 0; i < activities_.size(); ++i)
  {
    auto const &a = activities_[i];
    if (a.id.empty())
    {
      issues.push_back("activity at position " + std::to_string(i) + " has an empty id");
    }
    if (!index_.emplace(a.id, i).second)
    {
      issues.push_back("duplicate activity id '" + a.id + "'");
    }
    if (a.start > a.end)
    {
      issues.push_back("activity '" + a.id + "' starts after it ends");
    }
    if (a.baseline_effort_h < 0.0)
    {
      issues.push_back("activity '" + a.id + "' has negative baseline effort");
    }
  }
  for (auto const &a : activities_)
  {
    if (!a.parent)
    {
      continue;
    }
    if (!index_.count(*a.parent))
    {
      issues.push_back("activity '" + a.id + "' references unknown parent '" + *a.parent + "'");
      continue;
    }
    children_[*a.parent].push_back(a.id);
  }
  if (issues.empty())
  {
    for (auto const &a : activities_)
    {
      std::set<std::string> seen{a.id};
      auto                  parent = a.parent;
      while (parent)
      {
        if (!seen.insert(*parent).second)
        {
          issues.push_back("activity '" + a.id + "' is part of a parent cycle");
          break;
        }
        parent = activities_[index_.at(*parent)].parent;
      }
    }
  }
  if (!issues.empty())
  {
    throw InvalidData(std::move(issues));
  }
}

const Activity *ActivityHierarchy::find(std::string_view id) const
{
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &activities_[it->second];
}

const std::vector<std::string> &ActivityHierarchy::children(std::string_view id) const
{
  auto it = children_.find(id);
  return it == children_.end() ? kNoChildren : it->second;
}

std::vector<std::string> ActivityHierarchy::roots() const
{
  std::vector<std::string> out;
  for (auto const &a : activities_)
  {
    if (!a.parent)
    {
      out.push_back(a.id);
    }
  }
  return out;
}

std::vector<std::string> ActivityHierarchy::bottom_up() const
{
  std::vector<std::string>                 order;
  std::function<void(const std::string &)> visit = [&](const std::string &id) {
    for (auto const &child : children(id))
    {
      visit(child);
    }
    order.push_back(id);
  };
  for (auto const &root : roots())
  {
    visit(root);
  }
  return order;
}

std::string_view to_string(Status status)
{
  switch (status)
  {
  case Status::green:
    return "green";
  case Status::yellow:
    return "yellow";
  case Status::red:
    return "red";
  case Status::no_baseline:
    return "no-baseline";
  }
  return "?";
}

std::optional<Status> status_from_string(std::string_view text)
{
  for (auto s : {Status::green, Status::yellow, Status::red, Status::no_baseline})
  {
    if (to_string(s) == text)
    {
      return s;
    }
  }
  return std::nullopt;
}

int severity_rank(Status status)
{
  switch (status)
  {
  case Status::no_baseline:
    return -1;
  case Status::green:
    return 0;
  case Status::yellow:
    return 1;
  case Status::red:
    return 2;
  }
  return -1;
}

std::string_view to_string(TrendClass trend)
{
  switch (trend)
  {
  case TrendClass::stable:
    return "stable";
  case TrendClass::delayed:
    return "delayed";
  case TrendClass::accelerated:
    return "accelerated";
  }
  return "?";
}

json to_body(const ActivityHierarchy &hierarchy)
{
  json rows = json::array();
  for (auto const &a : hierarchy.activities())
  {
    rows.push_back({{"activity_id", a.id},
                    {"parent_id", a.parent ? json(*a.parent) : json(nullptr)},
                    {"name", a.name},
                    {"start", format_date(a.start)},
                    {"end", format_date(a.end)},
                    {"baseline_effort_h", a.baseline_effort_h}});
  }
  return rows;
}

json to_body(const EffortTable &table)
{
  json rows = json::array();
  for (auto const &r : table.records)
  {
    rows.push_back(
        {{"person_id", r.person}, {"activity_id", r.activity}, {"date", format_date(r.date)}, {"hours", r.hours}});
  }
  return rows;
}

json to_body(const ControlMetric &metric)
{
  json rows = json::array();
  for (auto const &[key, value] : metric.values)
  {
    rows.push_back({{"key", key}, {"value", value}});
  }
  return rows;
}

json to_body(const TimeSeries &series)
{
  json rows = json::array();
  for (auto const &p : series.points)
  {
    rows.push_back({{"timestamp", format_timestamp(p.at)}, {"value", p.value}});
  }
  return rows;
}

json to_body(const IndicatorTable &table)
{
  json rows = json::array();
  for (auto const &r : table.rows)
  {
    rows.push_back({{"activity_id", r.activity},
                    {"actual", r.actual},
                    {"planned", optional_json(r.planned)},
                    {"deviation", optional_json(r.deviation)},
                    {"status", to_string(r.status)}});
  }
  return rows;
}

json to_body(const EvaReport &report)
{
  json rows = json::array();
  for (auto const &r : report.rows)
  {
    rows.push_back({{"status_date", format_date(r.status_date)},
                    {"bac", r.bac},
                    {"pv", r.pv},
                    {"ev", r.ev},
                    {"ac", r.ac},
                    {"sv", r.sv},
                    {"cv", r.cv},
                    {"spi", optional_json(r.spi)},
                    {"cpi", optional_json(r.cpi)}});
  }
  return rows;
}

json to_body(const std::vector<MilestoneSeries> &forecasts)
{
  json rows = json::array();
  for (auto const &m : forecasts)
  {
    for (auto const &p : m.points)
    {
      rows.push_back({{"milestone_id", m.milestone},
                      {"reporting_date", format_date(p.reported)},
                      {"forecast_date", format_date(p.forecast)}});
    }
  }
  return rows;
}

json to_body(const MilestoneTrend &trend)
{
  json rows = json::array();
  for (auto const &r : trend.rows)
  {
    json points = json::array();
    for (auto const &p : r.points)
    {
      points.push_back({{"reporting_date", format_date(p.reported)}, {"forecast_date", format_date(p.forecast)}});
    }
    rows.push_back({{"milestone_id", r.milestone},
                    {"classification", to_string(r.classification)},
                    {"slope", r.slope},
                    {"points", std::move(points)}});
  }
  return rows;
}

ActivityHierarchy hierarchy_from_body(const json &body)
{
  std::vector<Activity> activities;
  auto const           &rows = rows_of(body);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    auto const &r = rows[i];
    Activity    a;
    a.id   = text_field(r, "activity_id", i);
    a.name = text_field(r, "name", i);
    if (auto it = r.find("parent_id"); it != r.end() && !it->is_null())
    {
      a.parent = text_field(r, "parent_id", i);
    }
    a.start             = date_field(r, "start", i);
    a.end               = date_field(r, "end", i);
    a.baseline_effort_h = number_field(r, "baseline_effort_h", i);
    activities.push_back(std::move(a));
  }
  return ActivityHierarchy(std::move(activities));
}

EffortTable effort_from_body(const json &body)
{
  EffortTable table;
  auto const &rows = rows_of(body);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    auto const  &r = rows[i];
    EffortRecord rec;
    rec.person   = text_field(r, "person_id", i);
    rec.activity = text_field(r, "activity_id", i);
    rec.date     = date_field(r, "date", i);
    rec.hours    = number_field(r, "hours", i);
    if (!(rec.hours > 0.0))
    {
      invalid("[" + std::to_string(i) + "].hours: must be positive");
    }
    table.records.push_back(std::move(rec));
  }
  return table;
}

ControlMetric metric_from_body(const json &body)
{
  ControlMetric metric;
  auto const   &rows = rows_of(body);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    auto key = text_field(rows[i], "key", i);
    if (!metric.values.emplace(key, number_field(rows[i], "value", i)).second)
    {
      invalid("[" + std::to_string(i) + "].key: duplicate key '" + key + "'");
    }
  }
  return metric;
}

TimeSeries series_from_body(const json &body)
{
  TimeSeries  series;
  auto const &rows = rows_of(body);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    auto text = text_field(rows[i], "timestamp", i);
    auto ts   = parse_timestamp(text);
    if (!ts)
    {
      invalid("[" + std::to_string(i) + "].timestamp: invalid timestamp '" + text + "'");
    }
    if (!series.points.empty() && !(series.points.back().at < *ts))
    {
      invalid("[" + std::to_string(i) + "].timestamp: timestamps must be strictly increasing");
    }
    series.points.push_back({*ts, number_field(rows[i], "value", i)});
  }
  return series;
}

IndicatorTable indicators_from_body(const json &body)
{
  IndicatorTable        table;
  std::set<std::string> seen;
  auto const           &rows = rows_of(body);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    auto const  &r = rows[i];
    IndicatorRow row;
    row.activity  = text_field(r, "activity_id", i);
    row.actual    = number_field(r, "actual", i);
    row.planned   = optional_number(r, "planned", i);
    row.deviation = optional_number(r, "deviation", i);
    auto status   = status_from_string(text_field(r, "status", i));
    if (!status)
    {
      invalid("[" + std::to_string(i) + "].status: unknown status");
    }
    row.status = *status;
    if (!seen.insert(row.activity).second)
    {
      invalid("[" + std::to_string(i) + "].activity_id: duplicate activity '" + row.activity + "'");
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

EvaReport eva_from_body(const json &body)
{
  EvaReport   report;
  auto const &rows = rows_of(body);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    auto const &r = rows[i];
    EvaRow      row;
    row.status_date = date_field(r, "status_date", i);
    row.bac         = number_field(r, "bac", i);
    row.pv          = number_field(r, "pv", i);
    row.ev          = number_field(r, "ev", i);
    row.ac          = number_field(r, "ac", i);
    row.sv          = number_field(r, "sv", i);
    row.cv          = number_field(r, "cv", i);
    row.spi         = optional_number(r, "spi", i);
    row.cpi         = optional_number(r, "cpi", i);
    report.rows.push_back(row);
  }
  return report;
}

std::vector<MilestoneSeries> forecasts_from_body(const json &body)
{
  std::map<std::string, MilestoneSeries> grouped;
  auto const                            &rows = rows_of(body);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    auto id      = text_field(rows[i], "milestone_id", i);
    auto &series = grouped[id];
    series.milestone = id;
    series.points.push_back({date_field(rows[i], "reporting_date", i), date_field(rows[i], "forecast_date", i)});
  }
  std::vector<MilestoneSeries> out;
  for (auto &[id, series] : grouped)
  {
    out.push_back(std::move(series));
  }
  return out;
}

std::vector<std::string> check_semantics(std::string_view type_id, const json &body)
{
  try
  {
    if (type_id == type_ids::activity_hierarchy)
    {
      hierarchy_from_body(body);
    }
    else if (type_id == type_ids::effort_table)
    {
      effort_from_body(body);
    }
    else if (type_id == type_ids::control_metric)
    {
      metric_from_body(body);
    }
    else if (type_id == type_ids::time_series)
    {
      series_from_body(body);
    }
    else if (type_id == type_ids::indicator_table)
    {
      indicators_from_body(body);
    }
    else if (type_id == type_ids::eva_report)
    {
      eva_from_body(body);
    }
    else if (type_id == type_ids::milestone_forecasts)
    {
      forecasts_from_body(body);
    }
  }
  catch (const InvalidData &e)
  {
    return e.issues();
  }
  return {};
}

}  // namespace watchtower::techniques
