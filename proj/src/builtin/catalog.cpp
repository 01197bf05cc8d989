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

#include "watchtower/builtin/catalog.hpp"

namespace watchtower::builtin {
namespace {

constexpr const char *kDataTypes = R"([
  {"id": "activity-hierarchy", "name": "Project structure",
   "description": "Hierarchical set of activities with start/end dates and an effort baseline.",
   "tags": ["plan", "hierarchy", "effort"],
   "schema": [
     {"name": "activity_id", "kind": "text"},
     {"name": "parent_id", "kind": "reference", "optional": true},
     {"name": "name", "kind": "text"},
     {"name": "start", "kind": "timestamp"},
     {"name": "end", "kind": "timestamp"},
     {"name": "baseline_effort_h", "kind": "number"}]},
  {"id": "effort-table", "name": "Effort table",
   "description": "Actual effort per team member, activity and day.",
   "tags": ["effort"],
   "schema": [
     {"name": "person_id", "kind": "text"},
     {"name": "activity_id", "kind": "reference"},
     {"name": "date", "kind": "timestamp"},
     {"name": "hours", "kind": "number"}]},
  {"id": "control-metric", "name": "Control metric",
   "description": "One number per key, typically per activity.",
   "tags": ["metric"],
   "schema": [
     {"name": "key", "kind": "reference"},
     {"name": "value", "kind": "number"}]},
  {"id": "indicator-table", "name": "Indicator table",
   "description": "Actual vs planned per activity with deviation ratio and status.",
   "tags": ["indicator", "deviation"],
   "schema": [
     {"name": "activity_id", "kind": "reference"},
     {"name": "actual", "kind": "number"},
     {"name": "planned", "kind": "number", "optional": true},
     {"name": "deviation", "kind": "number", "optional": true},
     {"name": "status", "kind": "text"}]},
  {"id": "time-series", "name": "Time series",
   "description": "Sequence of timestamp/value pairs with strictly increasing timestamps.",
   "tags": ["time-series"],
   "schema": [
     {"name": "timestamp", "kind": "timestamp"},
     {"name": "value", "kind": "number"}]},
  {"id": "eva-report", "name": "Earned value report",
   "tags": ["eva", "earned-value"],
   "schema": [
     {"name": "status_date", "kind": "timestamp"},
     {"name": "bac", "kind": "number"},
     {"name": "pv", "kind": "number"},
     {"name": "ev", "kind": "number"},
     {"name": "ac", "kind": "number"},
     {"name": "sv", "kind": "number"},
     {"name": "cv", "kind": "number"},
     {"name": "spi", "kind": "number", "optional": true},
     {"name": "cpi", "kind": "number", "optional": true}]},
  {"id": "milestone-forecasts", "name": "Milestone forecasts",
   "description": "Forecast completion date per milestone and reporting date.",
   "tags": ["milestone", "schedule"],
   "schema": [
     {"name": "milestone_id", "kind": "text"},
     {"name": "reporting_date", "kind": "timestamp"},
     {"name": "forecast_date", "kind": "timestamp"}]},
  {"id": "milestone-trend", "name": "Milestone trend",
   "tags": ["milestone", "trend"],
   "schema": [
     {"name": "milestone_id", "kind": "text"},
     {"name": "classification", "kind": "text"},
     {"name": "slope", "kind": "number"},
     {"name": "points", "kind": "record_list", "fields": [
       {"name": "reporting_date", "kind": "timestamp"},
       {"name": "forecast_date", "kind": "timestamp"}]}]}
])";

constexpr const char *kFunctions = R"([
  {"id": "agg.effort", "name": "Effort aggregation", "implementation": "agg.effort",
   "description": "Sums booked hours over each activity's subtree.",
   "tags": ["effort", "aggregation"],
   "inputs": [
     {"name": "effort", "type": "effort-table"},
     {"name": "hierarchy", "type": "activity-hierarchy"}],
   "outputs": [{"name": "actual", "type": "control-metric"}],
   "params": []},
  {"id": "check.tolerance", "name": "Tolerance range checking", "implementation": "check.tolerance",
   "description": "Compares an actual metric against a baseline within yellow/red bands.",
   "tags": ["tolerance", "deviation", "control"],
   "inputs": [
     {"name": "actual", "type": "control-metric"},
     {"name": "baseline", "type": "control-metric"}],
   "outputs": [{"name": "indicators", "type": "indicator-table"}],
   "params": [
     {"name": "yellow", "kind": "number", "default": 0.1, "min": 0},
     {"name": "red", "kind": "number", "default": 0.2, "min": 0},
     {"name": "mode", "kind": "text", "default": "above-only",
      "one_of": ["above-only", "below-only", "two-sided"]}]},
  {"id": "eva.standard", "name": "Earned value analysis", "implementation": "eva.standard",
   "description": "PV/EV/AC with SV, CV, SPI and CPI at a status date.",
   "tags": ["eva", "earned-value", "cost", "schedule"],
   "inputs": [
     {"name": "hierarchy", "type": "activity-hierarchy"},
     {"name": "progress", "type": "control-metric"},
     {"name": "actual_cost", "type": "control-metric"}],
   "outputs": [{"name": "report", "type": "eva-report"}],
   "params": [{"name": "status_date", "kind": "text"}]},
  {"id": "mta.standard", "name": "Milestone trend analysis", "implementation": "mta.standard",
   "description": "Classifies milestone forecast drift by least-squares slope.",
   "tags": ["milestone", "trend", "schedule"],
   "inputs": [{"name": "forecasts", "type": "milestone-forecasts"}],
   "outputs": [{"name": "trend", "type": "milestone-trend"}],
   "params": [{"name": "dead_band", "kind": "number", "default": 0.05, "min": 0}]},
  {"id": "ts.scale", "name": "Time series scaling", "implementation": "ts.scale",
   "tags": ["time-series", "scaling", "utility"],
   "inputs": [{"name": "series", "type": "time-series"}],
   "outputs": [{"name": "scaled", "type": "time-series"}],
   "params": [{"name": "factor", "kind": "number", "default": 1.0}]},
  {"id": "conv.effort_ts", "name": "Effort to time series", "implementation": "conv.effort_ts",
   "tags": ["conversion", "time-series", "utility"],
   "inputs": [{"name": "effort", "type": "effort-table"}],
   "outputs": [{"name": "series", "type": "time-series"}],
   "params": [{"name": "bucket_days", "kind": "integer", "default": 1, "min": 1}]}
])";

constexpr const char *kViews = R"([
  {"id": "view.effort-bars", "name": "Effort deviation bar chart", "render": "bar-chart-drilldown",
   "description": "Planned vs actual effort and deviation per activity, drillable along the hierarchy.",
   "tags": ["effort", "deviation", "hierarchy"],
   "inputs": [
     {"name": "indicators", "type": "indicator-table"},
     {"name": "hierarchy", "type": "activity-hierarchy"}]},
  {"id": "view.indicator-table", "name": "Indicator table", "render": "table",
   "tags": ["indicator"],
   "inputs": [{"name": "indicators", "type": "indicator-table"}]},
  {"id": "view.indicator-lights", "name": "Indicator traffic light", "render": "traffic-light",
   "tags": ["indicator", "overview"],
   "inputs": [{"name": "indicators", "type": "indicator-table"}],
   "slots": [
     {"name": "chart", "accepts": ["view.effort-bars"]},
     {"name": "details", "accepts": ["view.indicator-table"]}]},
  {"id": "view.time-series", "name": "Time series line chart", "render": "line-chart",
   "tags": ["time-series"],
   "inputs": [{"name": "series", "type": "time-series", "arity": "many"}]},
  {"id": "view.milestone-trend", "name": "Milestone trend chart", "render": "milestone-trend-chart",
   "tags": ["milestone", "trend"],
   "inputs": [{"name": "trend", "type": "milestone-trend"}]},
  {"id": "view.eva-table", "name": "Earned value table", "render": "table",
   "tags": ["eva"],
   "inputs": [{"name": "report", "type": "eva-report"}]},
  {"id": "view.metric-table", "name": "Metric table", "render": "table",
   "tags": ["metric"],
   "inputs": [{"name": "metric", "type": "control-metric"}]}
])";

constexpr const char *kForms = R"([
  {"id": "form.plan-import", "name": "Project plan upload", "mode": "file-import", "parser": "plan.csv",
   "write": "replace", "targets": ["activity-hierarchy", "control-metric"], "tags": ["plan", "upload"]},
  {"id": "form.effort-import", "name": "Effort upload", "mode": "file-import", "parser": "effort.csv",
   "write": "replace", "targets": ["effort-table"], "tags": ["effort", "upload"]},
  {"id": "form.effort-entry", "name": "Effort entry", "mode": "manual-entry", "write": "append",
   "targets": ["effort-table"], "tags": ["effort", "manual"],
   "layout": [
     {"name": "person_id", "kind": "text"},
     {"name": "activity_id", "kind": "reference"},
     {"name": "date", "kind": "timestamp"},
     {"name": "hours", "kind": "number"}]},
  {"id": "form.metric-entry", "name": "Metric entry", "mode": "manual-entry", "write": "upsert",
   "key_field": "key", "targets": ["control-metric"], "tags": ["metric", "manual"],
   "layout": [
     {"name": "key", "kind": "reference"},
     {"name": "value", "kind": "number"}]},
  {"id": "form.milestone-entry", "name": "Milestone forecast entry", "mode": "manual-entry", "write": "append",
   "targets": ["milestone-forecasts"], "tags": ["milestone", "manual"],
   "layout": [
     {"name": "milestone_id", "kind": "text"},
     {"name": "reporting_date", "kind": "timestamp"},
     {"name": "forecast_date", "kind": "timestamp"}]},
  {"id": "form.timeseries-import", "name": "Time series upload", "mode": "file-import",
   "parser": "timeseries.csv", "write": "replace", "targets": ["time-series"], "tags": ["time-series", "upload"]}
])";

constexpr const char *kDaos = R"([
  {"id": "dao.file.plan", "name": "Plan file", "access": "pull",
   "supported_types": ["activity-hierarchy", "control-metric"], "tags": ["file", "plan"],
   "connection": [{"name": "path", "kind": "text"}]},
  {"id": "dao.file.effort", "name": "Effort file", "access": "pull",
   "supported_types": ["effort-table"], "tags": ["file", "effort"],
   "connection": [{"name": "path", "kind": "text"}]},
  {"id": "dao.file.timeseries", "name": "Time series file", "access": "pull",
   "supported_types": ["time-series"], "tags": ["file", "time-series"],
   "connection": [{"name": "path", "kind": "text"}]}
])";

std::vector<std::pair<model::ComponentKind, json>> build()
{
  std::vector<std::pair<model::ComponentKind, json>> out;
  auto add = [&](model::ComponentKind kind, const char *text) {
    for (auto &body : json::parse(text))
    {
      out.emplace_back(kind, std::move(body));
    }
  };
  add(model::ComponentKind::data_type, kDataTypes);
  add(model::ComponentKind::function, kFunctions);
  add(model::ComponentKind::view, kViews);
  add(model::ComponentKind::web_form, kForms);
  add(model::ComponentKind::dao_package, kDaos);
  return out;
}

}  // namespace

const std::vector<std::pair<model::ComponentKind, json>> &components()
{
  static const auto all = build();
  return all;
}

model::ComponentRegistry registry()
{
  model::ComponentRegistry reg;
  for (auto const &[kind, body] : components())
  {
    reg.add(kind, body);
  }
  return reg;
}

}  // namespace watchtower::builtin
