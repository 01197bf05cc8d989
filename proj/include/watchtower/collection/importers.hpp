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
#include "watchtower/techniques/types.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower::collection {

/// Parser keys of the delimited-text interchange formats.
namespace parsers {
inline constexpr std::string_view plan        = "plan.csv";
inline constexpr std::string_view effort      = "effort.csv";
inline constexpr std::string_view time_series = "timeseries.csv";
}  // namespace parsers

struct PlanImport
{
  techniques::ActivityHierarchy hierarchy;
  techniques::ControlMetric     baseline;
};

// Importers throw InvalidData listing every defect; row numbers are physical
// line numbers, so the header is row 1.

/// Header `activity_id,parent_id,name,start,end,baseline_effort_h`.
PlanImport import_project_plan(std::string_view text);

/// Header `person_id,activity_id,date,hours`.
techniques::EffortTable import_effort_table(std::string_view text);

/// Header `timestamp,value`.
techniques::TimeSeries import_time_series(std::string_view text);

/// Bodies produced by parser `key`, keyed by data type id. Throws NotFound for
/// an unknown key.
std::map<std::string, json> parse_document(std::string_view key, std::string_view text);

std::vector<std::string> parser_keys();

}  // namespace watchtower::collection
