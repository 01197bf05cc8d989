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

#include "watchtower/collection/importers.hpp"

#include "watchtower/common/error.hpp"

#include <boost/tokenizer.hpp>

#include <charconv>
#include <set>
#include <sstream>

namespace watchtower::collection {
namespace {

struct Row
{
  std::size_t              line = 0;
  std::vector<std::string> cells;
};

std::string trim(std::string s)
{
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
  {
    return {};
  }
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

/// Splits `text` into rows below a header that must equal `header`. Blank lines
/// are skipped; quoted cells follow the usual CSV escaping.
std::vector<Row> read_csv(std::string_view text, const std::vector<std::string> &header,
                          std::vector<std::string> &issues)
{
  using Tokenizer = boost::tokenizer<boost::escaped_list_separator<char>>;
  boost::escaped_list_separator<char> sep('\\', ',', '"');

  std::vector<Row>   rows;
  std::istringstream in{std::string(text)};
  std::string        line;
  std::size_t        number     = 0;
  bool               saw_header = false;
  while (std::getline(in, line))
  {
    ++number;
    if (!line.empty() && line.back() == '\r')
    {
      line.pop_back();
    }
    if (trim(line).empty())
    {
      continue;
    }
    Row row{number, {}};
    try
    {
      Tokenizer tok(line, sep);
      for (auto const &cell : tok)
      {
        row.cells.push_back(trim(cell));
      }
    }
    catch (const boost::escaped_list_error &e)
    {
      issues.push_back("row " + std::to_string(number) + ": " + e.what());
      continue;
    }
    if (!saw_header)
    {
      saw_header = true;
      if (row.cells != header)
      {
        std::string expected;
        for (auto const &h : header)
        {
          expected += (expected.empty() ? "" : ",") + h;
        }
        issues.push_back("row " + std::to_string(number) + ": expected header " + expected);
        return {};
      }
      continue;
    }
    if (row.cells.size() != header.size())
    {
      issues.push_back("row " + std::to_string(number) + ": expected " + std::to_string(header.size()) +
                       " columns, found " + std::to_string(row.cells.size()));
      continue;
    }
    rows.push_back(std::move(row));
  }
  if (!saw_header)
  {
    issues.emplace_back("missing header row");
  }
  return rows;
}

std::optional<double> parse_number(const std::string &text)
{
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
  {
    return std::nullopt;
  }
  return value;
}

std::string at_row(std::size_t line)
{
  return " at row " + std::to_string(line);
}

}  // namespace

PlanImport import_project_plan(std::string_view text)
{
  std::vector<std::string> issues;
  auto rows = read_csv(text, {"activity_id", "parent_id", "name", "start", "end", "baseline_effort_h"}, issues);

  std::vector<techniques::Activity> activities;
  std::map<std::string, std::size_t> seen;
  for (auto const &row : rows)
  {
    techniques::Activity a;
    a.id   = row.cells[0];
    a.name = row.cells[2];
    if (!row.cells[1].empty())
    {
      a.parent = row.cells[1];
    }
    if (a.id.empty())
    {
      issues.push_back("empty activity id" + at_row(row.line));
      continue;
    }
    if (!seen.emplace(a.id, row.line).second)
    {
      issues.push_back("duplicate activity id " + a.id + at_row(row.line));
      continue;
    }
    auto start = parse_date(row.cells[3]);
    auto end   = parse_date(row.cells[4]);
    if (!start)
    {
      issues.push_back("unparseable start date '" + row.cells[3] + "'" + at_row(row.line));
    }
    if (!end)
    {
      issues.push_back("unparseable end date '" + row.cells[4] + "'" + at_row(row.line));
    }
    if (start && end && *start > *end)
    {
      issues.push_back("start after end" + at_row(row.line));
    }
    auto baseline = parse_number(row.cells[5]);
    if (!baseline || *baseline < 0)
    {
      issues.push_back("invalid baseline effort '" + row.cells[5] + "'" + at_row(row.line));
    }
    if (!start || !end || !baseline)
    {
      continue;
    }
    a.start             = *start;
    a.end               = *end;
    a.baseline_effort_h = *baseline;
    activities.push_back(std::move(a));
  }
  for (auto const &row : rows)
  {
    auto const &parent = row.cells[1];
    if (!parent.empty() && !seen.count(parent))
    {
      issues.push_back("dangling parent " + parent + at_row(row.line));
    }
  }
  if (rows.empty() && issues.empty())
  {
    issues.emplace_back("no activities");
  }
  if (!issues.empty())
  {
    throw InvalidData(std::move(issues));
  }

  PlanImport out;
  out.hierarchy = techniques::ActivityHierarchy(activities);
  for (auto const &a : activities)
  {
    out.baseline.values[a.id] = a.baseline_effort_h;
  }
  return out;
}

techniques::EffortTable import_effort_table(std::string_view text)
{
  std::vector<std::string> issues;
  auto                     rows = read_csv(text, {"person_id", "activity_id", "date", "hours"}, issues);

  techniques::EffortTable table;
  for (auto const &row : rows)
  {
    techniques::EffortRecord r;
    r.person   = row.cells[0];
    r.activity = row.cells[1];
    auto date  = parse_date(row.cells[2]);
    auto hours = parse_number(row.cells[3]);
    if (r.activity.empty())
    {
      issues.push_back("empty activity id" + at_row(row.line));
    }
    if (!date)
    {
      issues.push_back("unparseable date '" + row.cells[2] + "'" + at_row(row.line));
    }
    if (!hours)
    {
      issues.push_back("unparseable hours '" + row.cells[3] + "'" + at_row(row.line));
    }
    else if (!(*hours > 0))
    {
      issues.push_back("non-positive hours " + row.cells[3] + at_row(row.line));
    }
    if (date && hours && *hours > 0 && !r.activity.empty())
    {
      r.date  = *date;
      r.hours = *hours;
      table.records.push_back(std::move(r));
    }
  }
  if (!issues.empty())
  {
    throw InvalidData(std::move(issues));
  }
  return table;
}

techniques::TimeSeries import_time_series(std::string_view text)
{
  std::vector<std::string> issues;
  auto                     rows = read_csv(text, {"timestamp", "value"}, issues);

  techniques::TimeSeries series;
  for (auto const &row : rows)
  {
    auto ts    = parse_timestamp(row.cells[0]);
    auto value = parse_number(row.cells[1]);
    if (!ts)
    {
      issues.push_back("unparseable timestamp '" + row.cells[0] + "'" + at_row(row.line));
    }
    if (!value)
    {
      issues.push_back("unparseable value '" + row.cells[1] + "'" + at_row(row.line));
    }
    if (!ts || !value)
    {
      continue;
    }
    if (!series.points.empty() && *ts <= series.points.back().at)
    {
      issues.push_back("timestamp not after previous" + at_row(row.line));
      continue;
    }
    series.points.push_back({*ts, *value});
  }
  if (!issues.empty())
  {
    throw InvalidData(std::move(issues));
  }
  return series;
}

std::map<std::string, json> parse_document(std::string_view key, std::string_view text)
{
  namespace tt = techniques::type_ids;
  if (key == parsers::plan)
  {
    auto plan = import_project_plan(text);
    return {{std::string(tt::activity_hierarchy), techniques::to_body(plan.hierarchy)},
            {std::string(tt::control_metric), techniques::to_body(plan.baseline)}};
  }
  if (key == parsers::effort)
  {
    return {{std::string(tt::effort_table), techniques::to_body(import_effort_table(text))}};
  }
  if (key == parsers::time_series)
  {
    return {{std::string(tt::time_series), techniques::to_body(import_time_series(text))}};
  }
  throw NotFound("unknown document parser '" + std::string(key) + "'");
}

std::vector<std::string> parser_keys()
{
  return {std::string(parsers::effort), std::string(parsers::plan), std::string(parsers::time_series)};
}

}  // namespace watchtower::collection
