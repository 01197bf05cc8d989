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

#include "watchtower/gqm/analysis.hpp"

#include "watchtower/techniques/types.hpp"

namespace watchtower::gqm {

std::string_view to_string(Detection detection)
{
  switch (detection)
  {
  case Detection::detected: return "detected";
  case Detection::detected_late: return "detected-late";
  case Detection::not_detected: return "not-detected";
  }
  return "not-detected";
}

namespace {

/// Worst status of one indicator body; no-baseline only when nothing else.
techniques::Status worst_status(const json &body)
{
  auto worst = techniques::Status::no_baseline;
  for (auto const &row : techniques::indicators_from_body(body).rows)
  {
    if (row.status == techniques::Status::no_baseline)
    {
      continue;
    }
    if (worst == techniques::Status::no_baseline ||
        techniques::severity_rank(row.status) > techniques::severity_rank(worst))
    {
      worst = row.status;
    }
  }
  return worst;
}

}  // namespace

DeviationAnalysis analyze_deviations(const std::map<std::string, std::vector<engine::Payload>> &history,
                                     const std::vector<ReferenceEvent> &events)
{
  DeviationAnalysis analysis;
  for (auto const &[entry, payloads] : history)
  {
    IndicatorAnalysis indicator;
    indicator.entry = entry;
    for (auto const &payload : payloads)
    {
      auto status = worst_status(payload.body);
      if (status == techniques::Status::yellow || status == techniques::Status::red)
      {
        indicator.first_non_green         = payload.produced_at;
        indicator.first_non_green_version = payload.version;
        break;
      }
    }
    indicator.final_status =
        payloads.empty() ? std::string("no-data") : std::string(techniques::to_string(worst_status(payloads.back().body)));
    for (auto const &event : events)
    {
      auto detection = !indicator.first_non_green          ? Detection::not_detected
                       : *indicator.first_non_green <= event.at ? Detection::detected
                                                                : Detection::detected_late;
      indicator.events.emplace_back(event, detection);
    }
    analysis.indicators.push_back(std::move(indicator));
  }
  return analysis;
}

json DeviationAnalysis::to_json() const
{
  json out = json::array();
  for (auto const &ind : indicators)
  {
    json events = json::array();
    for (auto const &[event, detection] : ind.events)
    {
      events.push_back({{"description", event.description},
                        {"at", format_timestamp(event.at)},
                        {"classification", gqm::to_string(detection)}});
    }
    out.push_back({{"entry", ind.entry},
                   {"first_non_green", ind.first_non_green ? json(format_timestamp(*ind.first_non_green)) : json(nullptr)},
                   {"first_non_green_version", ind.first_non_green_version ? json(*ind.first_non_green_version) : json(nullptr)},
                   {"final_status", ind.final_status},
                   {"events", std::move(events)}});
  }
  return json{{"indicators", std::move(out)}};
}

std::map<std::string, std::vector<engine::Payload>> indicator_history(const model::VisualizationCatena &catena,
                                                                      const engine::PayloadStore &store)
{
  std::map<std::string, std::vector<engine::Payload>> history;
  for (auto const &entry : catena.entries)
  {
    if (entry.data_type != techniques::type_ids::indicator_table)
    {
      continue;
    }
    auto &versions = history[entry.id];
    for (std::uint64_t v = 1, last = store.latest_version(entry.id); v <= last; ++v)
    {
      versions.push_back(store.get(entry.id, v));
    }
  }
  return history;
}

store::ExperiencePackage package_results(const DeviationAnalysis &analysis, const model::VisualizationCatena &catena,
                                         const std::string &project, std::string lessons)
{
  store::ExperiencePackage package;
  package.project = project;
  package.catena  = catena.meta.id;
  package.lessons = std::move(lessons);
  for (auto const &fn : catena.functions)
  {
    ++package.components[fn.spec];
  }
  for (auto const &view : catena.views)
  {
    ++package.components[view.spec];
  }
  for (auto const &form : catena.forms)
  {
    ++package.components[form.spec];
  }
  for (auto const &ind : analysis.indicators)
  {
    if (!ind.first_non_green)
    {
      continue;
    }
    std::string note;
    for (auto const &[event, detection] : ind.events)
    {
      note += (note.empty() ? "" : "; ") + event.description + ": " + std::string(to_string(detection));
    }
    package.deviations.push_back({ind.entry, ind.first_non_green, ind.final_status, note});
  }
  return package;
}

std::vector<ReferenceEvent> events_from_json(const json &doc)
{
  JsonCursor                  cur(doc);
  std::vector<ReferenceEvent> events;
  cur.expect_array();
  for (std::size_t i = 0; i < cur.size(); ++i)
  {
    auto item = cur.at(i);
    auto at   = item.at("at");
    auto ts   = parse_timestamp(at.str());
    if (!ts)
    {
      at.fail("invalid timestamp '" + at.str() + "'");
    }
    events.push_back({item.str_or("description", ""), *ts});
  }
  return events;
}

}  // namespace watchtower::gqm
