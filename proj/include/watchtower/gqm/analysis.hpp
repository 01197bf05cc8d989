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
#include "watchtower/engine/payload.hpp"
#include "watchtower/model/catena.hpp"
#include "watchtower/store/repository.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower::gqm {

struct ReferenceEvent
{
  std::string description;
  Timestamp   at{};

  bool operator==(const ReferenceEvent &) const = default;
};

enum class Detection
{
  detected,
  detected_late,
  not_detected,
};

std::string_view to_string(Detection detection);

struct IndicatorAnalysis
{
  std::string                                       entry;
  std::optional<Timestamp>                          first_non_green;
  std::optional<std::uint64_t>                      first_non_green_version;
  std::string                                       final_status;
  std::vector<std::pair<ReferenceEvent, Detection>> events;
};

struct DeviationAnalysis
{
  std::vector<IndicatorAnalysis> indicators;  // sorted by entry id

  json to_json() const;
};

/// `history` maps indicator-table entries to their payload versions in order.
/// First non-green is the earliest version with a yellow or red row; an event
/// is detected when that happens at or before the event time.
DeviationAnalysis analyze_deviations(const std::map<std::string, std::vector<engine::Payload>> &history,
                                     const std::vector<ReferenceEvent> &events);

/// Full histories of the catena's indicator-table entries.
std::map<std::string, std::vector<engine::Payload>> indicator_history(const model::VisualizationCatena &catena,
                                                                      const engine::PayloadStore &store);

/// Experience package listing every function, view and form spec the catena
/// instantiates (with instance counts) plus one deviation report per
/// indicator that ever left green.
store::ExperiencePackage package_results(const DeviationAnalysis &analysis, const model::VisualizationCatena &catena,
                                         const std::string &project, std::string lessons = {});

std::vector<ReferenceEvent> events_from_json(const json &doc);

}  // namespace watchtower::gqm
