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
#include "watchtower/gqm/plan.hpp"
#include "watchtower/model/catena.hpp"
#include "watchtower/model/components.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace watchtower::gqm {

struct ProjectContext
{
  std::string           project;
  std::string           catena;  // candidate id; "<project>.candidate" when empty
  std::set<std::string> roles;
};

struct MetricCoverage
{
  bool                     matched = false;
  std::vector<std::string> components;  // spec ids used, in chain order
  std::vector<std::string> missing;     // component kinds that could not be found

  bool operator==(const MetricCoverage &) const = default;
};

struct CompositionResult
{
  model::VisualizationCatena            candidate;
  std::map<std::string, MetricCoverage> coverage;  // by metric id
  std::map<std::string, double>         goals;     // satisfied fraction by goal id

  json to_json() const;
};

/// Builds a candidate catena for `plan` from the components in `registry`.
/// Per metric: an entry of the required type, the best-ranked chain of at most
/// two function specs covering the desired technique tags, and a view of the
/// desired render kind (table as fallback). Ranking: tag coverage desc, chain
/// length asc, reuse desc, ids asc. Pure and deterministic.
CompositionResult compose_catena(const GqmPlan &plan, const model::ComponentRegistry &registry,
                                 const std::map<std::string, std::uint64_t> &reuse, const ProjectContext &context);

}  // namespace watchtower::gqm
