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

#include "watchtower/common/time.hpp"
#include "watchtower/engine/graph.hpp"
#include "watchtower/engine/payload.hpp"
#include "watchtower/model/catena.hpp"
#include "watchtower/model/components.hpp"
#include "watchtower/techniques/registry.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower::engine {

enum class RunStatus
{
  ok,
  failed,
  skipped_missing_input,
};

std::string_view to_string(RunStatus status);

struct InstanceStatus
{
  RunStatus   status = RunStatus::ok;
  std::string reason;

  bool operator==(const InstanceStatus &) const = default;
};

struct ExecutionResult
{
  /// Function instances considered, in execution order, whatever their status.
  std::vector<std::string>                executed;
  std::map<std::string, std::uint64_t>    written_versions;  // derived entry -> version
  std::map<std::string, InstanceStatus>   statuses;
  std::set<std::string>                   stale_views;

  bool ok() const;
  json to_json() const;
};

/// Executes one validated catena. Holds no payload state itself: every run
/// reads from and writes to the store passed in.
class CatenaEngine
{
public:
  /// Throws CatenaRejected when the catena does not validate.
  CatenaEngine(model::VisualizationCatena catena, model::ComponentRegistry registry,
               techniques::TechniqueRegistry techniques, Clock clock = system_now);

  const model::VisualizationCatena &catena() const noexcept { return catena_; }
  const model::ComponentRegistry   &registry() const noexcept { return registry_; }
  const DependencyGraph            &graph() const noexcept { return graph_; }
  const std::vector<std::string>   &order() const noexcept { return order_; }

  ExecutionResult execute(PayloadStore &store) const;

  /// Re-executes exactly the function instances reachable from `changed`.
  ExecutionResult propagate(PayloadStore &store, const std::set<std::string> &changed) const;

  /// View instances with an input among `entries`.
  std::set<std::string> views_reading(const std::set<std::string> &entries) const;

private:
  ExecutionResult run(PayloadStore &store, const std::vector<std::string> &order,
                      const std::set<std::string> &changed) const;

  model::VisualizationCatena    catena_;
  model::ComponentRegistry      registry_;
  techniques::TechniqueRegistry techniques_;
  Clock                         clock_;
  DependencyGraph               graph_;
  std::vector<std::string>      order_;
};

}  // namespace watchtower::engine
