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
#include "watchtower/model/components.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower::collection {

/// Registry keys of the built-in pull connectors.
namespace dao_keys {
inline constexpr std::string_view plan        = "dao.file.plan";
inline constexpr std::string_view effort      = "dao.file.effort";
inline constexpr std::string_view time_series = "dao.file.timeseries";
}  // namespace dao_keys

struct PullState
{
  std::optional<Timestamp>   last_pulled;
  std::optional<std::string> last_error;

  bool operator==(const PullState &) const = default;
};

using PullStates = std::map<std::string, PullState>;

/// Dao-bound entries due at `now`: inside the collection window and either
/// never pulled or last pulled at least one interval ago. Sorted by id.
std::vector<std::string> poll_due(const model::VisualizationCatena &catena, const PullStates &states, Timestamp now);

/// Connector implementation behind a DAO package id.
class DaoConnector
{
public:
  virtual ~DaoConnector() = default;

  /// Body of type `type_id` read from the source. Throws Error when the source
  /// is unreachable and InvalidData when its content does not parse.
  virtual json fetch(const json &connection, std::string_view type_id) const = 0;
};

class DaoCatalog
{
public:
  void                add(std::string key, std::shared_ptr<const DaoConnector> connector);
  const DaoConnector *find(std::string_view key) const;

private:
  std::map<std::string, std::shared_ptr<const DaoConnector>, std::less<>> connectors_;
};

/// File connectors reading the interchange formats; relative `path`
/// connection values resolve against `base`.
DaoCatalog builtin_connectors(std::filesystem::path base);

/// Pulls one dao-bound entry and stores the result as its next payload
/// version. On failure the state records the error, keeps last_pulled, and
/// the exception propagates with the store untouched.
engine::Payload pull_entry(const model::DataEntry &entry, PullState &state, const DaoCatalog &connectors,
                           const model::ComponentRegistry &registry, engine::PayloadStore &store, Timestamp now);

}  // namespace watchtower::collection
