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
#include "watchtower/engine/payload.hpp"
#include "watchtower/model/catena.hpp"
#include "watchtower/model/components.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace watchtower::engine {

enum class ViewStatus
{
  ok,
  no_data,
};

std::string_view to_string(ViewStatus status);

struct ViewModel
{
  std::string                                   view;
  std::string                                   spec;
  model::RenderKind                             render = model::RenderKind::table;
  std::string                                   title;
  ViewStatus                                    status = ViewStatus::no_data;
  json                                          data;
  std::vector<std::pair<std::string, ViewModel>> children;  // slot order
  std::map<std::string, std::uint64_t>          input_versions;
  /// False when another view instance embeds this one.
  bool top_level = true;

  json to_json() const;
};

/// Render-kind specific content of one view from its input payloads, keyed by
/// port then ordered by entry id. Null payloads never reach this function.
json render_data(const model::ViewSpec &spec, const model::ComponentRegistry &registry,
                 const std::map<std::string, std::vector<std::pair<std::string, Payload>>> &inputs);

/// Memoizes each view's own content by its input version vector, so a view is
/// re-rendered only when one of its inputs has a newer payload.
class ViewCache
{
public:
  /// Every view instance whose visible-to set intersects `roles`, sorted by id,
  /// with visible children embedded per slot.
  std::vector<ViewModel> refresh(const model::VisualizationCatena &catena, const model::ComponentRegistry &registry,
                                 const PayloadStore &store, const std::set<std::string> &roles);

  /// Views whose cached content no longer matches the store.
  std::set<std::string> stale(const model::VisualizationCatena &catena, const PayloadStore &store) const;

  std::size_t renders() const;

private:
  struct Entry
  {
    std::map<std::string, std::uint64_t> versions;
    ViewStatus                           status = ViewStatus::no_data;
    json                                 data;
  };

  mutable std::mutex           mutex_;
  std::map<std::string, Entry> cache_;
  std::size_t                  renders_ = 0;
};

/// Uncached convenience over ViewCache.
std::vector<ViewModel> refresh_views(const model::VisualizationCatena &catena, const model::ComponentRegistry &registry,
                                     const PayloadStore &store, const std::set<std::string> &roles);

}  // namespace watchtower::engine
