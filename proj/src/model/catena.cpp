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

#include "watchtower/model/catena.hpp"

#include <algorithm>

namespace watchtower::model {
namespace {

template <typename T>
const T *find_by_id(const std::vector<T> &items, std::string_view id)
{
  auto it = std::find_if(items.begin(), items.end(), [&](const T &item) { return item.id == id; });
  return it == items.end() ? nullptr : &*it;
}

}  // namespace

const DataEntry *VisualizationCatena::entry(std::string_view id) const
{
  return find_by_id(entries, id);
}

const FunctionInstance *VisualizationCatena::function(std::string_view id) const
{
  return find_by_id(functions, id);
}

const ViewInstance *VisualizationCatena::view(std::string_view id) const
{
  return find_by_id(views, id);
}

const WebFormInstance *VisualizationCatena::form(std::string_view id) const
{
  return find_by_id(forms, id);
}

std::set<std::string> VisualizationCatena::participant_roles() const
{
  if (!meta.roles.empty())
  {
    return meta.roles;
  }
  std::set<std::string> roles;
  for (auto const &v : views)
  {
    roles.insert(v.visible_to.begin(), v.visible_to.end());
  }
  return roles;
}

ParamMap effective_params(const std::vector<ParamSpec> &specs, const ParamMap &supplied)
{
  ParamMap out;
  for (auto const &spec : specs)
  {
    if (spec.default_value)
    {
      out[spec.name] = *spec.default_value;
    }
  }
  for (auto const &[name, value] : supplied)
  {
    out[name] = value;
  }
  return out;
}

bool is_valid_id(std::string_view id)
{
  if (id.empty() || id == "." || id == "..")
  {
    return false;
  }
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
           c == '_' || c == '-';
  });
}

}  // namespace watchtower::model
