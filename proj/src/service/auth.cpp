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

#include "watchtower/service/auth.hpp"

#include "watchtower/common/error.hpp"

#include <algorithm>

namespace watchtower::service {
namespace {

bool intersects(const std::set<std::string> &a, const std::set<std::string> &b)
{
  return std::any_of(a.begin(), a.end(), [&](auto const &x) { return b.count(x) > 0; });
}

}  // namespace

CredentialStore::CredentialStore(std::vector<Principal> users)
{
  std::vector<std::string> issues;
  for (auto &user : users)
  {
    if (user.token.empty())
    {
      issues.push_back("user " + user.id + " has an empty token");
      continue;
    }
    if (user.roles.empty())
    {
      issues.push_back("user " + user.id + " has no roles");
    }
    auto token = user.token;
    if (!by_token_.emplace(token, std::move(user)).second)
    {
      issues.push_back("duplicate token for user " + by_token_.at(token).id);
    }
  }
  if (!issues.empty())
  {
    throw InvalidData(std::move(issues));
  }
}

CredentialStore CredentialStore::from_json(const json &doc)
{
  JsonCursor             cur(doc);
  auto                   users = cur.at("users");
  std::vector<Principal> out;
  for (std::size_t i = 0; i < users.size(); ++i)
  {
    auto      item = users.at(i);
    Principal p;
    p.id    = item.at("id").str();
    p.name  = item.str_or("name", p.id);
    auto r  = item.at("roles").str_list();
    p.roles = {r.begin(), r.end()};
    p.token = item.at("token").str();
    out.push_back(std::move(p));
  }
  return CredentialStore(std::move(out));
}

std::optional<Principal> CredentialStore::authenticate(std::string_view token) const
{
  auto it = by_token_.find(token);
  if (token.empty() || it == by_token_.end())
  {
    return std::nullopt;
  }
  return it->second;
}

bool authorize(const Principal &principal, Resource resource, const std::string &id, Action action,
               const model::VisualizationCatena *catena)
{
  switch (resource)
  {
  case Resource::view:
  {
    auto const *view = catena ? catena->view(id) : nullptr;
    return action == Action::read && view && intersects(view->visible_to, principal.roles);
  }
  case Resource::catena:
    if (action == Action::read)
    {
      return principal.is_admin() || (catena && intersects(catena->participant_roles(), principal.roles));
    }
    return principal.is_admin();
  case Resource::form:
    return action == Action::submit && catena && catena->form(id) &&
           intersects(catena->participant_roles(), principal.roles);
  case Resource::repository: return action == Action::read || principal.is_admin();
  case Resource::composition:
  case Resource::experience: return principal.is_admin();
  }
  return false;
}

}  // namespace watchtower::service
