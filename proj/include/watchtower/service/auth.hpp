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
#include "watchtower/model/catena.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower::service {

inline constexpr std::string_view kAdminRole = "admin";

struct Principal
{
  std::string           id;
  std::string           name;
  std::set<std::string> roles;
  std::string           token;

  bool is_admin() const { return roles.count(std::string(kAdminRole)) > 0; }
};

/// Static user table. Tokens must be unique and every user needs a role.
class CredentialStore
{
public:
  CredentialStore() = default;
  /// Throws InvalidData on duplicate tokens, empty tokens or empty role sets.
  explicit CredentialStore(std::vector<Principal> users);

  /// `{"users": [{"id", "name", "roles": [...], "token"}]}`.
  static CredentialStore from_json(const json &doc);

  std::optional<Principal> authenticate(std::string_view token) const;

private:
  std::map<std::string, Principal, std::less<>> by_token_;
};

enum class Resource
{
  view,
  catena,
  form,
  repository,
  composition,
  experience,
};

enum class Action
{
  read,
  write,
  submit,
};

/// Access rules: a view is readable iff its visible-to set meets the
/// principal's roles; catena and repository writes, composition and
/// experience recording need admin; form submission needs one of the owning
/// catena's participant roles; a catena document is readable by admins and
/// participants; repository browsing is open to every authenticated user.
/// `catena` is the owning catena for view, form and catena resources.
bool authorize(const Principal &principal, Resource resource, const std::string &id, Action action,
               const model::VisualizationCatena *catena = nullptr);

}  // namespace watchtower::service
