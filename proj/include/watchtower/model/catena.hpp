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
#include "watchtower/model/components.hpp"

#include <chrono>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace watchtower::model {

struct CollectionWindow
{
  Timestamp            start;
  Timestamp            end;
  std::chrono::seconds interval{0};

  bool operator==(const CollectionWindow &) const = default;
};

/// Entry fed by a data access object package.
struct DaoSource
{
  std::string      package;
  json             connection = json::object();
  CollectionWindow window;

  bool operator==(const DaoSource &) const = default;
};

/// Entry fed through web form instances.
struct FormSource
{
  bool operator==(const FormSource &) const = default;
};

/// Entry produced by a function instance output port.
struct DerivedSource
{
  std::string function;
  std::string port;

  bool operator==(const DerivedSource &) const = default;
};

using EntrySource = std::variant<DaoSource, FormSource, DerivedSource>;

struct DataEntry
{
  std::string id;
  std::string data_type;
  EntrySource source = FormSource{};

  bool is_derived() const { return std::holds_alternative<DerivedSource>(source); }
  bool is_form_managed() const { return std::holds_alternative<FormSource>(source); }
  const DaoSource *dao() const { return std::get_if<DaoSource>(&source); }

  bool operator==(const DataEntry &) const = default;
};

/// Port name -> bound entry ids. Arity-one ports hold exactly one id.
using PortBindings = std::map<std::string, std::vector<std::string>>;

struct FunctionInstance
{
  std::string                        id;
  std::string                        spec;
  PortBindings                       inputs;
  ParamMap                           params;
  std::map<std::string, std::string> outputs;  // port -> derived entry id

  bool operator==(const FunctionInstance &) const = default;
};

struct ViewInstance
{
  std::string                        id;
  std::string                        spec;
  PortBindings                       inputs;
  ParamMap                           params;
  std::map<std::string, std::string> children;  // slot -> view instance id
  std::set<std::string>              visible_to;

  bool operator==(const ViewInstance &) const = default;
};

struct WebFormInstance
{
  std::string                        id;
  std::string                        spec;
  std::vector<std::string>           entries;
  std::map<std::string, std::string> field_bindings;  // form field -> schema field

  bool operator==(const WebFormInstance &) const = default;
};

struct CatenaMeta
{
  std::string           id;
  std::string           project;
  std::set<std::string> roles;

  bool operator==(const CatenaMeta &) const = default;
};

/// Instance-level composition controlling one project. Immutable once built;
/// edits produce a replacement value.
struct VisualizationCatena
{
  CatenaMeta                   meta;
  std::vector<DataEntry>       entries;
  std::vector<WebFormInstance> forms;
  std::vector<FunctionInstance> functions;
  std::vector<ViewInstance>    views;

  const DataEntry        *entry(std::string_view id) const;
  const FunctionInstance *function(std::string_view id) const;
  const ViewInstance     *view(std::string_view id) const;
  const WebFormInstance  *form(std::string_view id) const;

  /// Roles allowed to submit forms: meta.roles, or the union of view
  /// visibility sets when meta.roles is empty.
  std::set<std::string> participant_roles() const;

  bool operator==(const VisualizationCatena &) const = default;
};

/// Effective parameters: declared defaults overlaid by supplied values.
ParamMap effective_params(const std::vector<ParamSpec> &specs, const ParamMap &supplied);

/// True when `id` is usable as an identifier (and a path component).
bool is_valid_id(std::string_view id);

}  // namespace watchtower::model
