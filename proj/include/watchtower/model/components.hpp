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
#include "watchtower/model/data_type.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower::model {

using ParamMap = std::map<std::string, json>;

enum class Arity
{
  one,
  many,
};

struct PortSpec
{
  std::string name;
  std::string data_type;
  Arity       arity = Arity::one;

  bool operator==(const PortSpec &) const = default;
};

enum class ParamKind
{
  number,
  integer,
  text,
  boolean,
};

struct ParamConstraint
{
  std::optional<double>    min;
  std::optional<double>    max;
  std::vector<std::string> one_of;

  bool operator==(const ParamConstraint &) const = default;
};

struct ParamSpec
{
  std::string          name;
  ParamKind            kind = ParamKind::number;
  std::optional<json>  default_value;
  ParamConstraint      constraint;

  bool required() const { return !default_value.has_value(); }
  bool operator==(const ParamSpec &) const = default;
};

/// Returns a violation message when `value` is not acceptable for `spec`.
std::optional<std::string> check_param_value(const ParamSpec &spec, const json &value);

/// Packaged control technique.
struct FunctionSpec
{
  std::string              id;
  std::string              name;
  std::vector<PortSpec>    inputs;
  std::vector<PortSpec>    outputs;
  std::vector<ParamSpec>   params;
  std::string              implementation;
  std::vector<std::string> tags;
  std::string              description;

  const PortSpec  *input(std::string_view port) const;
  const PortSpec  *output(std::string_view port) const;
  const ParamSpec *param(std::string_view name) const;

  bool operator==(const FunctionSpec &) const = default;
};

enum class RenderKind
{
  bar_chart_drilldown,
  line_chart,
  milestone_trend_chart,
  table,
  traffic_light,
};

std::string_view          to_string(RenderKind kind);
std::optional<RenderKind> render_kind_from_string(std::string_view text);

struct ChildSlot
{
  std::string              name;
  std::vector<std::string> accepts;  // ViewSpec ids

  bool operator==(const ChildSlot &) const = default;
};

struct ViewSpec
{
  std::string              id;
  std::string              name;
  std::vector<PortSpec>    inputs;
  std::vector<ParamSpec>   params;
  RenderKind               render = RenderKind::table;
  std::vector<ChildSlot>   slots;
  std::vector<std::string> tags;
  std::string              description;

  const PortSpec  *input(std::string_view port) const;
  const ParamSpec *param(std::string_view name) const;
  const ChildSlot *slot(std::string_view name) const;

  bool operator==(const ViewSpec &) const = default;
};

enum class FormMode
{
  manual_entry,
  file_import,
};

enum class WriteMode
{
  append,
  replace,
  upsert,
};

struct FormField
{
  std::string name;
  FieldKind   kind     = FieldKind::text;
  bool        required = true;

  bool operator==(const FormField &) const = default;
};

struct WebFormSpec
{
  std::string              id;
  std::string              name;
  std::vector<std::string> targets;  // data type ids
  FormMode                 mode = FormMode::manual_entry;
  std::vector<FormField>   layout;   // manual-entry
  std::string              parser;   // file-import
  WriteMode                write = WriteMode::append;
  std::string              key_field;  // upsert key (schema field)
  std::vector<std::string> tags;
  std::string              description;

  const FormField *field(std::string_view name) const;

  bool operator==(const WebFormSpec &) const = default;
};

enum class AccessMode
{
  pull,
  push,
};

struct DaoPackageSpec
{
  std::string              id;
  std::string              name;
  std::vector<std::string> supported_types;
  std::vector<ParamSpec>   connection;
  AccessMode               access = AccessMode::pull;
  std::vector<std::string> tags;
  std::string              description;

  bool operator==(const DaoPackageSpec &) const = default;
};

enum class ComponentKind
{
  data_type,
  function,
  view,
  web_form,
  dao_package,
};

std::string_view             to_string(ComponentKind kind);
std::optional<ComponentKind> component_kind_from_string(std::string_view text);
std::vector<ComponentKind>   all_component_kinds();

json to_json(const FunctionSpec &spec);
json to_json(const ViewSpec &spec);
json to_json(const WebFormSpec &spec);
json to_json(const DaoPackageSpec &spec);

FunctionSpec   parse_function_spec(const JsonCursor &doc);
ViewSpec       parse_view_spec(const JsonCursor &doc);
WebFormSpec    parse_web_form_spec(const JsonCursor &doc);
DaoPackageSpec parse_dao_package_spec(const JsonCursor &doc);

/// Parses `body` as a component of `kind` and checks its intrinsic
/// invariants. Returns the list of problems (empty when valid).
std::vector<std::string> check_component_body(ComponentKind kind, const json &body);

/// Tags declared in a component body (empty when absent).
std::vector<std::string> component_tags(const json &body);

/// Latest-version snapshot of the type-level components, keyed by id.
struct ComponentRegistry
{
  std::map<std::string, DataTypeDescriptor> data_types;
  std::map<std::string, FunctionSpec>       functions;
  std::map<std::string, ViewSpec>           views;
  std::map<std::string, WebFormSpec>        forms;
  std::map<std::string, DaoPackageSpec>     daos;

  const DataTypeDescriptor *data_type(std::string_view id) const;
  const FunctionSpec       *function(std::string_view id) const;
  const ViewSpec           *view(std::string_view id) const;
  const WebFormSpec        *form(std::string_view id) const;
  const DaoPackageSpec     *dao(std::string_view id) const;

  /// Adds a component from its serialized body; throws ParseError.
  void add(ComponentKind kind, const json &body);
};

}  // namespace watchtower::model
