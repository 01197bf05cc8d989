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

#include "watchtower/model/components.hpp"

#include "watchtower/common/error.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace watchtower::model {
namespace {

template <typename Enum, std::size_t N>
std::string_view enum_name(const std::array<std::pair<Enum, std::string_view>, N> &table, Enum value)
{
  for (auto const &[e, name] : table)
  {
    if (e == value)
    {
      return name;
    }
  }
  return "?";
}

template <typename Enum, std::size_t N>
std::optional<Enum> enum_value(const std::array<std::pair<Enum, std::string_view>, N> &table,
                               std::string_view text)
{
  for (auto const &[e, name] : table)
  {
    if (name == text)
    {
      return e;
    }
  }
  return std::nullopt;
}

constexpr std::array<std::pair<RenderKind, std::string_view>, 5> kRenderKinds{{
    {RenderKind::bar_chart_drilldown, "bar-chart-drilldown"},
    {RenderKind::line_chart, "line-chart"},
    {RenderKind::milestone_trend_chart, "milestone-trend-chart"},
    {RenderKind::table, "table"},
    {RenderKind::traffic_light, "traffic-light"},
}};

constexpr std::array<std::pair<ComponentKind, std::string_view>, 5> kComponentKinds{{
    {ComponentKind::data_type, "data-type"},
    {ComponentKind::function, "function"},
    {ComponentKind::view, "view"},
    {ComponentKind::web_form, "web-form"},
    {ComponentKind::dao_package, "dao-package"},
}};

constexpr std::array<std::pair<ParamKind, std::string_view>, 4> kParamKinds{{
    {ParamKind::number, "number"},
    {ParamKind::integer, "integer"},
    {ParamKind::text, "text"},
    {ParamKind::boolean, "boolean"},
}};

constexpr std::array<std::pair<Arity, std::string_view>, 2> kArities{{
    {Arity::one, "one"},
    {Arity::many, "many"},
}};

constexpr std::array<std::pair<FormMode, std::string_view>, 2> kFormModes{{
    {FormMode::manual_entry, "manual-entry"},
    {FormMode::file_import, "file-import"},
}};

constexpr std::array<std::pair<WriteMode, std::string_view>, 3> kWriteModes{{
    {WriteMode::append, "append"},
    {WriteMode::replace, "replace"},
    {WriteMode::upsert, "upsert"},
}};

constexpr std::array<std::pair<AccessMode, std::string_view>, 2> kAccessModes{{
    {AccessMode::pull, "pull"},
    {AccessMode::push, "push"},
}};

template <typename Enum, std::size_t N>
Enum parse_enum(const std::array<std::pair<Enum, std::string_view>, N> &table, const JsonCursor &cur)
{
  auto text  = cur.str();
  auto value = enum_value(table, text);
  if (!value)
  {
    cur.fail("unknown value '" + text + "'");
  }
  return *value;
}

json ports_to_json(const std::vector<PortSpec> &ports)
{
  json out = json::array();
  for (auto const &p : ports)
  {
    out.push_back({{"name", p.name}, {"type", p.data_type}, {"arity", enum_name(kArities, p.arity)}});
  }
  return out;
}

std::vector<PortSpec> parse_ports(const JsonCursor &doc)
{
  std::vector<PortSpec> ports;
  for (std::size_t i = 0; i < doc.size(); ++i)
  {
    auto     item = doc.at(i);
    PortSpec port;
    port.name      = item.at("name").str();
    port.data_type = item.at("type").str();
    if (auto arity = item.find("arity"))
    {
      port.arity = parse_enum(kArities, *arity);
    }
    ports.push_back(std::move(port));
  }
  return ports;
}

json params_to_json(const std::vector<ParamSpec> &params)
{
  json out = json::array();
  for (auto const &p : params)
  {
    json j{{"name", p.name}, {"kind", enum_name(kParamKinds, p.kind)}};
    if (p.default_value)
    {
      j["default"] = *p.default_value;
    }
    if (p.constraint.min)
    {
      j["min"] = *p.constraint.min;
    }
    if (p.constraint.max)
    {
      j["max"] = *p.constraint.max;
    }
    if (!p.constraint.one_of.empty())
    {
      j["one_of"] = p.constraint.one_of;
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<ParamSpec> parse_params(const JsonCursor &doc)
{
  std::vector<ParamSpec> params;
  for (std::size_t i = 0; i < doc.size(); ++i)
  {
    auto      item = doc.at(i);
    ParamSpec param;
    param.name = item.at("name").str();
    param.kind = parse_enum(kParamKinds, item.at("kind"));
    if (item.has("default"))
    {
      param.default_value = item.value().at("default");
    }
    if (auto min = item.find("min"))
    {
      param.constraint.min = min->number();
    }
    if (auto max = item.find("max"))
    {
      param.constraint.max = max->number();
    }
    if (auto one_of = item.find("one_of"))
    {
      param.constraint.one_of = one_of->str_list();
    }
    params.push_back(std::move(param));
  }
  return params;
}

std::vector<std::string> optional_list(const JsonCursor &doc, std::string_view key)
{
  auto member = doc.find(key);
  return member ? member->str_list() : std::vector<std::string>{};
}

void check_params(const std::vector<ParamSpec> &params, std::vector<std::string> &issues)
{
  std::set<std::string> names;
  for (auto const &p : params)
  {
    if (!names.insert(p.name).second)
    {
      issues.push_back("duplicate parameter '" + p.name + "'");
    }
    if (p.default_value)
    {
      if (auto problem = check_param_value(p, *p.default_value))
      {
        issues.push_back("default of parameter '" + p.name + "' violates its constraint: " + *problem);
      }
    }
  }
}

void check_unique_ports(const std::vector<PortSpec> &a, const std::vector<PortSpec> &b,
                        std::vector<std::string> &issues)
{
  std::set<std::string> names;
  for (auto const *ports : {&a, &b})
  {
    for (auto const &p : *ports)
    {
      if (!names.insert(p.name).second)
      {
        issues.push_back("duplicate port name '" + p.name + "'");
      }
      if (p.data_type.empty())
      {
        issues.push_back("port '" + p.name + "' has no data type");
      }
    }
  }
}

const PortSpec *find_port(const std::vector<PortSpec> &ports, std::string_view name)
{
  auto it = std::find_if(ports.begin(), ports.end(), [&](auto const &p) { return p.name == name; });
  return it == ports.end() ? nullptr : &*it;
}

const ParamSpec *find_param(const std::vector<ParamSpec> &params, std::string_view name)
{
  auto it = std::find_if(params.begin(), params.end(), [&](auto const &p) { return p.name == name; });
  return it == params.end() ? nullptr : &*it;
}

template <typename Map>
auto *lookup(const Map &map, std::string_view id)
{
  auto it = map.find(std::string(id));
  return it == map.end() ? nullptr : &it->second;
}

}  // namespace

std::optional<std::string> check_param_value(const ParamSpec &spec, const json &value)
{
  switch (spec.kind)
  {
  case ParamKind::number:
    if (!value.is_number())
    {
      return "expected number";
    }
    break;
  case ParamKind::integer:
    if (!value.is_number_integer())
    {
      return "expected integer";
    }
    break;
  case ParamKind::text:
    if (!value.is_string())
    {
      return "expected text";
    }
    break;
  case ParamKind::boolean:
    if (!value.is_boolean())
    {
      return "expected boolean";
    }
    break;
  }
  if (value.is_number())
  {
    double v = value.get<double>();
    if (spec.constraint.min && v < *spec.constraint.min)
    {
      return spec.name + " must be >= " + json(*spec.constraint.min).dump();
    }
    if (spec.constraint.max && v > *spec.constraint.max)
    {
      return spec.name + " must be <= " + json(*spec.constraint.max).dump();
    }
  }
  if (!spec.constraint.one_of.empty() && value.is_string())
  {
    auto const &allowed = spec.constraint.one_of;
    if (std::find(allowed.begin(), allowed.end(), value.get<std::string>()) == allowed.end())
    {
      return spec.name + " must be one of " + json(allowed).dump();
    }
  }
  return std::nullopt;
}

const PortSpec *FunctionSpec::input(std::string_view port) const
{
  return find_port(inputs, port);
}

const PortSpec *FunctionSpec::output(std::string_view port) const
{
  return find_port(outputs, port);
}

const ParamSpec *FunctionSpec::param(std::string_view name) const
{
  return find_param(params, name);
}

const PortSpec *ViewSpec::input(std::string_view port) const
{
  return find_port(inputs, port);
}

const ParamSpec *ViewSpec::param(std::string_view name) const
{
  return find_param(params, name);
}

const ChildSlot *ViewSpec::slot(std::string_view name) const
{
  auto it = std::find_if(slots.begin(), slots.end(), [&](auto const &s) { return s.name == name; });
  return it == slots.end() ? nullptr : &*it;
}

const FormField *WebFormSpec::field(std::string_view name) const
{
  auto it = std::find_if(layout.begin(), layout.end(), [&](auto const &f) { return f.name == name; });
  return it == layout.end() ? nullptr : &*it;
}

std::string_view to_string(RenderKind kind)
{
  return enum_name(kRenderKinds, kind);
}

std::optional<RenderKind> render_kind_from_string(std::string_view text)
{
  return enum_value(kRenderKinds, text);
}

std::string_view to_string(ComponentKind kind)
{
  return enum_name(kComponentKinds, kind);
}

std::optional<ComponentKind> component_kind_from_string(std::string_view text)
{
  return enum_value(kComponentKinds, text);
}

std::vector<ComponentKind> all_component_kinds()
{
  return {ComponentKind::data_type, ComponentKind::function, ComponentKind::view, ComponentKind::web_form,
          ComponentKind::dao_package};
}

json to_json(const FunctionSpec &spec)
{
  return json{{"id", spec.id},
              {"name", spec.name},
              {"inputs", ports_to_json(spec.inputs)},
              {"outputs", ports_to_json(spec.outputs)},
              {"params", params_to_json(spec.params)},
              {"implementation", spec.implementation},
              {"tags", spec.tags},
              {"description", spec.description}};
}

json to_json(const ViewSpec &spec)
{
  json slots = json::array();
  for (auto const &s : spec.slots)
  {
    slots.push_back({{"name", s.name}, {"accepts", s.accepts}});
  }
  return json{{"id", spec.id},
              {"name", spec.name},
              {"inputs", ports_to_json(spec.inputs)},
              {"params", params_to_json(spec.params)},
              {"render", to_string(spec.render)},
              {"slots", std::move(slots)},
              {"tags", spec.tags},
              {"description", spec.description}};
}

json to_json(const WebFormSpec &spec)
{
  json layout = json::array();
  for (auto const &f : spec.layout)
  {
    layout.push_back({{"name", f.name}, {"kind", to_string(f.kind)}, {"required", f.required}});
  }
  json out{{"id", spec.id},
           {"name", spec.name},
           {"targets", spec.targets},
           {"mode", enum_name(kFormModes, spec.mode)},
           {"layout", std::move(layout)},
           {"parser", spec.parser},
           {"write", enum_name(kWriteModes, spec.write)},
           {"tags", spec.tags},
           {"description", spec.description}};
  if (!spec.key_field.empty())
  {
    out["key_field"] = spec.key_field;
  }
  return out;
}

json to_json(const DaoPackageSpec &spec)
{
  return json{{"id", spec.id},
              {"name", spec.name},
              {"supported_types", spec.supported_types},
              {"connection", params_to_json(spec.connection)},
              {"access", enum_name(kAccessModes, spec.access)},
              {"tags", spec.tags},
              {"description", spec.description}};
}

FunctionSpec parse_function_spec(const JsonCursor &doc)
{
  FunctionSpec spec;
  spec.id             = doc.at("id").str();
  spec.name           = doc.str_or("name", spec.id);
  spec.inputs         = parse_ports(doc.at("inputs"));
  spec.outputs        = parse_ports(doc.at("outputs"));
  spec.params         = doc.has("params") ? parse_params(doc.at("params")) : std::vector<ParamSpec>{};
  spec.implementation = doc.at("implementation").str();
  spec.tags           = optional_list(doc, "tags");
  spec.description    = doc.str_or("description", "");
  return spec;
}

ViewSpec parse_view_spec(const JsonCursor &doc)
{
  ViewSpec spec;
  spec.id     = doc.at("id").str();
  spec.name   = doc.str_or("name", spec.id);
  spec.inputs = parse_ports(doc.at("inputs"));
  spec.params = doc.has("params") ? parse_params(doc.at("params")) : std::vector<ParamSpec>{};
  auto render = doc.at("render");
  auto kind   = render_kind_from_string(render.str());
  if (!kind)
  {
    render.fail("unknown render kind '" + render.str() + "'");
  }
  spec.render = *kind;
  if (auto slots = doc.find("slots"))
  {
    for (std::size_t i = 0; i < slots->size(); ++i)
    {
      auto item = slots->at(i);
      spec.slots.push_back({item.at("name").str(), optional_list(item, "accepts")});
    }
  }
  spec.tags        = optional_list(doc, "tags");
  spec.description = doc.str_or("description", "");
  return spec;
}

WebFormSpec parse_web_form_spec(const JsonCursor &doc)
{
  WebFormSpec spec;
  spec.id      = doc.at("id").str();
  spec.name    = doc.str_or("name", spec.id);
  spec.targets = doc.at("targets").str_list();
  spec.mode    = parse_enum(kFormModes, doc.at("mode"));
  if (auto layout = doc.find("layout"))
  {
    for (std::size_t i = 0; i < layout->size(); ++i)
    {
      auto      item = layout->at(i);
      FormField field;
      field.name      = item.at("name").str();
      auto kind_cur   = item.at("kind");
      auto kind       = field_kind_from_string(kind_cur.str());
      if (!kind)
      {
        kind_cur.fail("unknown field kind '" + kind_cur.str() + "'");
      }
      field.kind = *kind;
      if (auto req = item.find("required"))
      {
        field.required = req->boolean();
      }
      spec.layout.push_back(std::move(field));
    }
  }
  spec.parser = doc.str_or("parser", "");
  if (auto write = doc.find("write"))
  {
    spec.write = parse_enum(kWriteModes, *write);
  }
  spec.key_field   = doc.str_or("key_field", "");
  spec.tags        = optional_list(doc, "tags");
  spec.description = doc.str_or("description", "");
  return spec;
}

DaoPackageSpec parse_dao_package_spec(const JsonCursor &doc)
{
  DaoPackageSpec spec;
  spec.id              = doc.at("id").str();
  spec.name            = doc.str_or("name", spec.id);
  spec.supported_types = doc.at("supported_types").str_list();
  spec.connection = doc.has("connection") ? parse_params(doc.at("connection")) : std::vector<ParamSpec>{};
  if (auto access = doc.find("access"))
  {
    spec.access = parse_enum(kAccessModes, *access);
  }
  spec.tags        = optional_list(doc, "tags");
  spec.description = doc.str_or("description", "");
  return spec;
}

std::vector<std::string> check_component_body(ComponentKind kind, const json &body)
{
  std::vector<std::string> issues;
  try
  {
    JsonCursor doc(body);
    switch (kind)
    {
    case ComponentKind::data_type:
      issues = check_descriptor(parse_data_type(doc));
      break;
    case ComponentKind::function:
    {
      auto spec = parse_function_spec(doc);
      check_unique_ports(spec.inputs, spec.outputs, issues);
      check_params(spec.params, issues);
      if (spec.implementation.empty())
      {
        issues.emplace_back("implementation key is empty");
      }
      break;
    }
    case ComponentKind::view:
    {
      auto spec = parse_view_spec(doc);
      check_unique_ports(spec.inputs, {}, issues);
      check_params(spec.params, issues);
      std::set<std::string> slots;
      for (auto const &s : spec.slots)
      {
        if (!slots.insert(s.name).second)
        {
          issues.push_back("duplicate child slot '" + s.name + "'");
        }
      }
      break;
    }
    case ComponentKind::web_form:
    {
      auto spec = parse_web_form_spec(doc);
      if (spec.targets.empty())
      {
        issues.emplace_back("web form declares no target data types");
      }
      if (spec.mode == FormMode::manual_entry && spec.layout.empty())
      {
        issues.emplace_back("manual-entry form needs a field layout");
      }
      if (spec.mode == FormMode::file_import && spec.parser.empty())
      {
        issues.emplace_back("file-import form needs a parser key");
      }
      if (spec.write == WriteMode::upsert && spec.key_field.empty())
      {
        issues.emplace_back("upsert form needs a key_field");
      }
      break;
    }
    case ComponentKind::dao_package:
    {
      auto spec = parse_dao_package_spec(doc);
      if (spec.supported_types.empty())
      {
        issues.emplace_back("dao package supports no data types");
      }
      check_params(spec.connection, issues);
      break;
    }
    }
  }
  catch (const ParseError &e)
  {
    issues.emplace_back(e.what());
  }
  return issues;
}

std::vector<std::string> component_tags(const json &body)
{
  std::vector<std::string> tags;
  auto                     it = body.find("tags");
  if (it != body.end() && it->is_array())
  {
    for (auto const &t : *it)
    {
      if (t.is_string())
      {
        tags.push_back(t.get<std::string>());
      }
    }
  }
  return tags;
}

const DataTypeDescriptor *ComponentRegistry::data_type(std::string_view id) const
{
  return lookup(data_types, id);
}

const FunctionSpec *ComponentRegistry::function(std::string_view id) const
{
  return lookup(functions, id);
}

const ViewSpec *ComponentRegistry::view(std::string_view id) const
{
  return lookup(views, id);
}

const WebFormSpec *ComponentRegistry::form(std::string_view id) const
{
  return lookup(forms, id);
}

const DaoPackageSpec *ComponentRegistry::dao(std::string_view id) const
{
  return lookup(daos, id);
}

void ComponentRegistry::add(ComponentKind kind, const json &body)
{
  JsonCursor doc(body);
  switch (kind)
  {
  case ComponentKind::data_type:
  {
    auto spec = parse_data_type(doc);
    data_types.insert_or_assign(spec.id, std::move(spec));
    break;
  }
  case ComponentKind::function:
  {
    auto spec = parse_function_spec(doc);
    functions.insert_or_assign(spec.id, std::move(spec));
    break;
  }
  case ComponentKind::view:
  {
    auto spec = parse_view_spec(doc);
    views.insert_or_assign(spec.id, std::move(spec));
    break;
  }
  case ComponentKind::web_form:
  {
    auto spec = parse_web_form_spec(doc);
    forms.insert_or_assign(spec.id, std::move(spec));
    break;
  }
  case ComponentKind::dao_package:
  {
    auto spec = parse_dao_package_spec(doc);
    daos.insert_or_assign(spec.id, std::move(spec));
    break;
  }
  }
}

}  // namespace watchtower::model
