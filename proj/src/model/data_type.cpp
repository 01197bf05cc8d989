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

#include "watchtower/model/data_type.hpp"

#include "watchtower/common/error.hpp"
#include "watchtower/common/time.hpp"

#include <array>
#include <cmath>
#include <set>

namespace watchtower::model {
namespace {

constexpr std::array<std::pair<FieldKind, std::string_view>, 7> kFieldKinds{{
    {FieldKind::timestamp, "timestamp"},
    {FieldKind::number, "number"},
    {FieldKind::integer, "integer"},
    {FieldKind::text, "text"},
    {FieldKind::boolean, "boolean"},
    {FieldKind::reference, "reference"},
    {FieldKind::record_list, "record_list"},
}};

void check_fields(const std::vector<FieldSpec> &fields, const std::string &prefix,
                  std::vector<std::string> &issues)
{
  std::set<std::string> seen;
  for (auto const &field : fields)
  {
    if (field.name.empty())
    {
      issues.push_back(prefix + "field with empty name");
    }
    if (!seen.insert(field.name).second)
    {
      issues.push_back(prefix + "duplicate field name '" + field.name + "'");
    }
    if (!field.fields.empty())
    {
      if (field.kind != FieldKind::record_list)
      {
        issues.push_back(prefix + "field '" + field.name + "' has nested fields but is not a record_list");
      }
      check_fields(field.fields, prefix + field.name + ".", issues);
    }
  }
}

void validate_value(const FieldSpec &field, const json &value, const std::string &path,
                    std::vector<std::string> &issues);

void validate_records(const std::vector<FieldSpec> &schema, const json &records, const std::string &path,
                      std::vector<std::string> &issues)
{
  if (!records.is_array())
  {
    issues.push_back(path + ": expected a list of records");
    return;
  }
  for (std::size_t i = 0; i < records.size(); ++i)
  {
    auto const &record = records[i];
    auto        where  = path + "[" + std::to_string(i) + "]";
    if (!record.is_object())
    {
      issues.push_back(where + ": expected a record object");
      continue;
    }
    if (schema.empty())
    {
      continue;
    }
    for (auto const &field : schema)
    {
      auto it = record.find(field.name);
      if (it == record.end() || it->is_null())
      {
        if (!field.optional)
        {
          issues.push_back(where + "." + field.name + ": missing required field");
        }
        continue;
      }
      validate_value(field, *it, where + "." + field.name, issues);
    }
    for (auto it = record.begin(); it != record.end(); ++it)
    {
      bool known = false;
      for (auto const &field : schema)
      {
        known = known || field.name == it.key();
      }
      if (!known)
      {
        issues.push_back(where + "." + it.key() + ": field not in schema");
      }
    }
  }
}

void validate_value(const FieldSpec &field, const json &value, const std::string &path,
                    std::vector<std::string> &issues)
{
  switch (field.kind)
  {
  case FieldKind::timestamp:
    if (!value.is_string() || !parse_timestamp(value.get<std::string>()))
    {
      issues.push_back(path + ": expected ISO-8601 date or timestamp");
    }
    break;
  case FieldKind::number:
    if (!value.is_number() || !std::isfinite(value.get<double>()))
    {
      issues.push_back(path + ": expected finite number");
    }
    break;
  case FieldKind::integer:
    if (!value.is_number_integer())
    {
      issues.push_back(path + ": expected integer");
    }
    break;
  case FieldKind::text:
    if (!value.is_string())
    {
      issues.push_back(path + ": expected text");
    }
    break;
  case FieldKind::reference:
    if (!value.is_string() || value.get<std::string>().empty())
    {
      issues.push_back(path + ": expected non-empty reference");
    }
    break;
  case FieldKind::boolean:
    if (!value.is_boolean())
    {
      issues.push_back(path + ": expected boolean");
    }
    break;
  case FieldKind::record_list:
    validate_records(field.fields, value, path, issues);
    break;
  }
}

}  // namespace

std::string_view to_string(FieldKind kind)
{
  for (auto const &[k, name] : kFieldKinds)
  {
    if (k == kind)
    {
      return name;
    }
  }
  return "?";
}

std::optional<FieldKind> field_kind_from_string(std::string_view text)
{
  for (auto const &[k, name] : kFieldKinds)
  {
    if (name == text)
    {
      return k;
    }
  }
  return std::nullopt;
}

std::vector<std::string> check_descriptor(const DataTypeDescriptor &type)
{
  std::vector<std::string> issues;
  if (type.id.empty())
  {
    issues.emplace_back("data type id is empty");
  }
  if (type.schema.empty())
  {
    issues.emplace_back("schema must declare at least one field");
  }
  check_fields(type.schema, "", issues);
  return issues;
}

std::vector<std::string> validate_body(const DataTypeDescriptor &type, const json &body)
{
  std::vector<std::string> issues;
  validate_records(type.schema, body, "", issues);
  return issues;
}

json fields_to_json(const std::vector<FieldSpec> &fields)
{
  json out = json::array();
  for (auto const &field : fields)
  {
    json f{{"name", field.name}, {"kind", to_string(field.kind)}};
    if (field.optional)
    {
      f["optional"] = true;
    }
    if (!field.fields.empty())
    {
      f["fields"] = fields_to_json(field.fields);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<FieldSpec> parse_fields(const JsonCursor &doc)
{
  std::vector<FieldSpec> fields;
  for (std::size_t i = 0; i < doc.size(); ++i)
  {
    auto      item = doc.at(i);
    FieldSpec field;
    field.name      = item.at("name").str();
    auto kind_text  = item.at("kind");
    auto kind       = field_kind_from_string(kind_text.str());
    if (!kind)
    {
      kind_text.fail("unknown field kind '" + kind_text.str() + "'");
    }
    field.kind = *kind;
    if (auto opt = item.find("optional"))
    {
      field.optional = opt->boolean();
    }
    if (auto nested = item.find("fields"))
    {
      field.fields = parse_fields(*nested);
    }
    fields.push_back(std::move(field));
  }
  return fields;
}

json to_json(const DataTypeDescriptor &type)
{
  return json{{"id", type.id},
              {"name", type.name},
              {"schema", fields_to_json(type.schema)},
              {"description", type.description},
              {"tags", type.tags}};
}

DataTypeDescriptor parse_data_type(const JsonCursor &doc)
{
  DataTypeDescriptor type;
  type.id          = doc.at("id").str();
  type.name        = doc.str_or("name", type.id);
  type.schema      = parse_fields(doc.at("schema"));
  type.description = doc.str_or("description", "");
  if (auto tags = doc.find("tags"))
  {
    type.tags = tags->str_list();
  }
  return type;
}

}  // namespace watchtower::model
