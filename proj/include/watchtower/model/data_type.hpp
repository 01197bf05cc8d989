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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower::model {

enum class FieldKind
{
  timestamp,
  number,
  integer,
  text,
  boolean,
  reference,
  record_list,
};

std::string_view          to_string(FieldKind kind);
std::optional<FieldKind>  field_kind_from_string(std::string_view text);

struct FieldSpec
{
  std::string name;
  FieldKind   kind     = FieldKind::text;
  bool        optional = false;
  // Nested record schema, only meaningful for record_list fields. Empty means
  // "any objects".
  std::vector<FieldSpec> fields;

  bool operator==(const FieldSpec &) const = default;
};

/// Type-level description of the records flowing through a catena. A payload
/// body for this type is a JSON array of objects, one per record.
struct DataTypeDescriptor
{
  std::string              id;
  std::string              name;
  std::vector<FieldSpec>   schema;
  std::string              description;
  std::vector<std::string> tags;

  bool operator==(const DataTypeDescriptor &) const = default;
};

/// Intrinsic invariants (non-empty schema, unique field names).
std::vector<std::string> check_descriptor(const DataTypeDescriptor &type);

/// Structural conformance of `body` to the schema. Issues carry a path such
/// as `[3].hours`.
std::vector<std::string> validate_body(const DataTypeDescriptor &type, const json &body);

json               to_json(const DataTypeDescriptor &type);
DataTypeDescriptor parse_data_type(const JsonCursor &doc);

json                   fields_to_json(const std::vector<FieldSpec> &fields);
std::vector<FieldSpec> parse_fields(const JsonCursor &doc);

}  // namespace watchtower::model
