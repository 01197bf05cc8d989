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
#include "watchtower/model/components.hpp"

#include <string>
#include <string_view>

namespace watchtower::model {

/// Catena spec document (see docs/format.md). Derived entries are not listed
/// under `data_entries`; they are implied by each function's `outputs`.
json        catena_to_json(const VisualizationCatena &catena);
std::string serialize_catena(const VisualizationCatena &catena);

/// Throws ParseError with a JSON pointer location for schema violations, and
/// a ParseError naming every unregistered spec id when references dangle.
VisualizationCatena parse_catena(const json &document, const ComponentRegistry &registry);
VisualizationCatena parse_catena_text(std::string_view text, const ComponentRegistry &registry);

/// Equality up to the order of entries and instances.
bool structurally_equal(const VisualizationCatena &a, const VisualizationCatena &b);

/// Parses JSON text, mapping syntax errors to ParseError("byte N").
json parse_json_text(std::string_view text);

}  // namespace watchtower::model
