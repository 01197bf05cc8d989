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
#include "watchtower/engine/payload.hpp"
#include "watchtower/model/catena.hpp"
#include "watchtower/model/components.hpp"

#include <optional>
#include <string>
#include <vector>

namespace watchtower::collection {

struct FormSubmission
{
  std::string form;  // web form instance id
  std::string submitted_by;
  Timestamp   submitted_at{};
  /// Manual entry: one record object or an array of records, keyed by form
  /// field names.
  json values = json::array();
  /// File import: the uploaded document.
  std::optional<std::string> file_content;
};

/// Writes the submission into every entry bound to the form instance and
/// returns the changed entry ids, sorted. All-or-nothing: throws InvalidData
/// (or NotFound for an unknown form) before any entry is written.
std::vector<std::string> submit_form(const FormSubmission &submission, const model::VisualizationCatena &catena,
                                     const model::ComponentRegistry &registry, engine::PayloadStore &store);

/// Parses a submission document: `{"values": ...}` or `{"file": "..."}`.
FormSubmission submission_from_json(const std::string &form, const json &doc);

}  // namespace watchtower::collection
