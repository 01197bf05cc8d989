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

#include "watchtower/collection/forms.hpp"

#include "watchtower/collection/importers.hpp"
#include "watchtower/common/error.hpp"
#include "watchtower/model/data_type.hpp"

#include <algorithm>
#include <map>

namespace watchtower::collection {
namespace {

json manual_records(const model::WebFormSpec &spec, const model::WebFormInstance &form, const json &values,
                    std::vector<std::string> &issues)
{
  json records = values.is_array() ? values : json::array({values});

  model::DataTypeDescriptor layout;
  layout.id = spec.id;
  for (auto const &field : spec.layout)
  {
    layout.schema.push_back({field.name, field.kind, !field.required, {}});
  }
  auto found = model::validate_body(layout, records);
  issues.insert(issues.end(), found.begin(), found.end());
  if (!found.empty())
  {
    return json::array();
  }

  json mapped = json::array();
  for (auto const &record : records)
  {
    json out = json::object();
    for (auto const &[name, value] : record.items())
    {
      auto it = form.field_bindings.find(name);
      out[it == form.field_bindings.end() ? name : it->second] = value;
    }
    mapped.push_back(std::move(out));
  }
  return mapped;
}

json merge(const model::WebFormSpec &spec, const json &previous, const json &records)
{
  switch (spec.write)
  {
  case model::WriteMode::replace: return records;
  case model::WriteMode::append:
  {
    json out = previous;
    for (auto const &r : records)
    {
      out.push_back(r);
    }
    return out;
  }
  case model::WriteMode::upsert:
  {
    json out = previous;
    for (auto const &r : records)
    {
      auto key = r.find(spec.key_field);
      auto it  = key == r.end() ? out.end() : std::find_if(out.begin(), out.end(), [&](const json &old) {
        auto k = old.find(spec.key_field);
        return k != old.end() && *k == *key;
      });
      if (it == out.end())
      {
        out.push_back(r);
      }
      else
      {
        *it = r;
      }
    }
    return out;
  }
  }
  return records;
}

}  // namespace

std::vector<std::string> submit_form(const FormSubmission &submission, const model::VisualizationCatena &catena,
                                     const model::ComponentRegistry &registry, engine::PayloadStore &store)
{
  auto const *form = catena.form(submission.form);
  if (!form)
  {
    throw NotFound("unknown form instance '" + submission.form + "'");
  }
  auto const *spec = registry.form(form->spec);
  if (!spec)
  {
    throw NotFound("unknown form spec '" + form->spec + "'");
  }

  std::vector<std::string> issues;
  std::map<std::string, json> file_bodies;
  json                        records;
  if (spec->mode == model::FormMode::file_import)
  {
    if (!submission.file_content)
    {
      throw InvalidData({"file import form requires file content"});
    }
    file_bodies = parse_document(spec->parser, *submission.file_content);
  }
  else
  {
    if (submission.file_content)
    {
      throw InvalidData({"manual entry form does not accept a file"});
    }
    records = manual_records(*spec, *form, submission.values, issues);
    if (!issues.empty())
    {
      throw InvalidData(std::move(issues));
    }
  }

  // Build and check every new body before writing any of them.
  std::map<std::string, engine::Payload> pending;
  for (auto const &entry_id : form->entries)
  {
    auto const *entry = catena.entry(entry_id);
    if (!entry)
    {
      throw NotFound("form " + form->id + " binds unknown entry '" + entry_id + "'");
    }
    json incoming;
    if (spec->mode == model::FormMode::file_import)
    {
      auto it = file_bodies.find(entry->data_type);
      if (it == file_bodies.end())
      {
        issues.push_back(entry_id + ": " + spec->parser + " does not provide " + entry->data_type);
        continue;
      }
      incoming = it->second;
    }
    else
    {
      incoming = records;
    }
    auto previous = store.latest(entry_id);
    auto body     = merge(*spec, previous ? previous->body : json::array(), incoming);
    for (auto const &issue : engine::check_payload_body(registry, entry->data_type, body))
    {
      issues.push_back(entry_id + ": " + issue);
    }
    pending[entry_id] = engine::Payload{entry->data_type, 0, submission.submitted_at, std::move(body)};
  }
  if (!issues.empty())
  {
    throw InvalidData(std::move(issues));
  }

  std::vector<std::string> changed;
  for (auto &[entry_id, payload] : pending)
  {
    store.put(entry_id, std::move(payload));
    changed.push_back(entry_id);
  }
  return changed;
}

FormSubmission submission_from_json(const std::string &form, const json &doc)
{
  JsonCursor     cur(doc);
  FormSubmission submission;
  submission.form = form;
  cur.expect_object();
  if (auto file = cur.find("file"))
  {
    submission.file_content = file->str();
  }
  else
  {
    submission.values = cur.at("values").value();
  }
  return submission;
}

}  // namespace watchtower::collection
