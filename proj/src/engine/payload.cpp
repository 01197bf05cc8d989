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

#include "watchtower/engine/payload.hpp"

#include "watchtower/common/error.hpp"
#include "watchtower/model/data_type.hpp"
#include "watchtower/techniques/types.hpp"

namespace watchtower::engine {

json to_json(const Payload &payload)
{
  return json{{"data_type", payload.data_type},
              {"version", payload.version},
              {"produced_at", format_timestamp(payload.produced_at)},
              {"body", payload.body}};
}

Payload payload_from_json(const json &doc)
{
  JsonCursor cur(doc);
  Payload    payload;
  payload.data_type = cur.at("data_type").str();
  auto version      = cur.at("version");
  if (version.integer() < 1)
  {
    version.fail("version must be at least 1");
  }
  payload.version  = static_cast<std::uint64_t>(version.integer());
  auto produced    = cur.at("produced_at");
  auto ts          = parse_timestamp(produced.str());
  if (!ts)
  {
    produced.fail("invalid timestamp '" + produced.str() + "'");
  }
  payload.produced_at = *ts;
  payload.body        = cur.at("body").value();
  return payload;
}

std::vector<std::string> check_payload_body(const model::ComponentRegistry &registry, std::string_view type_id,
                                            const json &body)
{
  auto const *type = registry.data_type(type_id);
  if (!type)
  {
    return {"unknown data type '" + std::string(type_id) + "'"};
  }
  auto issues = model::validate_body(*type, body);
  if (issues.empty())
  {
    issues = techniques::check_semantics(type_id, body);
  }
  return issues;
}

MemoryPayloadStore::MemoryPayloadStore(History history)
  : history_(std::move(history))
{}

std::uint64_t MemoryPayloadStore::put(const std::string &entry, Payload payload)
{
  std::lock_guard lock(mutex_);
  auto           &versions = history_[entry];
  payload.version          = versions.size() + 1;
  versions.push_back(std::move(payload));
  return versions.back().version;
}

Payload MemoryPayloadStore::get(const std::string &entry, std::uint64_t version) const
{
  std::lock_guard lock(mutex_);
  auto            it = history_.find(entry);
  if (it == history_.end() || version == 0 || version > it->second.size())
  {
    throw NotFound("no payload " + entry + "@" + std::to_string(version));
  }
  return it->second[version - 1];
}

std::optional<Payload> MemoryPayloadStore::latest(const std::string &entry) const
{
  std::lock_guard lock(mutex_);
  auto            it = history_.find(entry);
  if (it == history_.end() || it->second.empty())
  {
    return std::nullopt;
  }
  return it->second.back();
}

std::uint64_t MemoryPayloadStore::latest_version(const std::string &entry) const
{
  std::lock_guard lock(mutex_);
  auto            it = history_.find(entry);
  return it == history_.end() ? 0 : it->second.size();
}

std::vector<std::string> MemoryPayloadStore::entries() const
{
  std::lock_guard          lock(mutex_);
  std::vector<std::string> out;
  for (auto const &[id, versions] : history_)
  {
    if (!versions.empty())
    {
      out.push_back(id);
    }
  }
  return out;
}

MemoryPayloadStore::History MemoryPayloadStore::history() const
{
  std::lock_guard lock(mutex_);
  return history_;
}

ScopedPayloadStore::ScopedPayloadStore(PayloadStore &base, std::string scope)
  : base_(base)
  , prefix_(std::move(scope) + "/")
{}

std::uint64_t ScopedPayloadStore::put(const std::string &entry, Payload payload)
{
  return base_.put(key(entry), std::move(payload));
}

Payload ScopedPayloadStore::get(const std::string &entry, std::uint64_t version) const
{
  return base_.get(key(entry), version);
}

std::optional<Payload> ScopedPayloadStore::latest(const std::string &entry) const
{
  return base_.latest(key(entry));
}

std::uint64_t ScopedPayloadStore::latest_version(const std::string &entry) const
{
  return base_.latest_version(key(entry));
}

std::vector<std::string> ScopedPayloadStore::entries() const
{
  std::vector<std::string> out;
  for (auto const &id : base_.entries())
  {
    if (id.starts_with(prefix_))
    {
      out.push_back(id.substr(prefix_.size()));
    }
  }
  return out;
}

}  // namespace watchtower::engine
