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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace watchtower::store {

struct ComponentRecord
{
  model::ComponentKind     kind = model::ComponentKind::data_type;
  std::string              id;
  std::uint64_t            version = 0;
  json                     body;
  Timestamp                registered_at{};
  std::vector<std::string> tags;

  bool operator==(const ComponentRecord &) const = default;
};

json            to_json(const ComponentRecord &record);
ComponentRecord component_record_from_json(const json &doc);

struct DeviationReport
{
  std::string              indicator;
  std::optional<Timestamp> first_non_green;
  std::string              final_status;
  std::string              note;

  bool operator==(const DeviationReport &) const = default;
};

struct ExperiencePackage
{
  std::string                          project;
  std::string                          catena;
  std::map<std::string, std::uint64_t> components;  // component id -> instances using it
  std::vector<DeviationReport>         deviations;
  std::string                          lessons;

  bool operator==(const ExperiencePackage &) const = default;
};

json              to_json(const ExperiencePackage &package);
ExperiencePackage experience_from_json(const json &doc);

/// Payload history under `<root>/payloads/<entry>/<version>`, where an entry
/// key is an entry id, optionally qualified as `<catena>/<entry>`.
class FilePayloadStore final : public engine::PayloadStore
{
public:
  explicit FilePayloadStore(std::filesystem::path root);

  std::uint64_t            put(const std::string &entry, engine::Payload payload) override;
  engine::Payload          get(const std::string &entry, std::uint64_t version) const override;
  std::optional<engine::Payload> latest(const std::string &entry) const override;
  std::uint64_t            latest_version(const std::string &entry) const override;
  std::vector<std::string> entries() const override;

private:
  std::filesystem::path                root_;
  mutable std::shared_mutex            mutex_;
  std::map<std::string, std::uint64_t> latest_;
};

/// File-backed component repository, catena store, payload history and
/// experience base under one root directory. Writes are serialized; reads
/// only see committed files.
class Repository
{
public:
  explicit Repository(std::filesystem::path root, Clock clock = system_now);

  const std::filesystem::path &root() const noexcept { return root_; }

  /// Validates `body` for `kind`; returns the stored record, which is the
  /// existing latest one when the body is unchanged. Throws InvalidData.
  ComponentRecord register_component(model::ComponentKind kind, const json &body);

  /// Latest version when `version` is 0. Throws NotFound.
  ComponentRecord component(model::ComponentKind kind, const std::string &id, std::uint64_t version = 0) const;

  std::vector<ComponentRecord> component_history(model::ComponentKind kind, const std::string &id) const;

  /// Latest versions whose tags include every tag of `tags`, sorted by id.
  std::vector<ComponentRecord> lookup_components(model::ComponentKind kind,
                                                 const std::vector<std::string> &tags = {}) const;

  /// Latest versions of every registered component.
  model::ComponentRegistry registry() const;

  /// Stores the catena document; replaces any previous one with the same id.
  void                       put_catena(const model::VisualizationCatena &catena);
  model::VisualizationCatena get_catena(const std::string &id) const;
  json                       catena_document(const std::string &id) const;
  bool                       has_catena(const std::string &id) const;
  bool                       delete_catena(const std::string &id);
  std::vector<std::string>   catena_ids() const;

  engine::PayloadStore &payloads() noexcept { return *payloads_; }

  /// Persists the package as `experience/<project>/<n>` and returns that
  /// relative id. Throws NotFound for an unknown catena or component.
  std::string                    record_experience(const ExperiencePackage &package);
  std::vector<ExperiencePackage> experience(const std::string &project) const;
  std::vector<std::string>       experience_projects() const;

  /// Number of experience packages referencing each component id.
  std::map<std::string, std::uint64_t> reuse_counts() const;

private:
  std::filesystem::path component_dir(model::ComponentKind kind, const std::string &id) const;
  std::uint64_t         latest_component_version(model::ComponentKind kind, const std::string &id) const;
  model::ComponentRegistry registry_unlocked() const;

  std::filesystem::path             root_;
  Clock                             clock_;
  mutable std::shared_mutex         mutex_;
  std::unique_ptr<FilePayloadStore> payloads_;
};

/// Registers every built-in component; returns how many records were new.
std::size_t seed_builtin(Repository &repository);

/// Atomically replaces `path` with `text` (write to a sibling, then rename).
void        write_file_atomic(const std::filesystem::path &path, const std::string &text);
std::string read_file(const std::filesystem::path &path);

}  // namespace watchtower::store
