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

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower::engine {

/// Versioned, typed unit of measurement data stored against a data entry.
struct Payload
{
  std::string   data_type;
  std::uint64_t version = 0;
  Timestamp     produced_at{};
  json          body = json::array();

  bool operator==(const Payload &) const = default;
};

json    to_json(const Payload &payload);
Payload payload_from_json(const json &doc);

/// Schema and semantic issues of `body` as an instance of `type_id`.
std::vector<std::string> check_payload_body(const model::ComponentRegistry &registry, std::string_view type_id,
                                            const json &body);

/// Append-only versioned payload history keyed by data entry id.
class PayloadStore
{
public:
  virtual ~PayloadStore() = default;

  /// Stores `payload` as the next version of `entry` (the supplied version is
  /// ignored) and returns the version assigned.
  virtual std::uint64_t put(const std::string &entry, Payload payload) = 0;

  /// Throws NotFound for an unknown entry or version.
  virtual Payload get(const std::string &entry, std::uint64_t version) const = 0;

  virtual std::optional<Payload> latest(const std::string &entry) const = 0;

  /// 0 when the entry has no payload.
  virtual std::uint64_t latest_version(const std::string &entry) const = 0;

  /// Entry ids with at least one payload, sorted.
  virtual std::vector<std::string> entries() const = 0;
};

class MemoryPayloadStore final : public PayloadStore
{
public:
  using History = std::map<std::string, std::vector<Payload>>;

  MemoryPayloadStore() = default;
  explicit MemoryPayloadStore(History history);

  std::uint64_t            put(const std::string &entry, Payload payload) override;
  Payload                  get(const std::string &entry, std::uint64_t version) const override;
  std::optional<Payload>   latest(const std::string &entry) const override;
  std::uint64_t            latest_version(const std::string &entry) const override;
  std::vector<std::string> entries() const override;

  History history() const;

private:
  mutable std::mutex mutex_;
  History            history_;
};

/// View of another store restricted to keys `<scope>/<entry>`, so catenas
/// sharing one store keep separate histories.
class ScopedPayloadStore final : public PayloadStore
{
public:
  ScopedPayloadStore(PayloadStore &base, std::string scope);

  std::uint64_t            put(const std::string &entry, Payload payload) override;
  Payload                  get(const std::string &entry, std::uint64_t version) const override;
  std::optional<Payload>   latest(const std::string &entry) const override;
  std::uint64_t            latest_version(const std::string &entry) const override;
  std::vector<std::string> entries() const override;

private:
  std::string key(const std::string &entry) const { return prefix_ + entry; }

  PayloadStore &base_;
  std::string   prefix_;
};

}  // namespace watchtower::engine
