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

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower {

using json = nlohmann::json;

/// Read-only view over a JSON value that remembers where it came from, so
/// every schema violation can be reported with a JSON pointer.
class JsonCursor
{
public:
  JsonCursor(const json &value, std::string path = "")
    : value_(&value)
    , path_(std::move(path))
  {}

  const json        &value() const noexcept { return *value_; }
  const std::string &path() const noexcept { return path_; }
  std::string        where() const { return path_.empty() ? "/" : path_; }

  bool has(std::string_view key) const;
  /// Required member; throws ParseError at `path/key` when missing.
  JsonCursor                at(std::string_view key) const;
  std::optional<JsonCursor> find(std::string_view key) const;
  JsonCursor                at(std::size_t index) const;

  void expect_object() const;
  void expect_array() const;
  std::size_t size() const;

  std::string              str() const;
  double                   number() const;
  std::int64_t             integer() const;
  bool                     boolean() const;
  std::vector<std::string> str_list() const;

  std::string str_or(std::string_view key, std::string fallback) const;

  [[noreturn]] void fail(const std::string &message) const;

private:
  const json *value_;
  std::string path_;
};

/// Canonical byte form used for equality checks and on-disk records.
std::string canonical_dump(const json &value);

}  // namespace watchtower
