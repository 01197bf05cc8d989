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

#include "watchtower/common/json.hpp"

#include "watchtower/common/error.hpp"

namespace watchtower {
namespace {

const char *kind_name(const json &value)
{
  return value.type_name();
}

}  // namespace

bool JsonCursor::has(std::string_view key) const
{
  return value_->is_object() && value_->contains(key);
}

JsonCursor JsonCursor::at(std::string_view key) const
{
  expect_object();
  auto it = value_->find(key);
  if (it == value_->end())
  {
    throw ParseError(path_ + "/" + std::string(key), "missing required member");
  }
  return JsonCursor(*it, path_ + "/" + std::string(key));
}

std::optional<JsonCursor> JsonCursor::find(std::string_view key) const
{
  expect_object();
  auto it = value_->find(key);
  if (it == value_->end() || it->is_null())
  {
    return std::nullopt;
  }
  return JsonCursor(*it, path_ + "/" + std::string(key));
}

JsonCursor JsonCursor::at(std::size_t index) const
{
  expect_array();
  if (index >= value_->size())
  {
    fail("index out of range");
  }
  return JsonCursor((*value_)[index], path_ + "/" + std::to_string(index));
}

void JsonCursor::expect_object() const
{
  if (!value_->is_object())
  {
    fail(std::string("expected object, found ") + kind_name(*value_));
  }
}

void JsonCursor::expect_array() const
{
  if (!value_->is_array())
  {
    fail(std::string("expected array, found ") + kind_name(*value_));
  }
}

std::size_t JsonCursor::size() const
{
  expect_array();
  return value_->size();
}

std::string JsonCursor::str() const
{
  if (!value_->is_string())
  {
    fail(std::string("expected string, found ") + kind_name(*value_));
  }
  return value_->get<std::string>();
}

double JsonCursor::number() const
{
  if (!value_->is_number())
  {
    fail(std::string("expected number, found ") + kind_name(*value_));
  }
  return value_->get<double>();
}

std::int64_t JsonCursor::integer() const
{
  if (!value_->is_number_integer())
  {
    fail(std::string("expected integer, found ") + kind_name(*value_));
  }
  return value_->get<std::int64_t>();
}

bool JsonCursor::boolean() const
{
  if (!value_->is_boolean())
  {
    fail(std::string("expected boolean, found ") + kind_name(*value_));
  }
  return value_->get<bool>();
}

std::vector<std::string> JsonCursor::str_list() const
{
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i)
  {
    out.push_back(at(i).str());
  }
  return out;
}

std::string JsonCursor::str_or(std::string_view key, std::string fallback) const
{
  auto member = find(key);
  return member ? member->str() : std::move(fallback);
}

void JsonCursor::fail(const std::string &message) const
{
  throw ParseError(where(), message);
}

std::string canonical_dump(const json &value)
{
  return value.dump(2);
}

}  // namespace watchtower
