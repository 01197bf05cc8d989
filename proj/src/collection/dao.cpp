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

#include "watchtower/collection/dao.hpp"

#include "watchtower/collection/importers.hpp"
#include "watchtower/common/error.hpp"

#include <fstream>
#include <sstream>

namespace watchtower::collection {
namespace {

class FileConnector final : public DaoConnector
{
public:
  FileConnector(std::filesystem::path base, std::string parser)
    : base_(std::move(base))
    , parser_(std::move(parser))
  {}

  json fetch(const json &connection, std::string_view type_id) const override
  {
    auto it = connection.find("path");
    if (it == connection.end() || !it->is_string())
    {
      throw Error("connection parameter 'path' missing");
    }
    std::filesystem::path path = it->get<std::string>();
    if (path.is_relative())
    {
      path = base_ / path;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
      throw Error("cannot read " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    auto bodies = parse_document(parser_, text.str());
    auto body   = bodies.find(std::string(type_id));
    if (body == bodies.end())
    {
      throw Error(parser_ + " does not provide " + std::string(type_id));
    }
    return body->second;
  }

private:
  std::filesystem::path base_;
  std::string           parser_;
};

}  // namespace

std::vector<std::string> poll_due(const model::VisualizationCatena &catena, const PullStates &states, Timestamp now)
{
  std::vector<std::string> due;
  for (auto const &entry : catena.entries)
  {
    auto const *dao = entry.dao();
    if (!dao || now < dao->window.start || now > dao->window.end)
    {
      continue;
    }
    auto it = states.find(entry.id);
    if (it == states.end() || !it->second.last_pulled || now - *it->second.last_pulled >= dao->window.interval)
    {
      due.push_back(entry.id);
    }
  }
  std::sort(due.begin(), due.end());
  return due;
}

void DaoCatalog::add(std::string key, std::shared_ptr<const DaoConnector> connector)
{
  connectors_[std::move(key)] = std::move(connector);
}

const DaoConnector *DaoCatalog::find(std::string_view key) const
{
  auto it = connectors_.find(key);
  return it == connectors_.end() ? nullptr : it->second.get();
}

DaoCatalog builtin_connectors(std::filesystem::path base)
{
  DaoCatalog catalog;
  catalog.add(std::string(dao_keys::plan), std::make_shared<FileConnector>(base, std::string(parsers::plan)));
  catalog.add(std::string(dao_keys::effort), std::make_shared<FileConnector>(base, std::string(parsers::effort)));
  catalog.add(std::string(dao_keys::time_series),
              std::make_shared<FileConnector>(base, std::string(parsers::time_series)));
  return catalog;
}

engine::Payload pull_entry(const model::DataEntry &entry, PullState &state, const DaoCatalog &connectors,
                           const model::ComponentRegistry &registry, engine::PayloadStore &store, Timestamp now)
{
  try
  {
    auto const *dao = entry.dao();
    if (!dao)
    {
      throw Error("entry " + entry.id + " is not dao-bound");
    }
    auto const *connector = connectors.find(dao->package);
    if (!connector)
    {
      throw NotFound("no connector for package '" + dao->package + "'");
    }
    auto body   = connector->fetch(dao->connection, entry.data_type);
    auto issues = engine::check_payload_body(registry, entry.data_type, body);
    if (!issues.empty())
    {
      throw InvalidData(std::move(issues));
    }
    engine::Payload payload{entry.data_type, 0, now, std::move(body)};
    payload.version   = store.put(entry.id, payload);
    state.last_pulled = now;
    state.last_error.reset();
    return payload;
  }
  catch (const std::exception &e)
  {
    state.last_error = e.what();
    throw;
  }
}

}  // namespace watchtower::collection
