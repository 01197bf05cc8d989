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

#include "watchtower/collection/dao.hpp"
#include "watchtower/common/json.hpp"
#include "watchtower/common/time.hpp"
#include "watchtower/engine/engine.hpp"
#include "watchtower/engine/update_queue.hpp"
#include "watchtower/engine/views.hpp"
#include "watchtower/service/auth.hpp"
#include "watchtower/store/repository.hpp"
#include "watchtower/techniques/registry.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

namespace watchtower::service {

struct Request
{
  std::string                                     method;
  std::string                                     path;
  std::map<std::string, std::vector<std::string>> query;
  std::string                                     authorization;  // raw header value
  std::string                                     body;
};

struct Response
{
  int  status = 200;
  json body   = json::object();
};

/// Transport-independent request handling over one repository. Every mutation
/// of a catena's payloads runs on that catena's update queue; readers take
/// consistent snapshots between queue jobs.
class Service
{
public:
  Service(store::Repository &repository, CredentialStore credentials, techniques::TechniqueRegistry techniques,
          collection::DaoCatalog connectors, Clock clock = system_now);
  ~Service();

  Response handle(const Request &request);

  /// Pulls every due dao-bound entry of every stored catena and propagates the
  /// changes. Returns the ids (`<catena>/<entry>`) pulled successfully.
  std::vector<std::string> poll();

private:
  struct Slot;

  Response get_views(const Principal &who, const std::string &catena);
  Response post_form(const Principal &who, const std::string &form, const Request &request);
  Response get_catena(const Principal &who, const std::string &id);
  Response put_catena(const Principal &who, const std::string &id, const Request &request);
  Response delete_catena(const Principal &who, const std::string &id);
  Response list_catenas(const Principal &who);
  Response browse(const Principal &who, const std::string &kind, const Request &request);
  Response register_component(const Principal &who, const std::string &kind, const Request &request);
  Response compose(const Principal &who, const Request &request);
  Response record_experience(const Principal &who, const Request &request);
  Response get_experience(const Principal &who, const std::string &project);

  /// Slot for a stored catena, building its engine on first use. Throws
  /// NotFound for unknown ids.
  std::shared_ptr<Slot> slot(const std::string &catena);
  std::shared_ptr<Slot> slot_entry(const std::string &catena);

  store::Repository            &repository_;
  CredentialStore               credentials_;
  techniques::TechniqueRegistry techniques_;
  collection::DaoCatalog        connectors_;
  Clock                         clock_;

  std::mutex                                   slots_mutex_;
  std::map<std::string, std::shared_ptr<Slot>> slots_;
};

}  // namespace watchtower::service
