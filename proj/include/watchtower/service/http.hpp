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

#include "watchtower/service/service.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

namespace httplib {
class Server;
}

namespace watchtower::service {

/// HTTP/1.1 front end forwarding every request to a Service, plus an optional
/// background poller for dao-bound entries.
class HttpServer
{
public:
  explicit HttpServer(Service &service);
  ~HttpServer();

  HttpServer(const HttpServer &)            = delete;
  HttpServer &operator=(const HttpServer &) = delete;

  /// Binds `host:port` (port 0 picks a free one); false when binding fails.
  bool bind(const std::string &host, int port);
  int  port() const noexcept { return port_; }

  /// Serves until stop(); polls every `poll_interval` when it is positive.
  void listen(std::chrono::seconds poll_interval = std::chrono::seconds{0});
  void stop();

private:
  Service                         &service_;
  std::unique_ptr<httplib::Server> server_;
  int                              port_ = -1;

  std::mutex              poll_mutex_;
  std::condition_variable poll_wakeup_;
  bool                    stopping_ = false;
};

}  // namespace watchtower::service
