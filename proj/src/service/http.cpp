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

#include "watchtower/service/http.hpp"

#include <httplib.h>

namespace watchtower::service {

HttpServer::HttpServer(Service &service)
  : service_(service)
  , server_(std::make_unique<httplib::Server>())
{
  auto forward = [this](const httplib::Request &req, httplib::Response &res) {
    Request request;
    request.method        = req.method;
    request.path          = req.path;
    request.authorization = req.get_header_value("Authorization");
    request.body          = req.body;
    for (auto const &[key, value] : req.params)
    {
      request.query[key].push_back(value);
    }
    auto response = service_.handle(request);
    res.status    = response.status;
    res.set_content(response.body.dump(2), "application/json");
  };
  server_->Get(".*", forward);
  server_->Post(".*", forward);
  server_->Put(".*", forward);
  server_->Delete(".*", forward);
}

HttpServer::~HttpServer()
{
  stop();
}

bool HttpServer::bind(const std::string &host, int port)
{
  if (port == 0)
  {
    port_ = server_->bind_to_any_port(host);
  }
  else
  {
    port_ = server_->bind_to_port(host, port) ? port : -1;
  }
  return port_ > 0;
}

void HttpServer::listen(std::chrono::seconds poll_interval)
{
  std::thread poller;
  if (poll_interval.count() > 0)
  {
    poller = std::thread([this, poll_interval] {
      std::unique_lock lock(poll_mutex_);
      while (!stopping_)
      {
        lock.unlock();
        service_.poll();
        lock.lock();
        poll_wakeup_.wait_for(lock, poll_interval, [this] { return stopping_; });
      }
    });
  }
  server_->listen_after_bind();
  {
    std::lock_guard lock(poll_mutex_);
    stopping_ = true;
  }
  poll_wakeup_.notify_all();
  if (poller.joinable())
  {
    poller.join();
  }
}

void HttpServer::stop()
{
  {
    std::lock_guard lock(poll_mutex_);
    stopping_ = true;
  }
  poll_wakeup_.notify_all();
  server_->stop();
}

}  // namespace watchtower::service
