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

#include <condition_variable>
#include <deque>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <thread>
#include <type_traits>

namespace watchtower::engine {

/// Single worker thread running submitted jobs one at a time, in order.
class UpdateQueue
{
public:
  UpdateQueue();
  ~UpdateQueue();

  UpdateQueue(const UpdateQueue &)            = delete;
  UpdateQueue &operator=(const UpdateQueue &) = delete;

  template <typename F>
  auto submit(F &&job) -> std::future<std::invoke_result_t<F>>
  {
    using R   = std::invoke_result_t<F>;
    auto task = std::make_shared<std::packaged_task<R()>>(std::forward<F>(job));
    auto fut  = task->get_future();
    enqueue([task] { (*task)(); });
    return fut;
  }

  /// Runs `job` on the worker and waits for its result.
  template <typename F>
  auto run(F &&job) -> std::invoke_result_t<F>
  {
    return submit(std::forward<F>(job)).get();
  }

private:
  void enqueue(std::function<void()> job);
  void loop();

  std::mutex                        mutex_;
  std::condition_variable           ready_;
  std::deque<std::function<void()>> jobs_;
  bool                              stopping_ = false;
  std::thread                       worker_;
};

}  // namespace watchtower::engine
