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

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace watchtower {

using Date      = std::chrono::sys_days;
using Timestamp = std::chrono::sys_seconds;
using Clock     = std::function<Timestamp()>;

/// Parses `YYYY-MM-DD`.
std::optional<Date> parse_date(std::string_view text);

/// Parses `YYYY-MM-DD` (midnight UTC) or `YYYY-MM-DDTHH:MM:SSZ`.
std::optional<Timestamp> parse_timestamp(std::string_view text);

std::string format_date(Date date);
std::string format_timestamp(Timestamp ts);

Timestamp system_now();

inline Timestamp at_midnight(Date date)
{
  return Timestamp{date.time_since_epoch()};
}

inline Date date_of(Timestamp ts)
{
  return std::chrono::floor<std::chrono::days>(ts);
}

}  // namespace watchtower
