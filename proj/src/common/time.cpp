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

#include "watchtower/common/time.hpp"

#include <charconv>
#include <cstdio>

namespace watchtower {
namespace {

bool read_int(std::string_view text, std::size_t pos, std::size_t len, int &out)
{
  if (pos + len > text.size())
  {
    return false;
  }
  for (std::size_t i = pos; i < pos + len; ++i)
  {
    if (text[i] < '0' || text[i] > '9')
    {
      return false;
    }
  }
  auto res = std::from_chars(text.data() + pos, text.data() + pos + len, out);
  return res.ec == std::errc{};
}

}  // namespace

std::optional<Date> parse_date(std::string_view text)
{
  int y = 0;
  int m = 0;
  int d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !read_int(text, 0, 4, y) ||
      !read_int(text, 5, 2, m) || !read_int(text, 8, 2, d))
  {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok())
  {
    return std::nullopt;
  }
  return Date{ymd};
}

std::optional<Timestamp> parse_timestamp(std::string_view text)
{
  if (text.size() == 10)
  {
    auto date = parse_date(text);
    if (!date)
    {
      return std::nullopt;
    }
    return at_midnight(*date);
  }
  int hh = 0;
  int mm = 0;
  int ss = 0;
  if (text.size() != 20 || text[10] != 'T' || text[13] != ':' || text[16] != ':' || text[19] != 'Z')
  {
    return std::nullopt;
  }
  auto date = parse_date(text.substr(0, 10));
  if (!date || !read_int(text, 11, 2, hh) || !read_int(text, 14, 2, mm) || !read_int(text, 17, 2, ss) ||
      hh > 23 || mm > 59 || ss > 59)
  {
    return std::nullopt;
  }
  return at_midnight(*date) + std::chrono::hours{hh} + std::chrono::minutes{mm} +
         std::chrono::seconds{ss};
}

std::string format_date(Date date)
{
  std::chrono::year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_timestamp(Timestamp ts)
{
  auto date = date_of(ts);
  auto secs = (ts - at_midnight(date)).count();
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%sT%02lld:%02lld:%02lldZ", format_date(date).c_str(),
                static_cast<long long>(secs / 3600), static_cast<long long>((secs / 60) % 60),
                static_cast<long long>(secs % 60));
  return buf;
}

Timestamp system_now()
{
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

}  // namespace watchtower
