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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace watchtower {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class NotFound : public Error
{
public:
  using Error::Error;
};

/// A structured document could not be read. `location` is a JSON pointer
/// (e.g. `/functions/1/spec`) or a `line N` reference for delimited text.
class ParseError : public Error
{
public:
  ParseError(std::string location, const std::string &message)
    : Error(location.empty() ? message : location + ": " + message)
    , location_(std::move(location))
    , detail_(message)
  {}

  const std::string &location() const noexcept { return location_; }
  const std::string &detail() const noexcept { return detail_; }

private:
  std::string location_;
  std::string detail_;
};

/// Instantiating a type-level component was rejected. `code` is one of the
/// stable short codes ("unbound port", "arity", "constraint violation", ...).
class BindError : public Error
{
public:
  BindError(std::string code, const std::string &message)
    : Error(code + ": " + message)
    , code_(std::move(code))
  {}

  const std::string &code() const noexcept { return code_; }

private:
  std::string code_;
};

/// A control technique could not process its inputs.
class TechniqueError : public Error
{
public:
  using Error::Error;
};

/// A payload body violates its data type (schema or semantic invariant).
class InvalidData : public Error
{
public:
  explicit InvalidData(std::vector<std::string> issues)
    : Error(join(issues))
    , issues_(std::move(issues))
  {}

  const std::vector<std::string> &issues() const noexcept { return issues_; }

private:
  static std::string join(const std::vector<std::string> &issues)
  {
    std::string out;
    for (auto const &issue : issues)
    {
      if (!out.empty())
      {
        out += "; ";
      }
      out += issue;
    }
    return out;
  }

  std::vector<std::string> issues_;
};

}  // namespace watchtower
