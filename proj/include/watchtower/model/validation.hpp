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

#include "watchtower/common/error.hpp"
#include "watchtower/common/json.hpp"
#include "watchtower/model/catena.hpp"
#include "watchtower/model/components.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower::model {

/// What validation needs to know about the executable side of functions:
/// whether an implementation key resolves, and cross-parameter rules.
class ImplementationCatalog
{
public:
  virtual ~ImplementationCatalog() = default;

  virtual bool                       has(std::string_view key) const = 0;
  virtual std::optional<std::string> check_params(std::string_view key, const ParamMap &params) const = 0;
};

enum class Severity
{
  error,
  warning,
};

struct Diagnostic
{
  Severity    severity = Severity::error;
  std::string subject;
  std::string code;
  std::string message;

  auto operator<=>(const Diagnostic &) const = default;
};

struct ValidationReport
{
  std::vector<Diagnostic> diagnostics;

  bool ok() const;
  bool has_code(std::string_view code) const;
  /// One diagnostic per line: `error <subject> [<code>] <message>`.
  std::string to_text() const;
  json        to_json() const;
};

/// Thrown where a catena must be valid and is not.
class CatenaRejected : public Error
{
public:
  explicit CatenaRejected(ValidationReport report)
    : Error("catena rejected:\n" + report.to_text())
    , report_(std::move(report))
  {}

  const ValidationReport &report() const noexcept { return report_; }

private:
  ValidationReport report_;
};

/// Checks every instance-level invariant of `catena` against the registry.
/// Pure; diagnostics are sorted by subject id, then code.
ValidationReport validate_catena(const VisualizationCatena &catena, const ComponentRegistry &registry,
                                 const ImplementationCatalog *catalog = nullptr);

}  // namespace watchtower::model
