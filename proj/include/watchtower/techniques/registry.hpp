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

#include "watchtower/common/json.hpp"
#include "watchtower/model/validation.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower::techniques {

/// Implementation keys of the built-in techniques.
namespace keys {
inline constexpr std::string_view aggregate_effort = "agg.effort";
inline constexpr std::string_view tolerance_check  = "check.tolerance";
inline constexpr std::string_view earned_value     = "eva.standard";
inline constexpr std::string_view milestone_trend  = "mta.standard";
inline constexpr std::string_view scale_series     = "ts.scale";
inline constexpr std::string_view effort_to_series = "conv.effort_ts";
}  // namespace keys

/// Input port -> bodies (one per bound entry, in entry id order).
using TechniqueInputs  = std::map<std::string, std::vector<json>>;
/// Output port -> body.
using TechniqueOutputs = std::map<std::string, json>;

struct Technique
{
  /// Cross-parameter rules; may be empty.
  std::function<std::optional<std::string>(const model::ParamMap &)> check_params;
  std::function<TechniqueOutputs(const TechniqueInputs &, const model::ParamMap &)> run;
};

class TechniqueRegistry final : public model::ImplementationCatalog
{
public:
  void             add(std::string key, Technique technique);
  const Technique *find(std::string_view key) const;

  bool                       has(std::string_view key) const override;
  std::optional<std::string> check_params(std::string_view key, const model::ParamMap &params) const override;

  std::vector<std::string> keys() const;

private:
  std::map<std::string, Technique, std::less<>> techniques_;
};

TechniqueRegistry builtin_techniques();

}  // namespace watchtower::techniques
