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
#include "watchtower/model/components.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace watchtower::gqm {

struct Goal
{
  std::string id;
  std::string object;
  std::string purpose;
  std::string quality_focus;
  std::string viewpoint;  // role the resulting views are visible to
  std::string context;

  bool operator==(const Goal &) const = default;
};

struct Question
{
  std::string id;
  std::string goal;
  std::string text;

  bool operator==(const Question &) const = default;
};

struct Metric
{
  std::string                      id;
  std::string                      question;
  std::string                      name;
  std::string                      data_type;
  std::vector<std::string>         technique_tags;
  std::optional<model::RenderKind> view_kind;

  bool operator==(const Metric &) const = default;
};

struct GqmPlan
{
  std::vector<Goal>     goals;
  std::vector<Question> questions;
  std::vector<Metric>   metrics;

  const Goal     *goal(std::string_view id) const;
  const Question *question(std::string_view id) const;
  /// Goal a metric ultimately serves, or null.
  const Goal *goal_of(const Metric &metric) const;

  bool operator==(const GqmPlan &) const = default;
};

/// Throws ParseError at the offending path for malformed documents, duplicate
/// ids and dangling goal/question references. Missing sections are empty.
GqmPlan parse_gqm_plan(const json &document);
GqmPlan parse_gqm_plan_text(std::string_view text);

json to_json(const GqmPlan &plan);

}  // namespace watchtower::gqm
