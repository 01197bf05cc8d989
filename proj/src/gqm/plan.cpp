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

#include "watchtower/gqm/plan.hpp"

#include "watchtower/common/error.hpp"
#include "watchtower/model/catena_io.hpp"

#include <algorithm>
#include <set>

namespace watchtower::gqm {
namespace {

template <typename T>
const T *by_id(const std::vector<T> &items, std::string_view id)
{
  auto it = std::find_if(items.begin(), items.end(), [&](auto const &item) { return item.id == id; });
  return it == items.end() ? nullptr : &*it;
}

std::string unique_id(const JsonCursor &item, std::set<std::string> &seen)
{
  auto cur = item.at("id");
  auto id  = cur.str();
  if (id.empty())
  {
    cur.fail("empty id");
  }
  if (!seen.insert(id).second)
  {
    cur.fail("duplicate id '" + id + "'");
  }
  return id;
}

}  // namespace

const Goal *GqmPlan::goal(std::string_view id) const
{
  return by_id(goals, id);
}

const Question *GqmPlan::question(std::string_view id) const
{
  return by_id(questions, id);
}

const Goal *GqmPlan::goal_of(const Metric &metric) const
{
  auto const *q = question(metric.question);
  return q ? goal(q->goal) : nullptr;
}

GqmPlan parse_gqm_plan(const json &document)
{
  JsonCursor doc(document);
  doc.expect_object();
  GqmPlan plan;

  if (auto goals = doc.find("goals"))
  {
    goals->expect_array();
    std::set<std::string> seen;
    for (std::size_t i = 0; i < goals->size(); ++i)
    {
      auto item = goals->at(i);
      Goal g;
      g.id            = unique_id(item, seen);
      g.object        = item.str_or("object", "");
      g.purpose       = item.str_or("purpose", "");
      g.quality_focus = item.str_or("quality_focus", "");
      g.viewpoint     = item.at("viewpoint").str();
      g.context       = item.str_or("context", "");
      plan.goals.push_back(std::move(g));
    }
  }
  if (auto questions = doc.find("questions"))
  {
    questions->expect_array();
    std::set<std::string> seen;
    for (std::size_t i = 0; i < questions->size(); ++i)
    {
      auto     item = questions->at(i);
      Question q;
      q.id        = unique_id(item, seen);
      auto goal   = item.at("goal");
      q.goal      = goal.str();
      if (!plan.goal(q.goal))
      {
        goal.fail("unknown goal '" + q.goal + "'");
      }
      q.text = item.str_or("text", "");
      plan.questions.push_back(std::move(q));
    }
  }
  if (auto metrics = doc.find("metrics"))
  {
    metrics->expect_array();
    std::set<std::string> seen;
    for (std::size_t i = 0; i < metrics->size(); ++i)
    {
      auto   item = metrics->at(i);
      Metric m;
      m.id          = unique_id(item, seen);
      auto question = item.at("question");
      m.question    = question.str();
      if (!plan.question(m.question))
      {
        question.fail("unknown question '" + m.question + "'");
      }
      m.name      = item.str_or("name", m.id);
      m.data_type = item.at("data_type").str();
      if (auto tags = item.find("technique_tags"))
      {
        m.technique_tags = tags->str_list();
      }
      if (auto kind = item.find("view_kind"); kind && !kind->value().is_null())
      {
        m.view_kind = model::render_kind_from_string(kind->str());
        if (!m.view_kind)
        {
          kind->fail("unknown view kind '" + kind->str() + "'");
        }
      }
      plan.metrics.push_back(std::move(m));
    }
  }
  return plan;
}

GqmPlan parse_gqm_plan_text(std::string_view text)
{
  return parse_gqm_plan(model::parse_json_text(text));
}

json to_json(const GqmPlan &plan)
{
  json goals = json::array();
  for (auto const &g : plan.goals)
  {
    goals.push_back({{"id", g.id},
                     {"object", g.object},
                     {"purpose", g.purpose},
                     {"quality_focus", g.quality_focus},
                     {"viewpoint", g.viewpoint},
                     {"context", g.context}});
  }
  json questions = json::array();
  for (auto const &q : plan.questions)
  {
    questions.push_back({{"id", q.id}, {"goal", q.goal}, {"text", q.text}});
  }
  json metrics = json::array();
  for (auto const &m : plan.metrics)
  {
    metrics.push_back({{"id", m.id},
                       {"question", m.question},
                       {"name", m.name},
                       {"data_type", m.data_type},
                       {"technique_tags", m.technique_tags},
                       {"view_kind", m.view_kind ? json(model::to_string(*m.view_kind)) : json(nullptr)}});
  }
  return json{{"goals", std::move(goals)}, {"questions", std::move(questions)}, {"metrics", std::move(metrics)}};
}

}  // namespace watchtower::gqm
