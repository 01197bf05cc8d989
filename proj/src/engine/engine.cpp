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

#include "watchtower/engine/engine.hpp"

#include "watchtower/common/error.hpp"
#include "watchtower/model/validation.hpp"

#include <algorithm>

namespace watchtower::engine {

std::string_view to_string(RunStatus status)
{
  switch (status)
  {
  case RunStatus::ok: return "ok";
  case RunStatus::failed: return "failed";
  case RunStatus::skipped_missing_input: return "skipped-missing-input";
  }
  return "ok";
}

bool ExecutionResult::ok() const
{
  return std::all_of(statuses.begin(), statuses.end(),
                     [](auto const &kv) { return kv.second.status == RunStatus::ok; });
}

json ExecutionResult::to_json() const
{
  json statuses_json = json::object();
  for (auto const &[id, st] : statuses)
  {
    json s{{"status", to_string(st.status)}};
    if (!st.reason.empty())
    {
      s["reason"] = st.reason;
    }
    statuses_json[id] = std::move(s);
  }
  return json{{"executed", executed},
              {"written_versions", written_versions},
              {"statuses", std::move(statuses_json)},
              {"stale_views", stale_views}};
}

CatenaEngine::CatenaEngine(model::VisualizationCatena catena, model::ComponentRegistry registry,
                           techniques::TechniqueRegistry techniques, Clock clock)
  : catena_(std::move(catena))
  , registry_(std::move(registry))
  , techniques_(std::move(techniques))
  , clock_(std::move(clock))
{
  auto report = model::validate_catena(catena_, registry_, &techniques_);
  if (!report.ok())
  {
    throw model::CatenaRejected(std::move(report));
  }
  graph_ = build_dependency_graph(catena_);
  order_ = execution_order(graph_);
}

ExecutionResult CatenaEngine::execute(PayloadStore &store) const
{
  return run(store, order_, {});
}

ExecutionResult CatenaEngine::propagate(PayloadStore &store, const std::set<std::string> &changed) const
{
  auto                     affected = reachable_functions(graph_, changed);
  std::vector<std::string> order;
  std::copy_if(order_.begin(), order_.end(), std::back_inserter(order),
               [&](auto const &id) { return affected.count(id) > 0; });
  return run(store, order, changed);
}

std::set<std::string> CatenaEngine::views_reading(const std::set<std::string> &entries) const
{
  std::set<std::string> out;
  for (auto const &view : catena_.views)
  {
    for (auto const &[port, ids] : view.inputs)
    {
      if (std::any_of(ids.begin(), ids.end(), [&](auto const &id) { return entries.count(id) > 0; }))
      {
        out.insert(view.id);
      }
    }
  }
  return out;
}

ExecutionResult CatenaEngine::run(PayloadStore &store, const std::vector<std::string> &order,
                                  const std::set<std::string> &changed) const
{
  ExecutionResult result;
  // Derived entries whose producer did not succeed in this run.
  std::map<std::string, std::string> broken;

  for (auto const &id : order)
  {
    auto const &fn   = *catena_.function(id);
    auto const &spec = *registry_.function(fn.spec);
    result.executed.push_back(id);

    auto mark_outputs_broken = [&] {
      for (auto const &[port, entry] : fn.outputs)
      {
        broken[entry] = id;
      }
    };

    InstanceStatus              status;
    techniques::TechniqueInputs inputs;
    for (auto const &[port, ids] : fn.inputs)
    {
      auto sorted = ids;
      std::sort(sorted.begin(), sorted.end());
      for (auto const &entry : sorted)
      {
        if (auto it = broken.find(entry); it != broken.end())
        {
          status = {RunStatus::skipped_missing_input, "upstream " + it->second + " did not produce " + entry};
          break;
        }
        auto payload = store.latest(entry);
        if (!payload)
        {
          status = {RunStatus::skipped_missing_input, "no payload for " + entry};
          break;
        }
        inputs[port].push_back(std::move(payload->body));
      }
      if (status.status != RunStatus::ok)
      {
        break;
      }
    }

    techniques::TechniqueOutputs outputs;
    if (status.status == RunStatus::ok)
    {
      try
      {
        auto const *technique = techniques_.find(spec.implementation);
        if (!technique)
        {
          throw TechniqueError("no technique registered for '" + spec.implementation + "'");
        }
        outputs = technique->run(inputs, model::effective_params(spec.params, fn.params));
        for (auto const &[port, entry] : fn.outputs)
        {
          auto it = outputs.find(port);
          if (it == outputs.end())
          {
            throw TechniqueError("no value produced for output port '" + port + "'");
          }
          auto issues = check_payload_body(registry_, spec.output(port)->data_type, it->second);
          if (!issues.empty())
          {
            throw TechniqueError("output '" + port + "' invalid: " + issues.front());
          }
        }
      }
      catch (const std::exception &e)
      {
        status = {RunStatus::failed, e.what()};
      }
    }

    if (status.status != RunStatus::ok)
    {
      mark_outputs_broken();
      result.statuses[id] = std::move(status);
      continue;
    }
    auto now = clock_();
    for (auto const &[port, entry] : fn.outputs)
    {
      Payload payload{spec.output(port)->data_type, 0, now, std::move(outputs[port])};
      result.written_versions[entry] = store.put(entry, std::move(payload));
    }
    result.statuses[id] = status;
  }

  std::set<std::string> touched = changed;
  for (auto const &[entry, _] : result.written_versions)
  {
    touched.insert(entry);
  }
  result.stale_views = views_reading(touched);
  return result;
}

}  // namespace watchtower::engine
