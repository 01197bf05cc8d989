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

#include "watchtower/engine/views.hpp"

#include "watchtower/techniques/types.hpp"

#include <algorithm>

namespace watchtower::engine {
namespace {

namespace tt = techniques::type_ids;

using Inputs = std::map<std::string, std::vector<std::pair<std::string, Payload>>>;

/// Bodies of every input whose port is typed `type_id`, in spec port order.
std::vector<std::pair<std::string, const json *>> bodies_of(const model::ViewSpec &spec, const Inputs &inputs,
                                                             std::string_view type_id)
{
  std::vector<std::pair<std::string, const json *>> out;
  for (auto const &port : spec.inputs)
  {
    if (port.data_type != type_id)
    {
      continue;
    }
    if (auto it = inputs.find(port.name); it != inputs.end())
    {
      for (auto const &[entry, payload] : it->second)
      {
        out.emplace_back(entry, &payload.body);
      }
    }
  }
  return out;
}

json optional_number(const std::optional<double> &value)
{
  return value ? json(*value) : json(nullptr);
}

json render_bar_chart(const model::ViewSpec &spec, const Inputs &inputs)
{
  std::map<std::string, techniques::IndicatorRow> rows;
  for (auto const &[entry, body] : bodies_of(spec, inputs, tt::indicator_table))
  {
    for (auto &row : techniques::indicators_from_body(*body).rows)
    {
      rows[row.activity] = row;
    }
  }

  json nodes = json::array();
  json roots = json::array();
  auto add_node = [&](const std::string &id, const std::string &name, const std::optional<std::string> &parent,
                      const std::vector<std::string> &children) {
    json node{{"id", id},
              {"name", name},
              {"parent", parent ? json(*parent) : json(nullptr)},
              {"children", children},
              {"planned", nullptr},
              {"actual", nullptr},
              {"deviation", nullptr},
              {"status", nullptr}};
    if (auto it = rows.find(id); it != rows.end())
    {
      node["planned"]   = optional_number(it->second.planned);
      node["actual"]    = it->second.actual;
      node["deviation"] = optional_number(it->second.deviation);
      node["status"]    = techniques::to_string(it->second.status);
    }
    nodes.push_back(std::move(node));
  };

  auto hierarchies = bodies_of(spec, inputs, tt::activity_hierarchy);
  if (!hierarchies.empty())
  {
    auto hierarchy = techniques::hierarchy_from_body(*hierarchies.front().second);
    auto activities = hierarchy.activities();
    std::sort(activities.begin(), activities.end(), [](auto const &a, auto const &b) { return a.id < b.id; });
    for (auto const &a : activities)
    {
      auto children = hierarchy.children(a.id);
      std::sort(children.begin(), children.end());
      add_node(a.id, a.name, a.parent, children);
    }
    for (auto const &root : hierarchy.roots())
    {
      roots.push_back(root);
    }
  }
  else
  {
    for (auto const &[id, row] : rows)
    {
      add_node(id, id, std::nullopt, {});
      roots.push_back(id);
    }
  }
  std::sort(roots.begin(), roots.end());
  return json{{"series", {"planned", "actual", "deviation"}}, {"roots", std::move(roots)}, {"nodes", std::move(nodes)}};
}

json render_line_chart(const model::ViewSpec &spec, const Inputs &inputs)
{
  json series = json::array();
  for (auto const &[entry, body] : bodies_of(spec, inputs, tt::time_series))
  {
    series.push_back({{"entry", entry}, {"points", *body}});
  }
  return json{{"series", std::move(series)}};
}

json render_milestone_trend(const model::ViewSpec &spec, const Inputs &inputs)
{
  json milestones = json::array();
  for (auto const &[entry, body] : bodies_of(spec, inputs, tt::milestone_trend))
  {
    for (auto const &row : *body)
    {
      milestones.push_back(row);
    }
  }
  return json{{"milestones", std::move(milestones)}};
}

json render_table(const model::ViewSpec &spec, const model::ComponentRegistry &registry, const Inputs &inputs)
{
  json columns = json::array();
  json rows    = json::array();
  if (spec.inputs.empty())
  {
    return json{{"columns", columns}, {"rows", rows}};
  }
  auto const &type_id = spec.inputs.front().data_type;
  if (auto const *type = registry.data_type(type_id))
  {
    for (auto const &field : type->schema)
    {
      columns.push_back(field.name);
    }
  }
  for (auto const &[entry, body] : bodies_of(spec, inputs, type_id))
  {
    for (auto const &record : *body)
    {
      json row = json::array();
      for (auto const &column : columns)
      {
        auto it = record.find(column.get<std::string>());
        row.push_back(it == record.end() ? json(nullptr) : *it);
      }
      rows.push_back(std::move(row));
    }
  }
  return json{{"columns", std::move(columns)}, {"rows", std::move(rows)}};
}

json render_traffic_light(const model::ViewSpec &spec, const Inputs &inputs)
{
  using techniques::Status;
  std::map<std::string, techniques::IndicatorRow> rows;
  for (auto const &[entry, body] : bodies_of(spec, inputs, tt::indicator_table))
  {
    for (auto &row : techniques::indicators_from_body(*body).rows)
    {
      rows[row.activity] = row;
    }
  }
  json counts{{"green", 0}, {"yellow", 0}, {"red", 0}, {"no-baseline", 0}};
  json items   = json::array();
  auto overall = Status::no_baseline;
  for (auto const &[id, row] : rows)
  {
    auto key = std::string(techniques::to_string(row.status));
    counts[key] = counts[key].get<int>() + 1;
    if (row.status != Status::no_baseline &&
        (overall == Status::no_baseline || techniques::severity_rank(row.status) > techniques::severity_rank(overall)))
    {
      overall = row.status;
    }
    items.push_back({{"activity_id", id}, {"status", key}, {"deviation", optional_number(row.deviation)}});
  }
  return json{{"overall", techniques::to_string(overall)}, {"counts", std::move(counts)}, {"items", std::move(items)}};
}

}  // namespace

std::string_view to_string(ViewStatus status)
{
  return status == ViewStatus::ok ? "ok" : "no-data";
}

json ViewModel::to_json() const
{
  json kids = json::array();
  for (auto const &[slot, model] : children)
  {
    kids.push_back({{"slot", slot}, {"model", model.to_json()}});
  }
  return json{{"view", view},
              {"spec", spec},
              {"render", model::to_string(render)},
              {"title", title},
              {"status", engine::to_string(status)},
              {"top_level", top_level},
              {"input_versions", input_versions},
              {"data", data},
              {"children", std::move(kids)}};
}

json render_data(const model::ViewSpec &spec, const model::ComponentRegistry &registry, const Inputs &inputs)
{
  switch (spec.render)
  {
  case model::RenderKind::bar_chart_drilldown: return render_bar_chart(spec, inputs);
  case model::RenderKind::line_chart: return render_line_chart(spec, inputs);
  case model::RenderKind::milestone_trend_chart: return render_milestone_trend(spec, inputs);
  case model::RenderKind::table: return render_table(spec, registry, inputs);
  case model::RenderKind::traffic_light: return render_traffic_light(spec, inputs);
  }
  return nullptr;
}

namespace {

std::map<std::string, std::uint64_t> input_versions(const model::ViewInstance &view, const PayloadStore &store)
{
  std::map<std::string, std::uint64_t> out;
  for (auto const &[port, ids] : view.inputs)
  {
    for (auto const &id : ids)
    {
      out[id] = store.latest_version(id);
    }
  }
  return out;
}

bool visible(const model::ViewInstance &view, const std::set<std::string> &roles)
{
  return std::any_of(view.visible_to.begin(), view.visible_to.end(),
                     [&](auto const &role) { return roles.count(role) > 0; });
}

}  // namespace

std::vector<ViewModel> ViewCache::refresh(const model::VisualizationCatena &catena,
                                          const model::ComponentRegistry &registry, const PayloadStore &store,
                                          const std::set<std::string> &roles)
{
  std::lock_guard lock(mutex_);

  std::set<std::string> embedded;
  for (auto const &view : catena.views)
  {
    for (auto const &[slot, child] : view.children)
    {
      embedded.insert(child);
    }
  }

  // Own content of one view, re-rendered only when its input versions moved.
  auto content = [&](const model::ViewInstance &view) -> const Entry & {
    auto versions = input_versions(view, store);
    auto it       = cache_.find(view.id);
    if (it != cache_.end() && it->second.versions == versions)
    {
      return it->second;
    }
    Entry entry;
    entry.versions = versions;
    auto const &spec = *registry.view(view.spec);
    Inputs      inputs;
    bool        complete = true;
    for (auto const &[port, ids] : view.inputs)
    {
      auto sorted = ids;
      std::sort(sorted.begin(), sorted.end());
      for (auto const &id : sorted)
      {
        auto version = versions[id];
        if (version == 0)
        {
          complete = false;
          break;
        }
        inputs[port].emplace_back(id, store.get(id, version));
      }
    }
    if (complete)
    {
      entry.status = ViewStatus::ok;
      entry.data   = render_data(spec, registry, inputs);
    }
    ++renders_;
    return cache_[view.id] = std::move(entry);
  };

  // Children first: the child graph is acyclic after validation.
  std::map<std::string, ViewModel> built;
  std::function<const ViewModel &(const model::ViewInstance &)> build = [&](const model::ViewInstance &view)
      -> const ViewModel & {
    if (auto it = built.find(view.id); it != built.end())
    {
      return it->second;
    }
    auto const &spec = *registry.view(view.spec);
    ViewModel   model;
    for (auto const &slot : spec.slots)
    {
      auto it = view.children.find(slot.name);
      if (it == view.children.end())
      {
        continue;
      }
      auto const *child = catena.view(it->second);
      if (child && visible(*child, roles))
      {
        model.children.emplace_back(slot.name, build(*child));
      }
    }
    auto const &own      = content(view);
    model.view           = view.id;
    model.spec           = spec.id;
    model.render         = spec.render;
    model.title          = spec.name;
    model.status         = own.status;
    model.data           = own.data;
    model.input_versions = own.versions;
    model.top_level      = embedded.count(view.id) == 0;
    return built[view.id] = std::move(model);
  };

  std::vector<const model::ViewInstance *> views;
  for (auto const &view : catena.views)
  {
    if (visible(view, roles))
    {
      views.push_back(&view);
    }
  }
  std::sort(views.begin(), views.end(), [](auto const *a, auto const *b) { return a->id < b->id; });
  std::vector<ViewModel> out;
  for (auto const *view : views)
  {
    out.push_back(build(*view));
  }
  return out;
}

std::set<std::string> ViewCache::stale(const model::VisualizationCatena &catena, const PayloadStore &store) const
{
  std::lock_guard       lock(mutex_);
  std::set<std::string> out;
  for (auto const &view : catena.views)
  {
    auto it = cache_.find(view.id);
    if (it == cache_.end() || it->second.versions != input_versions(view, store))
    {
      out.insert(view.id);
    }
  }
  return out;
}

std::size_t ViewCache::renders() const
{
  std::lock_guard lock(mutex_);
  return renders_;
}

std::vector<ViewModel> refresh_views(const model::VisualizationCatena &catena, const model::ComponentRegistry &registry,
                                     const PayloadStore &store, const std::set<std::string> &roles)
{
  ViewCache cache;
  return cache.refresh(catena, registry, store, roles);
}

}  // namespace watchtower::engine
