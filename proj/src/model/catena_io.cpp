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

#include "watchtower/model/catena_io.hpp"

#include "watchtower/common/error.hpp"

#include <algorithm>
#include <set>

namespace watchtower::model {
namespace {

json bindings_to_json(const PortBindings &bindings)
{
  json out = json::object();
  for (auto const &[port, ids] : bindings)
  {
    out[port] = ids.size() == 1 ? json(ids.front()) : json(ids);
  }
  return out;
}

PortBindings parse_bindings(const JsonCursor &doc)
{
  doc.expect_object();
  PortBindings out;
  for (auto it = doc.value().begin(); it != doc.value().end(); ++it)
  {
    JsonCursor item(*it, doc.path() + "/" + it.key());
    if (item.value().is_string())
    {
      out[it.key()] = {item.str()};
    }
    else
    {
      out[it.key()] = item.str_list();
    }
  }
  return out;
}

ParamMap parse_params(const std::optional<JsonCursor> &doc)
{
  ParamMap out;
  if (!doc)
  {
    return out;
  }
  doc->expect_object();
  for (auto it = doc->value().begin(); it != doc->value().end(); ++it)
  {
    out[it.key()] = *it;
  }
  return out;
}

std::map<std::string, std::string> parse_string_map(const std::optional<JsonCursor> &doc)
{
  std::map<std::string, std::string> out;
  if (!doc)
  {
    return out;
  }
  doc->expect_object();
  for (auto it = doc->value().begin(); it != doc->value().end(); ++it)
  {
    out[it.key()] = JsonCursor(*it, doc->path() + "/" + it.key()).str();
  }
  return out;
}

Timestamp parse_ts(const JsonCursor &cur)
{
  auto ts = parse_timestamp(cur.str());
  if (!ts)
  {
    cur.fail("invalid timestamp '" + cur.str() + "'");
  }
  return *ts;
}

template <typename T>
std::vector<T> sorted_by_id(std::vector<T> items)
{
  std::sort(items.begin(), items.end(), [](const T &a, const T &b) { return a.id < b.id; });
  return items;
}

}  // namespace

json catena_to_json(const VisualizationCatena &catena)
{
  json doc;
  doc["meta"] = {{"id", catena.meta.id}, {"project", catena.meta.project}, {"roles", catena.meta.roles}};

  json entries = json::array();
  for (auto const &entry : catena.entries)
  {
    if (entry.is_derived())
    {
      continue;
    }
    json e{{"id", entry.id}, {"spec", entry.data_type}};
    if (auto const *dao = entry.dao())
    {
      e["source"] = "dao";
      e["dao"]    = {{"package", dao->package},
                     {"connection", dao->connection},
                     {"window",
                      {{"start", format_timestamp(dao->window.start)},
                       {"end", format_timestamp(dao->window.end)},
                       {"interval_seconds", dao->window.interval.count()}}}};
    }
    else
    {
      e["source"] = "form";
    }
    entries.push_back(std::move(e));
  }
  doc["data_entries"] = std::move(entries);

  json forms = json::array();
  for (auto const &form : catena.forms)
  {
    forms.push_back({{"id", form.id}, {"spec", form.spec}, {"entries", form.entries}, {"fields", form.field_bindings}});
  }
  doc["web_forms"] = std::move(forms);

  json functions = json::array();
  for (auto const &fn : catena.functions)
  {
    functions.push_back({{"id", fn.id},
                         {"spec", fn.spec},
                         {"bindings", bindings_to_json(fn.inputs)},
                         {"params", json(fn.params)},
                         {"outputs", fn.outputs}});
  }
  doc["functions"] = std::move(functions);

  json views = json::array();
  for (auto const &view : catena.views)
  {
    views.push_back({{"id", view.id},
                     {"spec", view.spec},
                     {"bindings", bindings_to_json(view.inputs)},
                     {"params", json(view.params)},
                     {"children", view.children},
                     {"visible_to", view.visible_to}});
  }
  doc["views"] = std::move(views);
  return doc;
}

std::string serialize_catena(const VisualizationCatena &catena)
{
  return canonical_dump(catena_to_json(catena)) + "\n";
}

json parse_json_text(std::string_view text)
{
  try
  {
    return json::parse(text.begin(), text.end());
  }
  catch (const json::parse_error &e)
  {
    throw ParseError("byte " + std::to_string(e.byte), "malformed document");
  }
}

VisualizationCatena parse_catena_text(std::string_view text, const ComponentRegistry &registry)
{
  return parse_catena(parse_json_text(text), registry);
}

VisualizationCatena parse_catena(const json &document, const ComponentRegistry &registry)
{
  JsonCursor          doc(document);
  VisualizationCatena catena;
  std::set<std::string> unknown;

  doc.expect_object();
  auto meta            = doc.at("meta");
  catena.meta.id       = meta.at("id").str();
  catena.meta.project  = meta.at("project").str();
  if (auto roles = meta.find("roles"))
  {
    auto list = roles->str_list();
    catena.meta.roles = {list.begin(), list.end()};
  }

  auto entries = doc.at("data_entries");
  auto forms   = doc.at("web_forms");
  auto fns     = doc.at("functions");
  auto views   = doc.at("views");

  for (std::size_t i = 0; i < entries.size(); ++i)
  {
    auto      item = entries.at(i);
    DataEntry entry;
    entry.id        = item.at("id").str();
    entry.data_type = item.at("spec").str();
    if (!registry.data_type(entry.data_type))
    {
      unknown.insert(entry.data_type);
    }
    auto source = item.at("source");
    auto kind   = source.str();
    if (kind == "dao")
    {
      auto      dao = item.at("dao");
      DaoSource src;
      src.package = dao.at("package").str();
      if (!registry.dao(src.package))
      {
        unknown.insert(src.package);
      }
      if (auto conn = dao.find("connection"))
      {
        conn->expect_object();
        src.connection = conn->value();
      }
      auto window         = dao.at("window");
      src.window.start    = parse_ts(window.at("start"));
      src.window.end      = parse_ts(window.at("end"));
      src.window.interval = std::chrono::seconds{window.at("interval_seconds").integer()};
      entry.source        = std::move(src);
    }
    else if (kind == "form")
    {
      entry.source = FormSource{};
    }
    else
    {
      source.fail("unknown entry source '" + kind + "' (expected \"dao\" or \"form\")");
    }
    catena.entries.push_back(std::move(entry));
  }

  for (std::size_t i = 0; i < forms.size(); ++i)
  {
    auto            item = forms.at(i);
    WebFormInstance form;
    form.id   = item.at("id").str();
    form.spec = item.at("spec").str();
    if (!registry.form(form.spec))
    {
      unknown.insert(form.spec);
    }
    form.entries        = item.at("entries").str_list();
    form.field_bindings = parse_string_map(item.find("fields"));
    catena.forms.push_back(std::move(form));
  }

  std::vector<DataEntry> derived;
  for (std::size_t i = 0; i < fns.size(); ++i)
  {
    auto             item = fns.at(i);
    FunctionInstance fn;
    fn.id      = item.at("id").str();
    fn.spec    = item.at("spec").str();
    fn.inputs  = parse_bindings(item.at("bindings"));
    fn.params  = parse_params(item.find("params"));
    auto outs  = item.at("outputs");
    fn.outputs = parse_string_map(outs);
    auto const *spec = registry.function(fn.spec);
    if (!spec)
    {
      unknown.insert(fn.spec);
    }
    else
    {
      for (auto const &port : spec->outputs)
      {
        auto it = fn.outputs.find(port.name);
        if (it == fn.outputs.end())
        {
          throw ParseError(outs.path() + "/" + port.name, "output port is not mapped to an entry");
        }
        derived.push_back({it->second, port.data_type, DerivedSource{fn.id, port.name}});
      }
      for (auto const &[port, id] : fn.outputs)
      {
        if (!spec->output(port))
        {
          throw ParseError(outs.path() + "/" + port, "'" + spec->id + "' has no output port '" + port + "'");
        }
      }
    }
    catena.functions.push_back(std::move(fn));
  }
  catena.entries.insert(catena.entries.end(), derived.begin(), derived.end());

  for (std::size_t i = 0; i < views.size(); ++i)
  {
    auto         item = views.at(i);
    ViewInstance view;
    view.id   = item.at("id").str();
    view.spec = item.at("spec").str();
    if (!registry.view(view.spec))
    {
      unknown.insert(view.spec);
    }
    view.inputs   = parse_bindings(item.at("bindings"));
    view.params   = parse_params(item.find("params"));
    view.children = parse_string_map(item.find("children"));
    if (auto roles = item.find("visible_to"))
    {
      auto list       = roles->str_list();
      view.visible_to = {list.begin(), list.end()};
    }
    catena.views.push_back(std::move(view));
  }

  if (!unknown.empty())
  {
    std::string names;
    for (auto const &id : unknown)
    {
      names += (names.empty() ? "" : ", ") + id;
    }
    throw ParseError("/", "unregistered spec ids: " + names);
  }
  return catena;
}

bool structurally_equal(const VisualizationCatena &a, const VisualizationCatena &b)
{
  return a.meta == b.meta && sorted_by_id(a.entries) == sorted_by_id(b.entries) &&
         sorted_by_id(a.forms) == sorted_by_id(b.forms) && sorted_by_id(a.functions) == sorted_by_id(b.functions) &&
         sorted_by_id(a.views) == sorted_by_id(b.views);
}

}  // namespace watchtower::model
