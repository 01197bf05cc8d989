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

#include "watchtower/service/service.hpp"

#include "watchtower/collection/forms.hpp"
#include "watchtower/common/error.hpp"
#include "watchtower/gqm/analysis.hpp"
#include "watchtower/gqm/compose.hpp"
#include "watchtower/model/catena_io.hpp"
#include "watchtower/model/validation.hpp"

#include <sstream>

namespace watchtower::service {

struct Service::Slot
{
  explicit Slot(store::Repository &repository, const std::string &id)
    : payloads(repository.payloads(), id)
  {}

  engine::UpdateQueue                         queue;
  std::shared_mutex                           state;  // exclusive while payloads or engine change
  std::shared_ptr<const engine::CatenaEngine> engine;
  std::unique_ptr<engine::ViewCache>          cache = std::make_unique<engine::ViewCache>();
  collection::PullStates                      pulls;
  engine::ScopedPayloadStore                  payloads;
};

namespace {

Response error(int status, const std::string &message, json extra = json::object())
{
  extra["error"] = message;
  return {status, std::move(extra)};
}

std::vector<std::string> split_path(const std::string &path)
{
  std::vector<std::string> parts;
  std::istringstream       in(path);
  std::string              part;
  while (std::getline(in, part, '/'))
  {
    if (!part.empty())
    {
      parts.push_back(part);
    }
  }
  return parts;
}

json parse_body(const Request &request)
{
  return model::parse_json_text(request.body);
}

std::string query_value(const Request &request, const std::string &key)
{
  auto it = request.query.find(key);
  return it == request.query.end() || it->second.empty() ? std::string{} : it->second.front();
}

}  // namespace

Service::Service(store::Repository &repository, CredentialStore credentials, techniques::TechniqueRegistry techniques,
                 collection::DaoCatalog connectors, Clock clock)
  : repository_(repository)
  , credentials_(std::move(credentials))
  , techniques_(std::move(techniques))
  , connectors_(std::move(connectors))
  , clock_(std::move(clock))
{}

Service::~Service() = default;

std::shared_ptr<Service::Slot> Service::slot_entry(const std::string &catena)
{
  std::lock_guard lock(slots_mutex_);
  auto           &slot = slots_[catena];
  if (!slot)
  {
    slot = std::make_shared<Slot>(repository_, catena);
  }
  return slot;
}

std::shared_ptr<Service::Slot> Service::slot(const std::string &catena)
{
  if (!repository_.has_catena(catena))
  {
    throw NotFound("unknown catena '" + catena + "'");
  }
  auto s = slot_entry(catena);
  {
    std::shared_lock lock(s->state);
    if (s->engine)
    {
      return s;
    }
  }
  std::unique_lock lock(s->state);
  if (!s->engine)
  {
    s->engine = std::make_shared<engine::CatenaEngine>(repository_.get_catena(catena), repository_.registry(),
                                                       techniques_, clock_);
  }
  return s;
}

Response Service::handle(const Request &request)
{
  try
  {
    auto const &auth = request.authorization;
    if (!auth.starts_with("Bearer "))
    {
      return error(401, "authentication required");
    }
    auto who = credentials_.authenticate(auth.substr(7));
    if (!who)
    {
      return error(401, "unknown token");
    }

    auto        parts  = split_path(request.path);
    auto const &method = request.method;
    auto        n      = parts.size();
    if (n >= 1 && parts[0] == "catenas")
    {
      if (n == 1 && method == "GET")
      {
        return list_catenas(*who);
      }
      if (n == 3 && parts[2] == "views" && method == "GET")
      {
        return get_views(*who, parts[1]);
      }
      if (n == 2 && method == "GET")
      {
        return get_catena(*who, parts[1]);
      }
      if (n == 2 && method == "PUT")
      {
        return put_catena(*who, parts[1], request);
      }
      if (n == 2 && method == "DELETE")
      {
        return delete_catena(*who, parts[1]);
      }
    }
    else if (n == 2 && parts[0] == "forms" && method == "POST")
    {
      return post_form(*who, parts[1], request);
    }
    else if (n == 2 && parts[0] == "repository")
    {
      if (method == "GET")
      {
        return browse(*who, parts[1], request);
      }
      if (method == "PUT" || method == "POST")
      {
        return register_component(*who, parts[1], request);
      }
    }
    else if (n == 1 && parts[0] == "compose" && method == "POST")
    {
      return compose(*who, request);
    }
    else if (parts.size() >= 1 && parts[0] == "experience")
    {
      if (n == 1 && method == "POST")
      {
        return record_experience(*who, request);
      }
      if (n == 2 && method == "GET")
      {
        return get_experience(*who, parts[1]);
      }
    }
    return error(404, "no route for " + method + " " + request.path);
  }
  catch (const NotFound &e)
  {
    return error(404, e.what());
  }
  catch (const model::CatenaRejected &e)
  {
    return error(422, "catena rejected", {{"report", e.report().to_json()}});
  }
  catch (const InvalidData &e)
  {
    return error(422, "validation failed", {{"diagnostics", e.issues()}});
  }
  catch (const ParseError &e)
  {
    return error(422, "malformed document", {{"diagnostics", {e.what()}}, {"location", e.location()}});
  }
  catch (const BindError &e)
  {
    return error(422, e.what(), {{"code", e.code()}});
  }
  catch (const std::exception &e)
  {
    return error(500, e.what());
  }
}

Response Service::get_views(const Principal &who, const std::string &catena)
{
  auto             s = slot(catena);
  std::shared_lock lock(s->state);
  auto models = s->cache->refresh(s->engine->catena(), s->engine->registry(), s->payloads, who.roles);
  json views  = json::array();
  for (auto const &model : models)
  {
    views.push_back(model.to_json());
  }
  return {200, {{"catena", catena}, {"views", std::move(views)}}};
}

Response Service::post_form(const Principal &who, const std::string &form, const Request &request)
{
  std::vector<std::string> owners;
  if (auto catena = query_value(request, "catena"); !catena.empty())
  {
    owners.push_back(catena);
  }
  else
  {
    for (auto const &id : repository_.catena_ids())
    {
      if (slot(id)->engine->catena().form(form))
      {
        owners.push_back(id);
      }
    }
  }
  if (owners.size() > 1)
  {
    return error(422, "form id '" + form + "' is used by several catenas; pass ?catena=<id>");
  }
  if (owners.empty())
  {
    throw NotFound("unknown form instance '" + form + "'");
  }
  auto s      = slot(owners.front());
  auto engine = [&] {
    std::shared_lock lock(s->state);
    return s->engine;
  }();
  if (!engine->catena().form(form))
  {
    throw NotFound("unknown form instance '" + form + "'");
  }
  if (!authorize(who, Resource::form, form, Action::submit, &engine->catena()))
  {
    return error(403, "not allowed to submit form '" + form + "'");
  }
  auto submission         = collection::submission_from_json(form, parse_body(request));
  submission.submitted_by = who.id;
  submission.submitted_at = clock_();

  auto [changed, result] = s->queue.run([&] {
    std::unique_lock lock(s->state);
    auto changed = collection::submit_form(submission, s->engine->catena(), s->engine->registry(), s->payloads);
    auto result  = s->engine->propagate(s->payloads, {changed.begin(), changed.end()});
    return std::make_pair(changed, result);
  });
  auto run = result.to_json();
  return {200,
          {{"catena", owners.front()},
           {"changed", changed},
           {"recomputed", result.executed},
           {"statuses", run["statuses"]},
           {"stale_views", run["stale_views"]}}};
}

Response Service::get_catena(const Principal &who, const std::string &id)
{
  auto s      = slot(id);
  auto engine = [&] {
    std::shared_lock lock(s->state);
    return s->engine;
  }();
  if (!authorize(who, Resource::catena, id, Action::read, &engine->catena()))
  {
    return error(403, "not allowed to read catena '" + id + "'");
  }
  return {200, repository_.catena_document(id)};
}

Response Service::put_catena(const Principal &who, const std::string &id, const Request &request)
{
  if (!authorize(who, Resource::catena, id, Action::write))
  {
    return error(403, "catena changes require the admin role");
  }
  auto doc      = parse_body(request);
  auto registry = repository_.registry();
  auto catena   = model::parse_catena(doc, registry);
  if (catena.meta.id != id)
  {
    return error(422, "document id '" + catena.meta.id + "' does not match path id '" + id + "'");
  }
  auto report = model::validate_catena(catena, registry, &techniques_);
  if (!report.ok())
  {
    return error(422, "catena rejected", {{"report", report.to_json()}});
  }
  auto s      = slot_entry(id);
  auto result = s->queue.run([&] {
    std::unique_lock lock(s->state);
    auto engine = std::make_shared<engine::CatenaEngine>(catena, registry, techniques_, clock_);
    repository_.put_catena(catena);
    s->engine = std::move(engine);
    s->cache  = std::make_unique<engine::ViewCache>();
    return s->engine->execute(s->payloads);
  });
  return {200, {{"catena", id}, {"report", report.to_json()}, {"execution", result.to_json()}}};
}

Response Service::delete_catena(const Principal &who, const std::string &id)
{
  if (!authorize(who, Resource::catena, id, Action::write))
  {
    return error(403, "catena changes require the admin role");
  }
  if (!repository_.has_catena(id))
  {
    throw NotFound("unknown catena '" + id + "'");
  }
  auto s = slot_entry(id);
  s->queue.run([&] {
    std::unique_lock lock(s->state);
    repository_.delete_catena(id);
    s->engine.reset();
    s->cache = std::make_unique<engine::ViewCache>();
  });
  return {200, {{"catena", id}, {"deleted", true}}};
}

Response Service::list_catenas(const Principal &who)
{
  json ids = json::array();
  for (auto const &id : repository_.catena_ids())
  {
    std::shared_ptr<const engine::CatenaEngine> engine;
    try
    {
      auto s = slot(id);
      std::shared_lock lock(s->state);
      engine = s->engine;
    }
    catch (const std::exception &)
    {
      if (who.is_admin())
      {
        ids.push_back(id);
      }
      continue;
    }
    if (authorize(who, Resource::catena, id, Action::read, &engine->catena()))
    {
      ids.push_back(id);
    }
  }
  return {200, {{"catenas", std::move(ids)}}};
}

Response Service::browse(const Principal &who, const std::string &kind, const Request &request)
{
  auto k = model::component_kind_from_string(kind);
  if (!k)
  {
    throw NotFound("unknown component kind '" + kind + "'");
  }
  if (!authorize(who, Resource::repository, kind, Action::read))
  {
    return error(403, "not allowed to browse the repository");
  }
  std::vector<std::string> tags;
  if (auto it = request.query.find("tag"); it != request.query.end())
  {
    for (auto const &value : it->second)
    {
      std::istringstream in(value);
      std::string        tag;
      while (std::getline(in, tag, ','))
      {
        if (!tag.empty())
        {
          tags.push_back(tag);
        }
      }
    }
  }
  auto reuse = repository_.reuse_counts();
  json out   = json::array();
  for (auto const &record : repository_.lookup_components(*k, tags))
  {
    auto item     = store::to_json(record);
    auto it       = reuse.find(record.id);
    item["reuse"] = it == reuse.end() ? 0 : it->second;
    out.push_back(std::move(item));
  }
  return {200, {{"kind", kind}, {"components", std::move(out)}}};
}

Response Service::register_component(const Principal &who, const std::string &kind, const Request &request)
{
  auto k = model::component_kind_from_string(kind);
  if (!k)
  {
    throw NotFound("unknown component kind '" + kind + "'");
  }
  if (!authorize(who, Resource::repository, kind, Action::write))
  {
    return error(403, "repository changes require the admin role");
  }
  auto record = repository_.register_component(*k, parse_body(request));
  return {200, store::to_json(record)};
}

Response Service::compose(const Principal &who, const Request &request)
{
  if (!authorize(who, Resource::composition, "", Action::write))
  {
    return error(403, "composition requires the admin role");
  }
  auto       doc = parse_body(request);
  JsonCursor cur(doc);
  cur.expect_object();
  gqm::ProjectContext context;
  context.project = cur.at("project").str();
  context.catena  = cur.str_or("catena", "");
  if (auto roles = cur.find("roles"))
  {
    auto list     = roles->str_list();
    context.roles = {list.begin(), list.end()};
  }
  auto plan   = gqm::parse_gqm_plan(cur.at("plan").value());
  auto result = gqm::compose_catena(plan, repository_.registry(), repository_.reuse_counts(), context);
  auto out    = result.to_json();
  out["persisted"] = false;
  return {200, std::move(out)};
}

Response Service::record_experience(const Principal &who, const Request &request)
{
  if (!authorize(who, Resource::experience, "", Action::write))
  {
    return error(403, "recording experience requires the admin role");
  }
  auto       doc = parse_body(request);
  JsonCursor cur(doc);
  cur.expect_object();
  auto                             catena_id = cur.at("catena").str();
  std::vector<gqm::ReferenceEvent> events;
  if (auto ev = cur.find("events"))
  {
    events = gqm::events_from_json(ev->value());
  }
  auto lessons = cur.str_or("lessons", "");

  auto                   s = slot(catena_id);
  gqm::DeviationAnalysis analysis;
  model::VisualizationCatena catena;
  {
    std::shared_lock lock(s->state);
    catena   = s->engine->catena();
    analysis = gqm::analyze_deviations(gqm::indicator_history(catena, s->payloads), events);
  }
  auto package = gqm::package_results(analysis, catena, catena.meta.project, lessons);
  auto id      = repository_.record_experience(package);
  return {200, {{"id", id}, {"package", store::to_json(package)}, {"analysis", analysis.to_json()}}};
}

Response Service::get_experience(const Principal &who, const std::string &project)
{
  if (!who.is_admin())
  {
    return error(403, "reading experience requires the admin role");
  }
  json out = json::array();
  for (auto const &package : repository_.experience(project))
  {
    out.push_back(store::to_json(package));
  }
  return {200, {{"project", project}, {"packages", std::move(out)}}};
}

std::vector<std::string> Service::poll()
{
  std::vector<std::string> pulled;
  for (auto const &id : repository_.catena_ids())
  {
    std::shared_ptr<Slot> s;
    try
    {
      s = slot(id);
    }
    catch (const std::exception &)
    {
      continue;  // unloadable catenas are reported on access
    }
    auto changed = s->queue.run([&] {
      std::unique_lock      lock(s->state);
      auto const           &catena = s->engine->catena();
      auto                  now    = clock_();
      std::set<std::string> changed;
      for (auto const &entry_id : collection::poll_due(catena, s->pulls, now))
      {
        try
        {
          collection::pull_entry(*catena.entry(entry_id), s->pulls[entry_id], connectors_, s->engine->registry(),
                                 s->payloads, now);
          changed.insert(entry_id);
        }
        catch (const std::exception &)
        {
          // Recorded in the pull state; retried on the next due poll.
        }
      }
      if (!changed.empty())
      {
        s->engine->propagate(s->payloads, changed);
      }
      return changed;
    });
    for (auto const &entry : changed)
    {
      pulled.push_back(id + "/" + entry);
    }
  }
  return pulled;
}

}  // namespace watchtower::service
