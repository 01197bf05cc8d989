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

#include "watchtower/store/repository.hpp"

#include "watchtower/builtin/catalog.hpp"
#include "watchtower/common/error.hpp"
#include "watchtower/model/catena_io.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace watchtower::store {

namespace fs = std::filesystem;

namespace {

const model::ComponentKind kAllKinds[] = {model::ComponentKind::data_type, model::ComponentKind::function,
                                          model::ComponentKind::view, model::ComponentKind::web_form,
                                          model::ComponentKind::dao_package};

/// Numeric file names in `dir`, ascending.
std::vector<std::uint64_t> numbered_files(const fs::path &dir)
{
  std::vector<std::uint64_t> out;
  std::error_code            ec;
  for (auto const &item : fs::directory_iterator(dir, ec))
  {
    auto name = item.path().filename().string();
    if (!name.empty() && std::all_of(name.begin(), name.end(), [](unsigned char c) { return std::isdigit(c); }))
    {
      out.push_back(std::stoull(name));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> subdirectories(const fs::path &dir)
{
  std::vector<std::string> out;
  std::error_code          ec;
  for (auto const &item : fs::directory_iterator(dir, ec))
  {
    if (item.is_directory())
    {
      out.push_back(item.path().filename().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void require_id(const std::string &id, const std::string &what)
{
  if (!model::is_valid_id(id))
  {
    throw InvalidData({"invalid " + what + " id '" + id + "'"});
  }
}

/// Entry keys are one id or `<scope>/<id>`.
void require_entry_key(const std::string &key)
{
  auto slash = key.find('/');
  bool ok    = slash == std::string::npos
                   ? model::is_valid_id(key)
                   : model::is_valid_id(key.substr(0, slash)) && model::is_valid_id(key.substr(slash + 1));
  if (!ok)
  {
    throw InvalidData({"invalid entry key '" + key + "'"});
  }
}

json optional_timestamp(const std::optional<Timestamp> &ts)
{
  return ts ? json(format_timestamp(*ts)) : json(nullptr);
}

}  // namespace

void write_file_atomic(const fs::path &path, const std::string &text)
{
  static std::atomic<unsigned> counter{0};
  fs::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp" + std::to_string(counter++) + "-" +
         std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
    {
      throw Error("cannot write " + tmp.string());
    }
    out << text;
    out.flush();
    if (!out)
    {
      throw Error("cannot write " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw NotFound("cannot read " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

json to_json(const ComponentRecord &record)
{
  return json{{"kind", model::to_string(record.kind)},
              {"id", record.id},
              {"version", record.version},
              {"registered_at", format_timestamp(record.registered_at)},
              {"tags", record.tags},
              {"body", record.body}};
}

ComponentRecord component_record_from_json(const json &doc)
{
  JsonCursor      cur(doc);
  ComponentRecord record;
  auto            kind = cur.at("kind");
  auto            k    = model::component_kind_from_string(kind.str());
  if (!k)
  {
    kind.fail("unknown component kind '" + kind.str() + "'");
  }
  record.kind    = *k;
  record.id      = cur.at("id").str();
  record.version = static_cast<std::uint64_t>(cur.at("version").integer());
  auto at        = cur.at("registered_at");
  auto ts        = parse_timestamp(at.str());
  if (!ts)
  {
    at.fail("invalid timestamp");
  }
  record.registered_at = *ts;
  record.tags          = cur.at("tags").str_list();
  record.body          = cur.at("body").value();
  return record;
}

json to_json(const ExperiencePackage &package)
{
  json deviations = json::array();
  for (auto const &d : package.deviations)
  {
    deviations.push_back({{"indicator", d.indicator},
                          {"first_non_green", optional_timestamp(d.first_non_green)},
                          {"final_status", d.final_status},
                          {"note", d.note}});
  }
  return json{{"project", package.project},
              {"catena", package.catena},
              {"components", package.components},
              {"deviations", std::move(deviations)},
              {"lessons", package.lessons}};
}

ExperiencePackage experience_from_json(const json &doc)
{
  JsonCursor        cur(doc);
  ExperiencePackage package;
  package.project = cur.at("project").str();
  package.catena  = cur.at("catena").str();
  if (auto components = cur.find("components"))
  {
    components->expect_object();
    for (auto const &[id, count] : components->value().items())
    {
      auto c = components->at(id);
      if (c.integer() < 0)
      {
        c.fail("count must be non-negative");
      }
      package.components[id] = static_cast<std::uint64_t>(c.integer());
    }
  }
  if (auto deviations = cur.find("deviations"))
  {
    for (std::size_t i = 0; i < deviations->size(); ++i)
    {
      auto            item = deviations->at(i);
      DeviationReport report;
      report.indicator = item.at("indicator").str();
      if (auto first = item.find("first_non_green"); first && !first->value().is_null())
      {
        auto ts = parse_timestamp(first->str());
        if (!ts)
        {
          first->fail("invalid timestamp");
        }
        report.first_non_green = *ts;
      }
      report.final_status = item.str_or("final_status", "");
      report.note         = item.str_or("note", "");
      package.deviations.push_back(std::move(report));
    }
  }
  package.lessons = cur.str_or("lessons", "");
  return package;
}

// Payloads ----------------------------------------------------------------

FilePayloadStore::FilePayloadStore(fs::path root)
  : root_(std::move(root))
{
  fs::create_directories(root_);
  for (auto const &dir : subdirectories(root_))
  {
    if (auto versions = numbered_files(root_ / dir); !versions.empty())
    {
      latest_[dir] = versions.back();
    }
    for (auto const &entry : subdirectories(root_ / dir))
    {
      if (auto versions = numbered_files(root_ / dir / entry); !versions.empty())
      {
        latest_[dir + "/" + entry] = versions.back();
      }
    }
  }
}

std::uint64_t FilePayloadStore::put(const std::string &entry, engine::Payload payload)
{
  require_entry_key(entry);
  std::unique_lock lock(mutex_);
  auto             version = latest_[entry] + 1;
  payload.version          = version;
  write_file_atomic(root_ / entry / std::to_string(version), canonical_dump(engine::to_json(payload)));
  latest_[entry] = version;
  return version;
}

engine::Payload FilePayloadStore::get(const std::string &entry, std::uint64_t version) const
{
  {
    std::shared_lock lock(mutex_);
    auto             it = latest_.find(entry);
    if (it == latest_.end() || version == 0 || version > it->second)
    {
      throw NotFound("no payload " + entry + "@" + std::to_string(version));
    }
  }
  return engine::payload_from_json(json::parse(read_file(root_ / entry / std::to_string(version))));
}

std::optional<engine::Payload> FilePayloadStore::latest(const std::string &entry) const
{
  auto version = latest_version(entry);
  if (version == 0)
  {
    return std::nullopt;
  }
  return get(entry, version);
}

std::uint64_t FilePayloadStore::latest_version(const std::string &entry) const
{
  std::shared_lock lock(mutex_);
  auto             it = latest_.find(entry);
  return it == latest_.end() ? 0 : it->second;
}

std::vector<std::string> FilePayloadStore::entries() const
{
  std::shared_lock         lock(mutex_);
  std::vector<std::string> out;
  for (auto const &[id, _] : latest_)
  {
    out.push_back(id);
  }
  return out;
}

// Repository --------------------------------------------------------------

Repository::Repository(fs::path root, Clock clock)
  : root_(std::move(root))
  , clock_(std::move(clock))
{
  for (auto kind : kAllKinds)
  {
    fs::create_directories(root_ / "components" / std::string(model::to_string(kind)));
  }
  fs::create_directories(root_ / "catenas");
  fs::create_directories(root_ / "experience");
  payloads_ = std::make_unique<FilePayloadStore>(root_ / "payloads");
}

fs::path Repository::component_dir(model::ComponentKind kind, const std::string &id) const
{
  return root_ / "components" / std::string(model::to_string(kind)) / id;
}

std::uint64_t Repository::latest_component_version(model::ComponentKind kind, const std::string &id) const
{
  auto versions = numbered_files(component_dir(kind, id));
  return versions.empty() ? 0 : versions.back();
}

ComponentRecord Repository::register_component(model::ComponentKind kind, const json &body)
{
  auto issues = model::check_component_body(kind, body);
  if (!issues.empty())
  {
    throw InvalidData(std::move(issues));
  }
  auto id = body.at("id").get<std::string>();
  require_id(id, "component");

  std::unique_lock lock(mutex_);
  auto             latest = latest_component_version(kind, id);
  if (latest > 0)
  {
    auto existing =
        component_record_from_json(json::parse(read_file(component_dir(kind, id) / std::to_string(latest))));
    if (canonical_dump(existing.body) == canonical_dump(body))
    {
      return existing;
    }
  }
  ComponentRecord record{kind, id, latest + 1, body, clock_(), model::component_tags(body)};
  write_file_atomic(component_dir(kind, id) / std::to_string(record.version), canonical_dump(to_json(record)));
  return record;
}

ComponentRecord Repository::component(model::ComponentKind kind, const std::string &id, std::uint64_t version) const
{
  if (!model::is_valid_id(id))
  {
    throw NotFound("unknown component '" + id + "'");
  }
  std::shared_lock lock(mutex_);
  if (version == 0)
  {
    version = latest_component_version(kind, id);
  }
  auto path = component_dir(kind, id) / std::to_string(version);
  if (version == 0 || !fs::exists(path))
  {
    throw NotFound("unknown component " + std::string(model::to_string(kind)) + " '" + id + "'");
  }
  return component_record_from_json(json::parse(read_file(path)));
}

std::vector<ComponentRecord> Repository::component_history(model::ComponentKind kind, const std::string &id) const
{
  std::vector<ComponentRecord> out;
  if (!model::is_valid_id(id))
  {
    return out;
  }
  std::shared_lock lock(mutex_);
  for (auto version : numbered_files(component_dir(kind, id)))
  {
    out.push_back(component_record_from_json(
        json::parse(read_file(component_dir(kind, id) / std::to_string(version)))));
  }
  return out;
}

std::vector<ComponentRecord> Repository::lookup_components(model::ComponentKind kind,
                                                           const std::vector<std::string> &tags) const
{
  std::shared_lock             lock(mutex_);
  std::vector<ComponentRecord> out;
  for (auto const &id : subdirectories(root_ / "components" / std::string(model::to_string(kind))))
  {
    auto latest = latest_component_version(kind, id);
    if (latest == 0)
    {
      continue;
    }
    auto record =
        component_record_from_json(json::parse(read_file(component_dir(kind, id) / std::to_string(latest))));
    bool match = std::all_of(tags.begin(), tags.end(), [&](auto const &tag) {
      return std::find(record.tags.begin(), record.tags.end(), tag) != record.tags.end();
    });
    if (match)
    {
      out.push_back(std::move(record));
    }
  }
  return out;
}

model::ComponentRegistry Repository::registry_unlocked() const
{
  model::ComponentRegistry registry;
  for (auto kind : kAllKinds)
  {
    for (auto const &id : subdirectories(root_ / "components" / std::string(model::to_string(kind))))
    {
      auto latest = latest_component_version(kind, id);
      if (latest > 0)
      {
        auto record =
            component_record_from_json(json::parse(read_file(component_dir(kind, id) / std::to_string(latest))));
        registry.add(kind, record.body);
      }
    }
  }
  return registry;
}

model::ComponentRegistry Repository::registry() const
{
  std::shared_lock lock(mutex_);
  return registry_unlocked();
}

void Repository::put_catena(const model::VisualizationCatena &catena)
{
  require_id(catena.meta.id, "catena");
  std::unique_lock lock(mutex_);
  write_file_atomic(root_ / "catenas" / catena.meta.id, model::serialize_catena(catena));
}

json Repository::catena_document(const std::string &id) const
{
  if (!model::is_valid_id(id))
  {
    throw NotFound("unknown catena '" + id + "'");
  }
  std::shared_lock lock(mutex_);
  auto             path = root_ / "catenas" / id;
  if (!fs::exists(path))
  {
    throw NotFound("unknown catena '" + id + "'");
  }
  return json::parse(read_file(path));
}

model::VisualizationCatena Repository::get_catena(const std::string &id) const
{
  auto doc = catena_document(id);
  return model::parse_catena(doc, registry());
}

bool Repository::has_catena(const std::string &id) const
{
  std::shared_lock lock(mutex_);
  return model::is_valid_id(id) && fs::exists(root_ / "catenas" / id);
}

bool Repository::delete_catena(const std::string &id)
{
  if (!model::is_valid_id(id))
  {
    return false;
  }
  std::unique_lock lock(mutex_);
  return fs::remove(root_ / "catenas" / id);
}

std::vector<std::string> Repository::catena_ids() const
{
  std::shared_lock         lock(mutex_);
  std::vector<std::string> out;
  std::error_code          ec;
  for (auto const &item : fs::directory_iterator(root_ / "catenas", ec))
  {
    auto name = item.path().filename().string();
    if (item.is_regular_file() && model::is_valid_id(name) && name.find(".tmp") == std::string::npos)
    {
      out.push_back(name);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string Repository::record_experience(const ExperiencePackage &package)
{
  require_id(package.project, "project");
  std::unique_lock lock(mutex_);
  auto             path = root_ / "catenas" / package.catena;
  if (!model::is_valid_id(package.catena) || !fs::exists(path))
  {
    throw NotFound("unknown catena '" + package.catena + "'");
  }
  auto doc     = json::parse(read_file(path));
  auto project = doc.at("meta").value("project", std::string{});
  if (project != package.project)
  {
    throw NotFound("catena " + package.catena + " does not belong to project '" + package.project + "'");
  }
  auto                     registry = registry_unlocked();
  std::vector<std::string> unknown;
  for (auto const &[id, count] : package.components)
  {
    if (!registry.function(id) && !registry.view(id) && !registry.form(id) && !registry.dao(id) &&
        !registry.data_type(id))
    {
      unknown.push_back(id);
    }
  }
  if (!unknown.empty())
  {
    std::string names;
    for (auto const &id : unknown)
    {
      names += (names.empty() ? "" : ", ") + id;
    }
    throw NotFound("unknown components: " + names);
  }
  auto dir      = root_ / "experience" / package.project;
  auto existing = numbered_files(dir);
  auto n        = existing.empty() ? 1 : existing.back() + 1;
  write_file_atomic(dir / std::to_string(n), canonical_dump(to_json(package)));
  return package.project + "/" + std::to_string(n);
}

std::vector<ExperiencePackage> Repository::experience(const std::string &project) const
{
  std::vector<ExperiencePackage> out;
  if (!model::is_valid_id(project))
  {
    return out;
  }
  std::shared_lock lock(mutex_);
  auto             dir = root_ / "experience" / project;
  for (auto n : numbered_files(dir))
  {
    out.push_back(experience_from_json(json::parse(read_file(dir / std::to_string(n)))));
  }
  return out;
}

std::vector<std::string> Repository::experience_projects() const
{
  std::shared_lock lock(mutex_);
  return subdirectories(root_ / "experience");
}

std::map<std::string, std::uint64_t> Repository::reuse_counts() const
{
  std::map<std::string, std::uint64_t> counts;
  for (auto const &project : experience_projects())
  {
    for (auto const &package : experience(project))
    {
      for (auto const &[id, _] : package.components)
      {
        ++counts[id];
      }
    }
  }
  return counts;
}

std::size_t seed_builtin(Repository &repository)
{
  std::size_t added = 0;
  for (auto const &[kind, body] : builtin::components())
  {
    auto before = repository.component_history(kind, body.at("id").get<std::string>()).size();
    auto record = repository.register_component(kind, body);
    if (record.version > before)
    {
      ++added;
    }
  }
  return added;
}

}  // namespace watchtower::store
