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

#include "watchtower/cli/commands.hpp"

#include "watchtower/collection/dao.hpp"
#include "watchtower/collection/forms.hpp"
#include "watchtower/common/error.hpp"
#include "watchtower/engine/engine.hpp"
#include "watchtower/engine/views.hpp"
#include "watchtower/gqm/compose.hpp"
#include "watchtower/model/catena_io.hpp"
#include "watchtower/model/validation.hpp"
#include "watchtower/service/http.hpp"
#include "watchtower/store/repository.hpp"
#include "watchtower/techniques/types.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <iostream>
#include <pthread.h>
#include <thread>

namespace watchtower::cli {

namespace fs = std::filesystem;

namespace {

/// Thrown for environment failures; maps to exit code 2.
struct EnvironmentFailure : Error
{
  using Error::Error;
};

std::string read_input(const fs::path &path)
{
  try
  {
    return store::read_file(path);
  }
  catch (const NotFound &e)
  {
    throw EnvironmentFailure(e.what());
  }
}

store::Repository open_repository(const fs::path &repo)
{
  if (!fs::is_directory(repo))
  {
    throw EnvironmentFailure("repository root " + repo.string() + " is not a directory");
  }
  return store::Repository(repo);
}

void write_output(const fs::path &path, const std::string &text)
{
  try
  {
    store::write_file_atomic(path, text);
  }
  catch (const std::exception &e)
  {
    throw EnvironmentFailure(e.what());
  }
}

/// Runs `body`, mapping exceptions onto exit codes and messages on `err`.
template <typename F>
int guarded(std::ostream &err, F &&body)
{
  try
  {
    return body();
  }
  catch (const EnvironmentFailure &e)
  {
    err << "error: " << e.what() << "\n";
    return kEnvironment;
  }
  catch (const fs::filesystem_error &e)
  {
    err << "error: " << e.what() << "\n";
    return kEnvironment;
  }
  catch (const model::CatenaRejected &e)
  {
    err << e.report().to_text();
    return kDomainFailure;
  }
  catch (const InvalidData &e)
  {
    for (auto const &issue : e.issues())
    {
      err << "error: " << issue << "\n";
    }
    return kDomainFailure;
  }
  catch (const std::exception &e)
  {
    err << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
}

json indicator_summary(const model::VisualizationCatena &catena, const engine::PayloadStore &store)
{
  json entries = json::object();
  for (auto const &entry : catena.entries)
  {
    if (entry.data_type != techniques::type_ids::indicator_table)
    {
      continue;
    }
    json counts{{"green", 0}, {"yellow", 0}, {"red", 0}, {"no-baseline", 0}};
    json activities = json::object();
    auto payload    = store.latest(entry.id);
    if (payload)
    {
      for (auto const &row : techniques::indicators_from_body(payload->body).rows)
      {
        auto status = std::string(techniques::to_string(row.status));
        counts[status] = counts[status].get<int>() + 1;
        activities[row.activity] = status;
      }
    }
    entries[entry.id] = {{"version", payload ? payload->version : 0},
                         {"counts", std::move(counts)},
                         {"activities", std::move(activities)}};
  }
  return json{{"catena", catena.meta.id}, {"indicators", std::move(entries)}};
}

}  // namespace

int cmd_validate(const fs::path &catena_file, const fs::path &repo, std::ostream &out, std::ostream &err)
{
  return guarded(err, [&] {
    auto text       = read_input(catena_file);
    auto repository = open_repository(repo);
    auto registry   = repository.registry();
    auto catena     = model::parse_catena_text(text, registry);
    auto techniques = techniques::builtin_techniques();
    auto report     = model::validate_catena(catena, registry, &techniques);
    out << report.to_text();
    if (report.ok())
    {
      out << "ok " << catena.meta.id << "\n";
      return kSuccess;
    }
    return kDomainFailure;
  });
}

int cmd_run(const fs::path &catena_file, const fs::path &repo, const fs::path &data_dir, const fs::path &out_dir,
            std::ostream &out, std::ostream &err)
{
  return guarded(err, [&] {
    auto text = read_input(catena_file);
    if (!fs::is_directory(data_dir))
    {
      throw EnvironmentFailure("data directory " + data_dir.string() + " is not a directory");
    }
    auto repository = open_repository(repo);
    auto registry   = repository.registry();
    auto catena     = model::parse_catena_text(text, registry);
    // Offline runs are reproducible: every payload carries the same stamp.
    Clock                epoch = [] { return Timestamp{}; };
    engine::CatenaEngine engine(catena, registry, techniques::builtin_techniques(), epoch);

    engine::MemoryPayloadStore store;
    std::vector<std::string>   problems;
    for (auto const &form : catena.forms)
    {
      auto const *spec = registry.form(form.spec);
      bool        file = spec->mode == model::FormMode::file_import;
      auto        path = data_dir / (form.id + (file ? ".csv" : ".json"));
      if (!fs::exists(path))
      {
        continue;
      }
      collection::FormSubmission submission;
      submission.form         = form.id;
      submission.submitted_by = "cli";
      try
      {
        auto content = read_input(path);
        if (file)
        {
          submission.file_content = content;
        }
        else
        {
          submission.values = model::parse_json_text(content);
        }
        collection::submit_form(submission, catena, registry, store);
      }
      catch (const InvalidData &e)
      {
        for (auto const &issue : e.issues())
        {
          problems.push_back(path.filename().string() + ": " + issue);
        }
      }
      catch (const EnvironmentFailure &)
      {
        throw;
      }
      catch (const std::exception &e)
      {
        problems.push_back(path.filename().string() + ": " + e.what());
      }
    }
    auto connectors = collection::builtin_connectors(data_dir);
    for (auto const &entry : catena.entries)
    {
      if (!entry.dao())
      {
        continue;
      }
      collection::PullState state;
      try
      {
        collection::pull_entry(entry, state, connectors, registry, store, epoch());
      }
      catch (const std::exception &e)
      {
        problems.push_back(entry.id + ": " + e.what());
      }
    }

    auto result = engine.execute(store);
    for (auto const &id : result.executed)
    {
      auto const &st = result.statuses.at(id);
      if (st.status == engine::RunStatus::skipped_missing_input)
      {
        problems.push_back("missing input: " + id + ": " + st.reason);
      }
      else if (st.status == engine::RunStatus::failed)
      {
        problems.push_back("failed: " + id + ": " + st.reason);
      }
    }

    std::set<std::string> roles;
    for (auto const &view : catena.views)
    {
      roles.insert(view.visible_to.begin(), view.visible_to.end());
    }
    for (auto const &model : engine::refresh_views(catena, registry, store, roles))
    {
      write_output(out_dir / "views" / (model.view + ".json"), canonical_dump(model.to_json()) + "\n");
    }
    write_output(out_dir / "indicators.json", canonical_dump(indicator_summary(catena, store)) + "\n");
    write_output(out_dir / "run.json", canonical_dump(result.to_json()) + "\n");

    for (auto const &problem : problems)
    {
      err << "error: " << problem << "\n";
    }
    for (auto const &id : result.executed)
    {
      out << id << " " << engine::to_string(result.statuses.at(id).status) << "\n";
    }
    return problems.empty() ? kSuccess : kDomainFailure;
  });
}

int cmd_seed(const fs::path &repo, std::ostream &out, std::ostream &err)
{
  return guarded(err, [&] {
    std::error_code ec;
    fs::create_directories(repo, ec);
    auto repository = open_repository(repo);
    auto added      = store::seed_builtin(repository);
    out << "seeded " << added << " new component records into " << repo.string() << "\n";
    return kSuccess;
  });
}

int cmd_compose(const fs::path &plan_file, const fs::path &repo, const std::string &project,
                const fs::path &out_file, std::ostream &out, std::ostream &err)
{
  return guarded(err, [&] {
    auto text       = read_input(plan_file);
    auto repository = open_repository(repo);
    auto plan       = gqm::parse_gqm_plan_text(text);

    gqm::ProjectContext context;
    context.project = project.empty() ? plan_file.stem().string() : project;
    auto result     = gqm::compose_catena(plan, repository.registry(), repository.reuse_counts(), context);
    auto document   = model::serialize_catena(result.candidate);
    if (out_file.empty())
    {
      out << document;
    }
    else
    {
      write_output(out_file, document);
    }
    auto &report = out_file.empty() ? err : out;
    for (auto const &[metric, coverage] : result.coverage)
    {
      report << "metric " << metric << (coverage.matched ? " matched" : " unmatched");
      for (auto const &c : coverage.matched ? coverage.components : coverage.missing)
      {
        report << " " << c;
      }
      report << "\n";
    }
    return kSuccess;
  });
}

int cmd_serve(const fs::path &config_file, std::ostream &out, std::ostream &err)
{
  return guarded(err, [&]() -> int {
    auto text = read_input(config_file);
    json config;
    try
    {
      config = model::parse_json_text(text);
    }
    catch (const std::exception &e)
    {
      throw EnvironmentFailure("bad config: " + std::string(e.what()));
    }
    auto base     = config_file.parent_path();
    auto resolve  = [&](const fs::path &p) { return p.is_relative() ? base / p : p; };
    std::string host;
    int         port = 0;
    fs::path    store_root, credentials_file, data_root;
    int         poll_seconds = 0;
    try
    {
      JsonCursor cur(config);
      host             = cur.str_or("bind", "127.0.0.1");
      port             = static_cast<int>(cur.at("port").integer());
      store_root       = resolve(cur.at("store").str());
      credentials_file = resolve(cur.at("credentials").str());
      data_root        = cur.has("data_root") ? resolve(cur.at("data_root").str()) : store_root;
      poll_seconds     = cur.has("poll_seconds") ? static_cast<int>(cur.at("poll_seconds").integer()) : 60;
      if (port < 0 || port > 65535)
      {
        cur.at("port").fail("port out of range");
      }
    }
    catch (const ParseError &e)
    {
      throw EnvironmentFailure("bad config: " + std::string(e.what()));
    }
    service::CredentialStore credentials;
    try
    {
      credentials = service::CredentialStore::from_json(model::parse_json_text(read_input(credentials_file)));
    }
    catch (const EnvironmentFailure &)
    {
      throw;
    }
    catch (const std::exception &e)
    {
      throw EnvironmentFailure("bad credentials file: " + std::string(e.what()));
    }
    fs::create_directories(store_root);
    store::Repository repository(store_root);
    service::Service  svc(repository, std::move(credentials), techniques::builtin_techniques(),
                          collection::builtin_connectors(data_root));

    // Signals are taken synchronously by a watcher thread, which then stops
    // the server from ordinary (non-handler) context.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    service::HttpServer server(svc);
    if (!server.bind(host, port))
    {
      throw EnvironmentFailure("cannot bind " + host + ":" + std::to_string(port));
    }
    out << "listening on " << host << ":" << server.port() << std::endl;

    std::atomic<bool> done{false};
    std::thread       watcher([&] {
      timespec tick{0, 200'000'000};
      while (!done)
      {
        if (sigtimedwait(&signals, nullptr, &tick) > 0)
        {
          server.stop();
          return;
        }
      }
    });
    server.listen(std::chrono::seconds{poll_seconds});
    done = true;
    watcher.join();
    return kSuccess;
  });
}

int run_cli(int argc, char **argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"watchtower: goal-oriented project control center"};
  app.require_subcommand(1);

  std::string file, repo = ".", data, out_dir = "out", config, project, out_file;

  auto *validate = app.add_subcommand("validate", "Validate a catena document");
  validate->add_option("catena", file, "Catena document")->required();
  validate->add_option("--repo", repo, "Repository root");

  auto *run = app.add_subcommand("run", "Import data, execute a catena and write view models");
  run->add_option("catena", file, "Catena document")->required();
  run->add_option("--repo", repo, "Repository root");
  run->add_option("--data", data, "Data directory")->required();
  run->add_option("--out", out_dir, "Output directory");

  auto *seed = app.add_subcommand("seed", "Register the built-in components");
  seed->add_option("--repo", repo, "Repository root");

  auto *compose = app.add_subcommand("compose", "Compose a candidate catena from a GQM plan");
  compose->add_option("plan", file, "GQM plan document")->required();
  compose->add_option("--repo", repo, "Repository root");
  compose->add_option("--project", project, "Project id (default: plan file name)");
  compose->add_option("--out", out_file, "Candidate catena file (default: stdout)");

  auto *serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--config", config, "Service configuration file")->required();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    out << app.help();
    return kSuccess;
  }
  catch (const CLI::ParseError &e)
  {
    err << "error: " << e.what() << "\n" << app.help();
    return kEnvironment;
  }

  if (validate->parsed())
  {
    return cmd_validate(file, repo, out, err);
  }
  if (run->parsed())
  {
    return cmd_run(file, repo, data, out_dir, out, err);
  }
  if (seed->parsed())
  {
    return cmd_seed(repo, out, err);
  }
  if (compose->parsed())
  {
    return cmd_compose(file, repo, project, out_file, out, err);
  }
  return cmd_serve(config, out, err);
}

}  // namespace watchtower::cli
