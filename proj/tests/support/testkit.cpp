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

#include "testkit.hpp"

#include "watchtower/builtin/catalog.hpp"
#include "watchtower/collection/importers.hpp"
#include "watchtower/common/error.hpp"
#include "watchtower/model/catena_io.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>

#ifndef WT_FIXTURE_DIR
#error "WT_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace testkit {

using namespace watchtower;
using namespace watchtower::model;

fs::path fixture(const std::string &relative)
{
  return fs::path(WT_FIXTURE_DIR) / relative;
}

std::string slurp(const fs::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const fs::path &path, const std::string &text)
{
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

TempDir::TempDir()
{
  static std::atomic<int> counter{0};
  std::random_device      rd;
  path_ = fs::temp_directory_path() /
          ("wt-test-" + std::to_string(rd()) + "-" + std::to_string(counter.fetch_add(1)));
  fs::create_directories(path_);
}

TempDir::~TempDir()
{
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string Gen::word(int length)
{
  std::string out;
  for (int i = 0; i < length; ++i)
  {
    out.push_back(static_cast<char>('a' + integer(0, 25)));
  }
  return out;
}

namespace {

constexpr const char *kMixComponents = R"({
  "types": [{"id": "num", "name": "Number", "schema": [{"name": "value", "kind": "number"}]}],
  "functions": [
    {"id": "t.mix1", "name": "mix1", "implementation": "test.mix",
     "inputs": [{"name": "a", "type": "num"}],
     "outputs": [{"name": "out", "type": "num"}],
     "params": [{"name": "salt", "kind": "integer", "default": 0, "min": 0}]},
    {"id": "t.mix2", "name": "mix2", "implementation": "test.mix",
     "inputs": [{"name": "a", "type": "num"}, {"name": "b", "type": "num"}],
     "outputs": [{"name": "out", "type": "num"}],
     "params": [{"name": "salt", "kind": "integer", "default": 0, "min": 0}]},
    {"id": "t.mixn", "name": "mixn", "implementation": "test.mix",
     "inputs": [{"name": "xs", "type": "num", "arity": "many"}],
     "outputs": [{"name": "out", "type": "num"}],
     "params": [{"name": "salt", "kind": "integer", "default": 0, "min": 0}]},
    {"id": "t.split", "name": "split", "implementation": "test.split",
     "inputs": [{"name": "a", "type": "num"}],
     "outputs": [{"name": "hi", "type": "num"}, {"name": "lo", "type": "num"}],
     "params": []}],
  "views": [
    {"id": "t.view", "name": "numbers", "render": "table",
     "inputs": [{"name": "xs", "type": "num", "arity": "many"}]}],
  "forms": [
    {"id": "t.form", "name": "number entry", "mode": "manual-entry", "write": "replace",
     "targets": ["num"], "layout": [{"name": "value", "kind": "number"}]}]
})";

constexpr double kModulus = 1000003.0;

double fold(const techniques::TechniqueInputs &inputs, double salt)
{
  // Position-weighted sum; integers stay exact in a double.
  double acc = salt;
  double k   = 1;
  for (auto const &[port, bodies] : inputs)
  {
    for (auto const &body : bodies)
    {
      acc = std::fmod(acc + k * num_value(body), kModulus);
      k += 1;
    }
  }
  return acc;
}

}  // namespace

json num_body(double value)
{
  return json::array({{{"value", value}}});
}

double num_value(const json &body)
{
  return body.at(0).at("value").get<double>();
}

std::vector<std::pair<ComponentKind, json>> mix_components()
{
  auto                                        doc = json::parse(kMixComponents);
  std::vector<std::pair<ComponentKind, json>> out;
  for (auto const &[key, kind] : {std::pair{"types", ComponentKind::data_type}, {"functions", ComponentKind::function},
                                  {"views", ComponentKind::view}, {"forms", ComponentKind::web_form}})
  {
    for (auto const &body : doc[key])
    {
      out.emplace_back(kind, body);
    }
  }
  return out;
}

ComponentRegistry mix_registry()
{
  ComponentRegistry reg;
  for (auto const &[kind, body] : mix_components())
  {
    reg.add(kind, body);
  }
  return reg;
}

techniques::TechniqueRegistry mix_techniques()
{
  techniques::TechniqueRegistry reg;
  reg.add("test.mix", {{}, [](const techniques::TechniqueInputs &in, const ParamMap &params) {
                         double salt = params.count("salt") ? params.at("salt").get<double>() : 0.0;
                         return techniques::TechniqueOutputs{{"out", num_body(fold(in, salt))}};
                       }});
  reg.add("test.split", {{}, [](const techniques::TechniqueInputs &in, const ParamMap &) {
                           double v = fold(in, 0);
                           return techniques::TechniqueOutputs{{"lo", num_body(v)},
                                                               {"hi", num_body(std::fmod(v * 7 + 1, kModulus))}};
                         }});
  return reg;
}

VisualizationCatena random_catena(Gen &gen, const CatenaShape &shape)
{
  VisualizationCatena c;
  c.meta.id      = "rc-" + gen.word(6);
  c.meta.project = "p-" + gen.word(4);
  c.meta.roles   = {"r1", "r2", "r3"};

  std::set<std::string>    used;
  auto                     fresh = [&](const std::string &prefix) {
    for (;;)
    {
      auto id = prefix + gen.word(3);
      if (used.insert(id).second)
      {
        return id;
      }
    }
  };

  std::vector<std::string> pool;
  int sources = gen.integer(1, shape.max_sources);
  WebFormInstance form{"w", "t.form", {}, {}};
  for (int i = 0; i < sources; ++i)
  {
    auto id = fresh("s");
    c.entries.push_back({id, "num", FormSource{}});
    form.entries.push_back(id);
    pool.push_back(id);
  }
  c.forms.push_back(form);

  // Outputs of function index i, used to guarantee one direct dependency.
  std::vector<std::vector<std::string>> outputs_of;
  int n = gen.integer(1, shape.max_functions);
  for (int i = 0; i < n; ++i)
  {
    FunctionInstance fn;
    fn.id = fresh("f");
    static const std::vector<std::string> specs{"t.mix1", "t.mix2", "t.mixn", "t.split"};
    fn.spec = gen.pick(specs);

    auto any_entry = [&] {
      if (i == 1 && gen.chance(0.5))
      {
        return gen.pick(outputs_of[0]);
      }
      return gen.pick(pool);
    };
    if (fn.spec == "t.mixn")
    {
      std::set<std::string> xs;
      int                   k = gen.integer(1, 3);
      for (int j = 0; j < k; ++j)
      {
        xs.insert(any_entry());
      }
      fn.inputs["xs"] = {xs.begin(), xs.end()};
    }
    else
    {
      fn.inputs["a"] = {any_entry()};
      if (fn.spec == "t.mix2")
      {
        fn.inputs["b"] = {any_entry()};
      }
    }
    if (i == 1)
    {
      // Function 1 always depends on function 0 directly.
      auto &first = fn.inputs.begin()->second;
      first.front() = outputs_of[0].front();
      std::sort(first.begin(), first.end());
      first.erase(std::unique(first.begin(), first.end()), first.end());
    }
    if (fn.spec != "t.split" && gen.chance(0.5))
    {
      fn.params["salt"] = gen.integer(0, 99);
    }

    std::vector<std::string> outs;
    auto ports = fn.spec == "t.split" ? std::vector<std::string>{"hi", "lo"} : std::vector<std::string>{"out"};
    for (auto const &port : ports)
    {
      auto entry = fn.id + "." + port;
      used.insert(entry);
      fn.outputs[port] = entry;
      c.entries.push_back({entry, "num", DerivedSource{fn.id, port}});
      outs.push_back(entry);
    }
    pool.insert(pool.end(), outs.begin(), outs.end());
    outputs_of.push_back(outs);
    c.functions.push_back(std::move(fn));
  }

  int views = gen.integer(0, shape.max_views);
  for (int i = 0; i < views; ++i)
  {
    ViewInstance view;
    view.id   = fresh("v");
    view.spec = "t.view";
    std::set<std::string> xs;
    int                   k = gen.integer(1, 3);
    for (int j = 0; j < k; ++j)
    {
      xs.insert(gen.pick(pool));
    }
    view.inputs["xs"] = {xs.begin(), xs.end()};
    for (auto const &role : {"r1", "r2", "r3"})
    {
      if (gen.chance(0.5))
      {
        view.visible_to.insert(role);
      }
    }
    if (view.visible_to.empty())
    {
      view.visible_to.insert("r1");
    }
    c.views.push_back(std::move(view));
  }

  gen.shuffle(c.functions);
  return c;
}

VisualizationCatena add_back_edge(VisualizationCatena catena, Gen &gen)
{
  std::map<std::string, std::string> producer;  // entry -> function
  for (auto const &fn : catena.functions)
  {
    for (auto const &[port, entry] : fn.outputs)
    {
      producer[entry] = fn.id;
    }
  }
  // Pairs (upstream, downstream) with a direct edge.
  std::vector<std::pair<std::string, std::string>> pairs;
  for (auto const &fn : catena.functions)
  {
    for (auto const &[port, ids] : fn.inputs)
    {
      for (auto const &id : ids)
      {
        if (auto it = producer.find(id); it != producer.end())
        {
          pairs.emplace_back(it->second, fn.id);
        }
      }
    }
  }

  std::string upstream, downstream;
  if (pairs.empty())
  {
    upstream = downstream = gen.pick(catena.functions).id;  // self-loop
  }
  else
  {
    std::tie(upstream, downstream) = gen.pick(pairs);
  }

  auto *down = &*std::find_if(catena.functions.begin(), catena.functions.end(),
                              [&](auto const &f) { return f.id == downstream; });
  auto  back = down->outputs.begin()->second;
  auto *up   = &*std::find_if(catena.functions.begin(), catena.functions.end(),
                              [&](auto const &f) { return f.id == upstream; });
  auto &port = up->inputs.begin()->second;
  if (up->spec == "t.mixn")
  {
    if (std::find(port.begin(), port.end(), back) == port.end())
    {
      port.push_back(back);
      std::sort(port.begin(), port.end());
    }
  }
  else
  {
    port = {back};
  }
  return catena;
}

std::size_t binding_count(const VisualizationCatena &catena)
{
  std::size_t n = 0;
  for (auto const &fn : catena.functions)
  {
    for (auto const &[port, ids] : fn.inputs)
    {
      n += ids.size();
    }
    n += fn.outputs.size();
  }
  return n;
}

techniques::ActivityHierarchy random_hierarchy(Gen &gen, int n)
{
  using namespace std::chrono;
  std::vector<techniques::Activity> acts;
  Date                              origin = sys_days{year{2026} / January / 1};
  for (int i = 0; i < n; ++i)
  {
    techniques::Activity a;
    a.id   = "a" + std::to_string(i);
    a.name = "activity " + std::to_string(i);
    if (i > 0 && !gen.chance(0.05))
    {
      a.parent = "a" + std::to_string(gen.integer(0, i - 1));
    }
    a.start             = origin + days{gen.integer(0, 200)};
    a.end               = a.start + days{gen.integer(0, 120)};
    a.baseline_effort_h = gen.integer(1, 400);
    acts.push_back(std::move(a));
  }
  gen.shuffle(acts);
  return techniques::ActivityHierarchy(std::move(acts));
}

techniques::EffortTable random_effort(Gen &gen, const techniques::ActivityHierarchy &h, int n)
{
  using namespace std::chrono;
  techniques::EffortTable t;
  Date                    origin = sys_days{year{2026} / January / 1};
  for (int i = 0; i < n; ++i)
  {
    auto const &act = gen.pick(h.activities());
    t.records.push_back({"p" + std::to_string(gen.integer(0, 9)), act.id, origin + days{gen.integer(0, 300)},
                         gen.integer(1, 48) * 0.25});
  }
  return t;
}

VisualizationCatena golden_catena()
{
  return parse_catena_text(slurp(fixture("golden/catena.json")), builtin::registry());
}

Timestamp fixed_now()
{
  return at_midnight(std::chrono::sys_days{std::chrono::year{2026} / std::chrono::March / 2});
}

void load_golden_inputs(engine::PayloadStore &store, bool with_effort)
{
  auto plan = collection::import_project_plan(slurp(fixture("golden/data/plan-upload.csv")));
  store.put("plan", {"activity-hierarchy", 0, fixed_now(), techniques::to_body(plan.hierarchy)});
  store.put("baseline", {"control-metric", 0, fixed_now(), techniques::to_body(plan.baseline)});
  if (with_effort)
  {
    auto effort = collection::import_effort_table(slurp(fixture("golden/data/effort.csv")));
    store.put("effort", {"effort-table", 0, fixed_now(), techniques::to_body(effort)});
  }
}

}  // namespace testkit
