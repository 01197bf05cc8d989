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
#include "watchtower/common/error.hpp"
#include "watchtower/engine/engine.hpp"
#include "watchtower/engine/graph.hpp"
#include "watchtower/engine/update_queue.hpp"
#include "watchtower/engine/views.hpp"
#include "watchtower/model/catena_io.hpp"
#include "watchtower/techniques/techniques.hpp"

#include <gtest/gtest.h>

using namespace watchtower;
using namespace watchtower::engine;
using model::VisualizationCatena;

namespace {

CatenaEngine golden_engine(VisualizationCatena c = testkit::golden_catena())
{
  return CatenaEngine(std::move(c), builtin::registry(), techniques::builtin_techniques(), testkit::fixed_now);
}

CatenaEngine mix_engine(const VisualizationCatena &c)
{
  return CatenaEngine(c, testkit::mix_registry(), testkit::mix_techniques(), testkit::fixed_now);
}

NodeId E(std::string id)
{
  return {NodeKind::entry, std::move(id)};
}

NodeId F(std::string id)
{
  return {NodeKind::function, std::move(id)};
}

// Forward closure computed straight from the catena, without the graph module.
std::set<std::string> reachable_oracle(const VisualizationCatena &c, std::set<std::string> reached)
{
  std::set<std::string> fns;
  for (bool grew = true; grew;)
  {
    grew = false;
    for (auto const &fn : c.functions)
    {
      if (fns.count(fn.id))
      {
        continue;
      }
      for (auto const &[port, ids] : fn.inputs)
      {
        for (auto const &id : ids)
        {
          if (reached.count(id) && !fns.count(fn.id))
          {
            fns.insert(fn.id);
            for (auto const &[p, out] : fn.outputs)
            {
              reached.insert(out);
            }
            grew = true;
          }
        }
      }
    }
  }
  return fns;
}

void fill_sources(const VisualizationCatena &c, PayloadStore &store, testkit::Gen &gen)
{
  for (auto const &e : c.entries)
  {
    if (e.is_form_managed())
    {
      store.put(e.id, {"num", 0, testkit::fixed_now(), testkit::num_body(gen.integer(0, 1000))});
    }
  }
}

std::map<std::string, json> latest_bodies(const PayloadStore &store)
{
  std::map<std::string, json> out;
  for (auto const &id : store.entries())
  {
    out[id] = store.latest(id)->body;
  }
  return out;
}

}  // namespace

TEST(Graph, GoldenEdges)
{
  auto g = build_dependency_graph(testkit::golden_catena());
  std::set<Edge> want{{E("effort"), F("agg"), "effort"},        {E("plan"), F("agg"), "hierarchy"},
                      {F("agg"), E("actual-effort"), "actual"}, {E("actual-effort"), F("trc"), "actual"},
                      {E("baseline"), F("trc"), "baseline"},    {F("trc"), E("effort-deviation"), "indicators"}};
  EXPECT_EQ(g.edges, want);
  EXPECT_EQ(g.nodes.size(), 7u);
  EXPECT_EQ(g.consumers("actual-effort"), std::set<std::string>{"trc"});
  EXPECT_EQ(g.outputs("agg"), std::set<std::string>{"actual-effort"});
}

TEST(Graph, NoFunctionsMeansNoEdges)
{
  auto c = testkit::golden_catena();
  c.functions.clear();
  c.views.clear();
  c.entries.erase(std::remove_if(c.entries.begin(), c.entries.end(), [](auto const &e) { return e.is_derived(); }),
                  c.entries.end());
  auto g = build_dependency_graph(c);
  EXPECT_TRUE(g.edges.empty());
  EXPECT_EQ(g.nodes.size(), 3u);
  for (auto const &n : g.nodes)
  {
    EXPECT_EQ(n.kind, NodeKind::entry);
  }
  EXPECT_TRUE(execution_order(g).empty());
}

TEST(Graph, EdgeCountEqualsBindingCount)
{
  for (std::uint64_t seed = 1; seed <= 50; ++seed)
  {
    testkit::Gen gen(seed);
    auto         c = testkit::random_catena(gen);
    EXPECT_EQ(build_dependency_graph(c).edges.size(), testkit::binding_count(c)) << "seed " << seed;
  }
}

TEST(Order, GoldenAndTieBreak)
{
  EXPECT_EQ(execution_order(build_dependency_graph(testkit::golden_catena())),
            (std::vector<std::string>{"agg", "trc"}));

  DependencyGraph g;
  g.nodes = {F("b"), F("a"), E("x")};
  g.edges = {{E("x"), F("b"), "p"}, {E("x"), F("a"), "p"}};
  EXPECT_EQ(execution_order(g), (std::vector<std::string>{"a", "b"}));
}

TEST(Order, RespectsEveryEdge)
{
  for (std::uint64_t seed = 1; seed <= 50; ++seed)
  {
    testkit::Gen gen(seed);
    auto         c     = testkit::random_catena(gen, {30, 6, 0});
    auto         g     = build_dependency_graph(c);
    auto         order = execution_order(g);
    ASSERT_EQ(order.size(), c.functions.size());
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i)
    {
      pos[order[i]] = i;
    }
    // Oracle: exhaustive scan of function -> entry -> function paths.
    for (auto const &producer : c.functions)
    {
      for (auto const &[port, out] : producer.outputs)
      {
        for (auto const &consumer : c.functions)
        {
          for (auto const &[p, ids] : consumer.inputs)
          {
            if (std::count(ids.begin(), ids.end(), out))
            {
              EXPECT_LT(pos[producer.id], pos[consumer.id]) << "seed " << seed;
            }
          }
        }
      }
    }
  }
}

TEST(Order, CycleIsAnError)
{
  DependencyGraph g;
  g.nodes = {F("a"), F("b"), E("x"), E("y")};
  g.edges = {{F("a"), E("x"), "o"}, {E("x"), F("b"), "i"}, {F("b"), E("y"), "o"}, {E("y"), F("a"), "i"}};
  EXPECT_THROW(execution_order(g), Error);
}

TEST(Engine, RejectsInvalidCatena)
{
  auto c = testkit::golden_catena();
  c.functions[0].inputs.erase(c.functions[0].inputs.begin());
  EXPECT_THROW(golden_engine(c), model::CatenaRejected);
}

TEST(Engine, GoldenEndToEnd)
{
  auto               engine = golden_engine();
  MemoryPayloadStore store;
  testkit::load_golden_inputs(store);
  auto result = engine.execute(store);
  EXPECT_TRUE(result.ok());
  EXPECT_EQ(result.executed, (std::vector<std::string>{"agg", "trc"}));
  EXPECT_EQ(result.statuses.at("agg").status, RunStatus::ok);
  EXPECT_EQ(result.statuses.at("trc").status, RunStatus::ok);
  EXPECT_EQ(store.latest_version("effort-deviation"), 1u);
  EXPECT_EQ(result.written_versions.at("effort-deviation"), 1u);
  EXPECT_EQ(result.stale_views, std::set<std::string>{"effort-chart"});

  auto actual = techniques::metric_from_body(store.latest("actual-effort")->body);
  std::map<std::string, double> sums{{"A1", 32}, {"A2", 36}, {"A", 68}, {"B", 30}, {"P", 98}};
  EXPECT_EQ(actual.values, sums);

  auto table = techniques::indicators_from_body(store.latest("effort-deviation")->body);
  std::map<std::string, techniques::Status> want{{"A1", techniques::Status::green},
                                                 {"A2", techniques::Status::yellow},
                                                 {"A", techniques::Status::yellow},
                                                 {"B", techniques::Status::green},
                                                 {"P", techniques::Status::green}};
  std::map<std::string, techniques::Status> got;
  for (auto const &row : table.rows)
  {
    got[row.activity] = row.status;
  }
  EXPECT_EQ(got, want);
}

TEST(Engine, MissingInputSkipsDownstream)
{
  auto               engine = golden_engine();
  MemoryPayloadStore store;
  testkit::load_golden_inputs(store, false);
  auto result = engine.execute(store);
  EXPECT_FALSE(result.ok());
  EXPECT_EQ(result.statuses.at("agg").status, RunStatus::skipped_missing_input);
  EXPECT_EQ(result.statuses.at("trc").status, RunStatus::skipped_missing_input);
  EXPECT_NE(result.statuses.at("agg").reason.find("effort"), std::string::npos);
  EXPECT_EQ(store.latest_version("effort-deviation"), 0u);
}

TEST(Engine, PoisonedBaselineFailsOnlyTheCheck)
{
  auto               engine = golden_engine();
  MemoryPayloadStore store;
  testkit::load_golden_inputs(store);
  store.put("baseline", {"control-metric", 0, testkit::fixed_now(),
                         json::parse(R"([{"key":"A","value":1},{"key":"A","value":2}])")});
  auto result = engine.execute(store);
  EXPECT_EQ(result.statuses.at("agg").status, RunStatus::ok);
  EXPECT_EQ(result.statuses.at("trc").status, RunStatus::failed);
  EXPECT_FALSE(result.statuses.at("trc").reason.empty());
  EXPECT_EQ(store.latest_version("actual-effort"), 1u);
  EXPECT_EQ(store.latest_version("effort-deviation"), 0u);
}

TEST(Engine, FailureSkipsDependentsButNotSiblings)
{
  auto reg  = testkit::mix_registry();
  auto tech = testkit::mix_techniques();
  tech.add("test.mix", {{}, [](const techniques::TechniqueInputs &in, const model::ParamMap &p) {
                          if (p.count("salt") && p.at("salt") == 13)
                          {
                            throw TechniqueError("unlucky");
                          }
                          double v = 0;
                          for (auto const &[port, bodies] : in)
                          {
                            for (auto const &b : bodies)
                            {
                              v += testkit::num_value(b);
                            }
                          }
                          return techniques::TechniqueOutputs{{"out", testkit::num_body(v)}};
                        }});
  VisualizationCatena c;
  c.meta    = {"x", "p", {"r"}};
  c.entries = {{"s", "num", model::FormSource{}},
               {"bad.out", "num", model::DerivedSource{"bad", "out"}},
               {"after.out", "num", model::DerivedSource{"after", "out"}},
               {"side.out", "num", model::DerivedSource{"side", "out"}}};
  c.functions = {{"bad", "t.mix1", {{"a", {"s"}}}, {{"salt", 13}}, {{"out", "bad.out"}}},
                 {"after", "t.mix1", {{"a", {"bad.out"}}}, {}, {{"out", "after.out"}}},
                 {"side", "t.mix1", {{"a", {"s"}}}, {}, {{"out", "side.out"}}}};
  CatenaEngine       engine(c, reg, tech, testkit::fixed_now);
  MemoryPayloadStore store;
  store.put("s", {"num", 0, testkit::fixed_now(), testkit::num_body(4)});
  auto r = engine.execute(store);
  EXPECT_EQ(r.statuses.at("bad").status, RunStatus::failed);
  EXPECT_EQ(r.statuses.at("bad").reason, "unlucky");
  EXPECT_EQ(r.statuses.at("after").status, RunStatus::skipped_missing_input);
  EXPECT_EQ(r.statuses.at("side").status, RunStatus::ok);
  EXPECT_EQ(testkit::num_value(store.latest("side.out")->body), 4);
}

TEST(Engine, OutputsAreCheckedAgainstTheirType)
{
  auto tech = testkit::mix_techniques();
  tech.add("test.mix", {{}, [](const techniques::TechniqueInputs &, const model::ParamMap &) {
                          return techniques::TechniqueOutputs{{"out", json::parse(R"([{"value":"nan"}])")}};
                        }});
  VisualizationCatena c;
  c.meta      = {"x", "p", {"r"}};
  c.entries   = {{"s", "num", model::FormSource{}}, {"f.out", "num", model::DerivedSource{"f", "out"}}};
  c.functions = {{"f", "t.mix1", {{"a", {"s"}}}, {}, {{"out", "f.out"}}}};
  CatenaEngine       engine(c, testkit::mix_registry(), tech, testkit::fixed_now);
  MemoryPayloadStore store;
  store.put("s", {"num", 0, testkit::fixed_now(), testkit::num_body(1)});
  auto r = engine.execute(store);
  EXPECT_EQ(r.statuses.at("f").status, RunStatus::failed);
  EXPECT_EQ(store.latest_version("f.out"), 0u);
}

TEST(Propagate, GoldenBaselineChangeRerunsOnlyTheCheck)
{
  auto               engine = golden_engine();
  MemoryPayloadStore store;
  testkit::load_golden_inputs(store);
  engine.execute(store);
  auto agg_before = store.latest_version("actual-effort");

  store.put("baseline", {"control-metric", 0, testkit::fixed_now(), techniques::to_body(techniques::ControlMetric{{{"A", 68}}})});
  auto r = engine.propagate(store, {"baseline"});
  EXPECT_EQ(r.executed, std::vector<std::string>{"trc"});
  EXPECT_EQ(store.latest_version("actual-effort"), agg_before);
  EXPECT_EQ(store.latest_version("effort-deviation"), 2u);
  EXPECT_EQ(r.stale_views, std::set<std::string>{"effort-chart"});
}

TEST(Propagate, UnboundEntryRerunsNothing)
{
  auto c = testkit::golden_catena();
  c.entries.push_back({"notes", "control-metric", model::FormSource{}});
  auto               engine = golden_engine(c);
  MemoryPayloadStore store;
  testkit::load_golden_inputs(store);
  engine.execute(store);
  auto r = engine.propagate(store, {"notes"});
  EXPECT_TRUE(r.executed.empty());
  EXPECT_TRUE(r.stale_views.empty());
}

TEST(Propagate, MatchesFullExecutionAndReachability)
{
  for (std::uint64_t seed = 1; seed <= 60; ++seed)
  {
    SCOPED_TRACE("seed " + std::to_string(seed));
    testkit::Gen gen(seed);
    auto         c      = testkit::random_catena(gen);
    auto         engine = mix_engine(c);

    MemoryPayloadStore incremental;
    fill_sources(c, incremental, gen);
    ASSERT_TRUE(engine.execute(incremental).ok());

    std::set<std::string> changed;
    for (auto const &e : c.entries)
    {
      if (e.is_form_managed() && gen.chance(0.4))
      {
        changed.insert(e.id);
        incremental.put(e.id, {"num", 0, testkit::fixed_now(), testkit::num_body(gen.integer(0, 1000))});
      }
    }
    auto r = engine.propagate(incremental, changed);

    auto                  oracle = reachable_oracle(c, changed);
    std::set<std::string> ran(r.executed.begin(), r.executed.end());
    EXPECT_EQ(ran, oracle);
    std::vector<std::string> restricted;
    for (auto const &id : engine.order())
    {
      if (oracle.count(id))
      {
        restricted.push_back(id);
      }
    }
    EXPECT_EQ(r.executed, restricted);

    MemoryPayloadStore full;
    for (auto const &e : c.entries)
    {
      if (e.is_form_managed())
      {
        full.put(e.id, *incremental.latest(e.id));
      }
    }
    engine.execute(full);
    EXPECT_EQ(latest_bodies(incremental), latest_bodies(full));
  }
}

TEST(Engine, DeterministicAndVersionsMonotone)
{
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
  {
    testkit::Gen       gen(seed);
    auto               c      = testkit::random_catena(gen);
    auto               engine = mix_engine(c);
    testkit::Gen       values(seed * 31);
    MemoryPayloadStore a;
    fill_sources(c, a, values);
    MemoryPayloadStore b(a.history());
    auto               ra = engine.execute(a);
    auto               rb = engine.execute(b);
    EXPECT_EQ(ra.statuses, rb.statuses);
    EXPECT_EQ(a.history(), b.history());

    auto before = a.history();
    engine.execute(a);
    for (auto const &[entry, versions] : a.history())
    {
      for (std::size_t i = 0; i < versions.size(); ++i)
      {
        EXPECT_EQ(versions[i].version, i + 1);
      }
      if (before.count(entry))
      {
        // Append-only: earlier versions unchanged.
        EXPECT_TRUE(std::equal(before[entry].begin(), before[entry].end(), versions.begin()));
      }
    }
  }
}

TEST(Payloads, MemoryStoreBasics)
{
  MemoryPayloadStore s;
  EXPECT_EQ(s.latest_version("x"), 0u);
  EXPECT_FALSE(s.latest("x"));
  EXPECT_THROW(s.get("x", 1), NotFound);
  EXPECT_EQ(s.put("x", {"num", 42, {}, testkit::num_body(1)}), 1u);
  EXPECT_EQ(s.put("x", {"num", 0, {}, testkit::num_body(2)}), 2u);
  EXPECT_EQ(testkit::num_value(s.latest("x")->body), 2);
  EXPECT_EQ(testkit::num_value(s.get("x", 1).body), 1);
  EXPECT_THROW(s.get("x", 3), NotFound);
  EXPECT_EQ(s.entries(), std::vector<std::string>{"x"});
}

TEST(Payloads, ScopedStoresDoNotInterfere)
{
  MemoryPayloadStore base;
  ScopedPayloadStore one(base, "one"), two(base, "two");
  one.put("x", {"num", 0, {}, testkit::num_body(1)});
  EXPECT_EQ(two.latest_version("x"), 0u);
  EXPECT_EQ(one.entries(), std::vector<std::string>{"x"});
  EXPECT_EQ(base.entries(), std::vector<std::string>{"one/x"});
}

TEST(Payloads, JsonRoundTrip)
{
  Payload p{"num", 3, testkit::fixed_now(), testkit::num_body(5)};
  EXPECT_EQ(payload_from_json(to_json(p)), p);
}

TEST(Views, GoldenForProjectManager)
{
  auto               c = testkit::golden_catena();
  MemoryPayloadStore store;
  testkit::load_golden_inputs(store);
  golden_engine().execute(store);

  auto models = refresh_views(c, builtin::registry(), store, {"project-manager"});
  ASSERT_EQ(models.size(), 1u);
  auto const &m = models.front();
  EXPECT_EQ(m.render, model::RenderKind::bar_chart_drilldown);
  EXPECT_EQ(m.status, ViewStatus::ok);
  EXPECT_EQ(m.data["series"], json::parse(R"(["planned","actual","deviation"])"));
  EXPECT_EQ(m.data["roots"], json::parse(R"(["P"])"));
  EXPECT_EQ(m.input_versions.at("effort-deviation"), 1u);
  auto doc = m.to_json();
  EXPECT_EQ(doc["render"], "bar-chart-drilldown");
  EXPECT_EQ(doc["status"], "ok");
}

TEST(Views, RoleFilterAndNoData)
{
  auto               c = testkit::golden_catena();
  MemoryPayloadStore store;
  EXPECT_TRUE(refresh_views(c, builtin::registry(), store, {"developer"}).empty());
  EXPECT_TRUE(refresh_views(c, builtin::registry(), store, {}).empty());
  auto models = refresh_views(c, builtin::registry(), store, {"project-manager"});
  ASSERT_EQ(models.size(), 1u);
  EXPECT_EQ(models[0].status, ViewStatus::no_data);
}

TEST(Views, ChildrenEmbeddedInSlotOrder)
{
  auto doc = json::parse(testkit::slurp(testkit::fixture("golden/catena.json")));
  doc["views"].push_back(json::parse(R"({"id": "a-details", "spec": "view.indicator-table",
      "bindings": {"indicators": "effort-deviation"}, "visible_to": ["project-manager"]})"));
  doc["views"].push_back(json::parse(R"({"id": "lights", "spec": "view.indicator-lights",
      "bindings": {"indicators": "effort-deviation"},
      "children": {"details": "a-details", "chart": "effort-chart"}, "visible_to": ["project-manager"]})"));
  auto c = model::parse_catena(doc, builtin::registry());
  ASSERT_TRUE(model::validate_catena(c, builtin::registry()).ok());

  MemoryPayloadStore store;
  testkit::load_golden_inputs(store);
  golden_engine(c).execute(store);
  auto models = refresh_views(c, builtin::registry(), store, {"project-manager"});
  ASSERT_EQ(models.size(), 3u);
  auto lights = std::find_if(models.begin(), models.end(), [](auto const &m) { return m.view == "lights"; });
  ASSERT_NE(lights, models.end());
  EXPECT_TRUE(lights->top_level);
  ASSERT_EQ(lights->children.size(), 2u);
  EXPECT_EQ(lights->children[0].first, "chart");
  EXPECT_EQ(lights->children[0].second.view, "effort-chart");
  EXPECT_EQ(lights->children[1].first, "details");
  EXPECT_EQ(lights->children[1].second.view, "a-details");
  EXPECT_EQ(lights->data["counts"]["yellow"], 2);
  for (auto const &m : models)
  {
    EXPECT_EQ(m.top_level, m.view == "lights");
  }
}

TEST(Views, CacheRendersOnlyOnNewInputs)
{
  auto               c = testkit::golden_catena();
  MemoryPayloadStore store;
  testkit::load_golden_inputs(store);
  auto engine = golden_engine();
  engine.execute(store);

  ViewCache cache;
  auto      first = cache.refresh(c, builtin::registry(), store, {"project-manager"});
  EXPECT_EQ(cache.renders(), 1u);
  auto again = cache.refresh(c, builtin::registry(), store, {"project-manager"});
  EXPECT_EQ(cache.renders(), 1u);
  EXPECT_EQ(canonical_dump(first[0].to_json()), canonical_dump(again[0].to_json()));
  EXPECT_TRUE(cache.stale(c, store).empty());

  store.put("baseline", {"control-metric", 0, testkit::fixed_now(), techniques::to_body(techniques::ControlMetric{{{"A1", 10}}})});
  engine.propagate(store, {"baseline"});
  EXPECT_EQ(cache.stale(c, store), std::set<std::string>{"effort-chart"});
  auto fresh = cache.refresh(c, builtin::registry(), store, {"project-manager"});
  EXPECT_EQ(cache.renders(), 2u);
  EXPECT_NE(canonical_dump(first[0].to_json()), canonical_dump(fresh[0].to_json()));
}

TEST(Views, BarChartActualsAreSubtreeSums)
{
  MemoryPayloadStore store;
  testkit::load_golden_inputs(store);
  golden_engine().execute(store);
  auto m = refresh_views(testkit::golden_catena(), builtin::registry(), store, {"project-manager"}).at(0);
  std::map<std::string, double> actual;
  for (auto const &n : m.data["nodes"])
  {
    actual[n["id"].get<std::string>()] = n["actual"].get<double>();
  }
  for (auto const &n : m.data["nodes"])
  {
    if (!n["children"].empty())
    {
      double sum = 0;
      for (auto const &child : n["children"])
      {
        sum += actual[child.get<std::string>()];
      }
      EXPECT_EQ(n["actual"].get<double>(), sum) << n["id"];
    }
  }
}

TEST(Queue, RunsJobsInSubmissionOrder)
{
  UpdateQueue                    q;
  std::vector<int>               seen;
  std::vector<std::future<void>> pending;
  for (int i = 0; i < 100; ++i)
  {
    pending.push_back(q.submit([&seen, i] { seen.push_back(i); }));
  }
  for (auto &f : pending)
  {
    f.get();
  }
  ASSERT_EQ(seen.size(), 100u);
  for (int i = 0; i < 100; ++i)
  {
    EXPECT_EQ(seen[i], i);
  }
  EXPECT_EQ(q.run([] { return 7; }), 7);
  EXPECT_THROW(q.run([]() -> int { throw Error("boom"); }), Error);
}
