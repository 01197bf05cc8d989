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
#include "watchtower/model/binding.hpp"
#include "watchtower/model/catena_io.hpp"
#include "watchtower/model/validation.hpp"
#include "watchtower/techniques/registry.hpp"

#include <gtest/gtest.h>

using namespace watchtower;
using namespace watchtower::model;

namespace {

const ComponentRegistry &builtins()
{
  static const ComponentRegistry reg = builtin::registry();
  return reg;
}

VisualizationCatena load_golden()
{
  return parse_catena_text(testkit::slurp(testkit::fixture("golden/catena.json")), builtin::registry());
}

ValidationReport validate(const VisualizationCatena &c)
{
  static const auto techniques = techniques::builtin_techniques();
  return validate_catena(c, builtin::registry(), &techniques);
}

FunctionInstance &function(VisualizationCatena &c, const std::string &id)
{
  return *std::find_if(c.functions.begin(), c.functions.end(), [&](auto const &f) { return f.id == id; });
}

}  // namespace

TEST(DataType, DescriptorInvariants)
{
  DataTypeDescriptor empty{"x", "x", {}, "", {}};
  EXPECT_FALSE(check_descriptor(empty).empty());

  DataTypeDescriptor dup{"x", "x", {{"a", FieldKind::number, false, {}}, {"a", FieldKind::text, false, {}}}, "", {}};
  EXPECT_FALSE(check_descriptor(dup).empty());

  DataTypeDescriptor fine{"x", "x", {{"a", FieldKind::number, false, {}}}, "", {}};
  EXPECT_TRUE(check_descriptor(fine).empty());
}

TEST(DataType, BodyValidationNamesThePath)
{
  auto const *effort = builtins().data_type("effort-table");
  ASSERT_NE(effort, nullptr);
  json good = json::parse(R"([{"person_id":"p","activity_id":"A","date":"2026-01-02","hours":2}])");
  EXPECT_TRUE(validate_body(*effort, good).empty());

  json bad    = json::parse(R"([{"person_id":"p","activity_id":"A","date":"2026-01-02","hours":"two"}])");
  auto issues = validate_body(*effort, bad);
  ASSERT_FALSE(issues.empty());
  EXPECT_NE(issues.front().find("[0].hours"), std::string::npos) << issues.front();
}

TEST(Validate, GoldenCatenaIsOk)
{
  auto c = load_golden();
  int  sourced = 0;
  for (auto const &e : c.entries)
  {
    sourced += e.is_derived() ? 0 : 1;
  }
  EXPECT_EQ(sourced, 3);
  EXPECT_EQ(c.forms.size(), 1u);
  EXPECT_EQ(c.functions.size(), 2u);
  EXPECT_EQ(c.views.size(), 1u);
  auto report = validate(c);
  EXPECT_TRUE(report.ok()) << report.to_text();
}

TEST(Validate, TypeMismatchIsReported)
{
  auto c = load_golden();
  c.entries.push_back({"series", "time-series", FormSource{}});
  function(c, "agg").inputs["effort"] = {"series"};
  auto report = validate(c);
  EXPECT_FALSE(report.ok());
  EXPECT_TRUE(report.has_code("type mismatch")) << report.to_text();
}

TEST(Validate, TwoCycleIsReported)
{
  // f1 consumes f2's output and f2 consumes f1's.
  VisualizationCatena loop;
  loop.meta = {"loop", "demo", {"r"}};
  loop.entries = {{"f1.scaled", "time-series", DerivedSource{"f1", "scaled"}},
                  {"f2.scaled", "time-series", DerivedSource{"f2", "scaled"}}};
  loop.functions = {{"f1", "ts.scale", {{"series", {"f2.scaled"}}}, {}, {{"scaled", "f1.scaled"}}},
                    {"f2", "ts.scale", {{"series", {"f1.scaled"}}}, {}, {{"scaled", "f2.scaled"}}}};
  auto report = validate(loop);
  EXPECT_TRUE(report.has_code("cycle")) << report.to_text();
  int cycles = 0;
  for (auto const &d : report.diagnostics)
  {
    cycles += d.code == "cycle" ? 1 : 0;
  }
  EXPECT_EQ(cycles, 2);
}

TEST(Validate, DiagnosticsAreSortedAndPure)
{
  auto c = load_golden();
  function(c, "trc").params["yellow"] = -1;
  function(c, "agg").inputs.erase("hierarchy");
  auto a = validate(c);
  auto b = validate(c);
  EXPECT_EQ(a.to_text(), b.to_text());
  EXPECT_EQ(canonical_dump(a.to_json()), canonical_dump(b.to_json()));
  for (std::size_t i = 1; i < a.diagnostics.size(); ++i)
  {
    auto const &p = a.diagnostics[i - 1];
    auto const &q = a.diagnostics[i];
    EXPECT_LE(std::tie(p.subject, p.code), std::tie(q.subject, q.code));
  }
  EXPECT_TRUE(a.has_code("unbound port"));
  EXPECT_TRUE(a.has_code("constraint violation"));
}

TEST(Validate, UnresolvedRegistryIdIsAnError)
{
  auto c = load_golden();
  function(c, "agg").spec = "agg.nope";
  auto report = validate(c);
  EXPECT_TRUE(report.has_code("unresolved reference")) << report.to_text();
}

TEST(Validate, InvalidCollectionWindow)
{
  auto c = load_golden();
  for (auto &e : c.entries)
  {
    if (auto *d = std::get_if<DaoSource>(&e.source))
    {
      d->window.interval = std::chrono::seconds{0};
    }
  }
  EXPECT_TRUE(validate(c).has_code("invalid window"));
}

TEST(Bind, ToleranceInstanceGetsOneDerivedEntry)
{
  auto        c    = load_golden();
  auto const *spec = builtins().function("check.tolerance");
  auto bound = bind_function_instance(c, *spec, "trc2", {{"actual", {"actual-effort"}}, {"baseline", {"baseline"}}},
                                      {{"yellow", 0.1}});
  ASSERT_EQ(bound.derived.size(), 1u);
  EXPECT_EQ(bound.derived.front().id, "trc2.indicators");
  EXPECT_EQ(bound.derived.front().data_type, "indicator-table");
  EXPECT_EQ(bound.instance.outputs.at("indicators"), "trc2.indicators");

  auto extended = with_function(c, bound);
  EXPECT_TRUE(validate(extended).ok()) << validate(extended).to_text();
}

TEST(Bind, MissingPortIsRejected)
{
  auto        c    = load_golden();
  auto const *spec = builtins().function("check.tolerance");
  try
  {
    bind_function_instance(c, *spec, "trc2", {{"actual", {"actual-effort"}}}, {});
    FAIL() << "expected BindError";
  }
  catch (const BindError &e)
  {
    EXPECT_EQ(e.code(), "unbound port");
  }
}

TEST(Bind, ConstraintViolationIsRejected)
{
  auto        c    = load_golden();
  auto const *spec = builtins().function("check.tolerance");
  try
  {
    bind_function_instance(c, *spec, "trc2", {{"actual", {"actual-effort"}}, {"baseline", {"baseline"}}},
                           {{"yellow", -0.1}});
    FAIL() << "expected BindError";
  }
  catch (const BindError &e)
  {
    EXPECT_EQ(e.code(), "constraint violation");
  }
}

TEST(Bind, ArityAndTypeAreChecked)
{
  auto        c    = load_golden();
  auto const *spec = builtins().function("check.tolerance");
  EXPECT_THROW(bind_function_instance(c, *spec, "t", {{"actual", {"actual-effort", "baseline"}}, {"baseline", {"baseline"}}}, {}),
               BindError);
  EXPECT_THROW(bind_function_instance(c, *spec, "t", {{"actual", {"plan"}}, {"baseline", {"baseline"}}}, {}), BindError);
  EXPECT_THROW(bind_function_instance(c, *spec, "agg", {{"actual", {"actual-effort"}}, {"baseline", {"baseline"}}}, {}),
               BindError);
}

TEST(CatenaDocument, GoldenRoundTrip)
{
  auto c    = load_golden();
  auto back = parse_catena_text(serialize_catena(c), builtin::registry());
  EXPECT_TRUE(structurally_equal(c, back));
  EXPECT_EQ(serialize_catena(c), serialize_catena(back));
}

TEST(CatenaDocument, MissingSectionReportsItsPath)
{
  auto doc = json::parse(testkit::slurp(testkit::fixture("golden/catena.json")));
  doc.erase("data_entries");
  try
  {
    parse_catena(doc, builtin::registry());
    FAIL() << "expected ParseError";
  }
  catch (const ParseError &e)
  {
    EXPECT_EQ(e.location(), "/data_entries");
  }
}

TEST(CatenaDocument, UnregisteredSpecIsNamed)
{
  auto doc                      = json::parse(testkit::slurp(testkit::fixture("golden/catena.json")));
  doc["functions"][1]["spec"]   = "evax";
  try
  {
    parse_catena(doc, builtin::registry());
    FAIL() << "expected ParseError";
  }
  catch (const ParseError &e)
  {
    EXPECT_NE(std::string(e.what()).find("evax"), std::string::npos) << e.what();
  }
}

TEST(CatenaDocument, MalformedTextHasALocation)
{
  try
  {
    parse_catena_text("{\"meta\": ", builtin::registry());
    FAIL() << "expected ParseError";
  }
  catch (const ParseError &e)
  {
    EXPECT_EQ(e.location().rfind("byte ", 0), 0u) << e.location();
  }
}

TEST(CatenaProperties, RandomCatenasAreValidAndWellTyped)
{
  auto reg = testkit::mix_registry();
  auto tech = testkit::mix_techniques();
  for (std::uint64_t seed = 1; seed <= 50; ++seed)
  {
    SCOPED_TRACE("seed " + std::to_string(seed));
    testkit::Gen gen(seed);
    auto         c      = testkit::random_catena(gen);
    auto         report = validate_catena(c, reg, &tech);
    ASSERT_TRUE(report.ok()) << report.to_text();
    // Exhaustive scan: every binding's type equals its port type.
    for (auto const &fn : c.functions)
    {
      auto const *spec = reg.function(fn.spec);
      for (auto const &[port, ids] : fn.inputs)
      {
        for (auto const &id : ids)
        {
          EXPECT_EQ(c.entry(id)->data_type, spec->input(port)->data_type);
        }
      }
    }
  }
}

TEST(CatenaProperties, ParseSerializeIdentity)
{
  auto reg = testkit::mix_registry();
  for (std::uint64_t seed = 100; seed < 150; ++seed)
  {
    SCOPED_TRACE("seed " + std::to_string(seed));
    testkit::Gen gen(seed);
    auto         c    = testkit::random_catena(gen);
    auto         back = parse_catena_text(serialize_catena(c), reg);
    EXPECT_TRUE(structurally_equal(c, back));
  }
}

TEST(CatenaProperties, BackEdgeIsAlwaysRejected)
{
  auto reg  = testkit::mix_registry();
  auto tech = testkit::mix_techniques();
  for (std::uint64_t seed = 200; seed < 250; ++seed)
  {
    SCOPED_TRACE("seed " + std::to_string(seed));
    testkit::Gen gen(seed);
    auto         c = testkit::add_back_edge(testkit::random_catena(gen), gen);
    EXPECT_TRUE(validate_catena(c, reg, &tech).has_code("cycle"));
  }
}
