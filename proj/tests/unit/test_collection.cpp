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
#include "watchtower/collection/dao.hpp"
#include "watchtower/collection/forms.hpp"
#include "watchtower/collection/importers.hpp"
#include "watchtower/common/error.hpp"
#include "watchtower/model/catena_io.hpp"

#include <gtest/gtest.h>

using namespace watchtower;
using namespace watchtower::collection;
using namespace std::chrono_literals;

namespace {

const model::ComponentRegistry &builtins()
{
  static const model::ComponentRegistry reg = builtin::registry();
  return reg;
}

model::VisualizationCatena control()
{
  return model::parse_catena_text(testkit::slurp(testkit::fixture("control/catena.json")), builtins());
}

// Joined issue text, for substring checks.
std::string issues_of(const std::function<void()> &fn)
{
  try
  {
    fn();
  }
  catch (const InvalidData &e)
  {
    return e.what();
  }
  return "";
}

Timestamp ts(const char *text)
{
  return *parse_timestamp(text);
}

constexpr const char *kPlanHeader = "activity_id,parent_id,name,start,end,baseline_effort_h\n";
constexpr const char *kEffortHeader = "person_id,activity_id,date,hours\n";

}  // namespace

TEST(PlanImport, ThreeRows)
{
  auto plan = import_project_plan(std::string(kPlanHeader) +
                                  "root,,Root,2026-01-01,2026-03-01,10\n"
                                  "A,root,Alpha,2026-01-01,2026-02-01,4\n"
                                  "B,root,Beta,2026-02-01,2026-03-01,6\n");
  EXPECT_EQ(plan.hierarchy.activities().size(), 3u);
  EXPECT_EQ(plan.hierarchy.roots(), std::vector<std::string>{"root"});
  EXPECT_EQ(plan.baseline.values, (std::map<std::string, double>{{"A", 4}, {"B", 6}, {"root", 10}}));
}

TEST(PlanImport, DanglingParentNamesTheRow)
{
  auto text = issues_of([] {
    import_project_plan(std::string(kPlanHeader) + "root,,Root,2026-01-01,2026-03-01,10\n"
                                                   "A,X,Alpha,2026-01-01,2026-02-01,4\n");
  });
  EXPECT_NE(text.find("dangling parent X at row 3"), std::string::npos) << text;
}

TEST(PlanImport, HeaderOnlyHasNoActivities)
{
  EXPECT_NE(issues_of([] { import_project_plan(kPlanHeader); }).find("no activities"), std::string::npos);
}

TEST(PlanImport, ReportsEveryDefectWithItsRow)
{
  auto text = issues_of([] {
    import_project_plan(std::string(kPlanHeader) + "root,,Root,2026-01-01,2026-03-01,10\n"
                                                   "root,,Again,2026-01-01,2026-03-01,10\n"
                                                   "A,root,Alpha,2026-02-01,2026-01-01,4\n");
  });
  EXPECT_NE(text.find("duplicate activity id root at row 3"), std::string::npos) << text;
  EXPECT_NE(text.find("start after end at row 4"), std::string::npos) << text;
}

TEST(PlanImport, WrongHeaderIsRejected)
{
  EXPECT_THROW(import_project_plan("id,parent\nA,\n"), InvalidData);
}

TEST(EffortImport, TwoRows)
{
  auto t = import_effort_table(std::string(kEffortHeader) + "p1,A,2026-01-02,2.5\np2,B,2026-01-03,4\n");
  ASSERT_EQ(t.records.size(), 2u);
  EXPECT_EQ(t.records[0].hours, 2.5);
  EXPECT_EQ(t.records[1].activity, "B");
}

TEST(EffortImport, NegativeHoursNameTheRow)
{
  auto text = issues_of(
      [] { import_effort_table(std::string(kEffortHeader) + "p1,A,2026-01-02,2\np1,A,2026-01-03,-1\n"); });
  EXPECT_NE(text.find("non-positive hours -1 at row 3"), std::string::npos) << text;
  auto date = issues_of([] { import_effort_table(std::string(kEffortHeader) + "p1,A,2026-13-02,2\n"); });
  EXPECT_NE(date.find("at row 2"), std::string::npos) << date;
}

TEST(EffortImport, QuotedCellsAreUnescaped)
{
  auto t = import_effort_table(std::string(kEffortHeader) + "\"Doe, Jane\",A,2026-01-02,1\n");
  ASSERT_EQ(t.records.size(), 1u);
  EXPECT_EQ(t.records[0].person, "Doe, Jane");
}

TEST(EffortImport, ThousandRowsMatchColumnSum)
{
  testkit::Gen gen(99);
  std::string  text = kEffortHeader;
  long         quarters = 0;
  for (int i = 0; i < 1000; ++i)
  {
    int q = gen.integer(1, 64);
    quarters += q;
    text += "p" + std::to_string(gen.integer(0, 9)) + ",A" + std::to_string(gen.integer(0, 20)) + ",2026-0" +
            std::to_string(gen.integer(1, 9)) + "-1" + std::to_string(gen.integer(0, 9)) + "," +
            std::to_string(q / 4) + "." + std::to_string(q % 4 * 25) + "\n";
  }
  auto   t   = import_effort_table(text);
  double sum = 0;
  for (auto const &r : t.records)
  {
    sum += r.hours;
  }
  EXPECT_EQ(t.records.size(), 1000u);
  EXPECT_EQ(sum, quarters * 0.25);
}

TEST(SeriesImport, ParsesAndOrders)
{
  auto ts_ok = import_time_series("timestamp,value\n2026-01-01,1\n2026-01-02T12:00:00Z,2.5\n");
  ASSERT_EQ(ts_ok.points.size(), 2u);
  EXPECT_EQ(ts_ok.points[1].value, 2.5);
  EXPECT_THROW(import_time_series("timestamp,value\n2026-01-02,1\n2026-01-01,2\n"), InvalidData);
}

TEST(ParseDocument, KeysAndUnknown)
{
  EXPECT_EQ(parser_keys(), (std::vector<std::string>{"effort.csv", "plan.csv", "timeseries.csv"}));
  auto bodies = parse_document("plan.csv", testkit::slurp(testkit::fixture("golden/data/plan-upload.csv")));
  EXPECT_EQ(bodies.size(), 2u);
  EXPECT_TRUE(bodies.count("activity-hierarchy"));
  EXPECT_TRUE(bodies.count("control-metric"));
  EXPECT_THROW(parse_document("xlsx", ""), NotFound);
}

class DaoTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    testkit::spill(dir / "effort.csv", std::string(kEffortHeader) + "p1,A1,2026-01-02,3\n");
    catena = testkit::golden_catena();
    entry  = *catena.entry("effort");
  }

  testkit::TempDir           dir;
  model::VisualizationCatena catena;
  model::DataEntry           entry;
};

TEST_F(DaoTest, PollDueExamples)
{
  PullStates states;
  // Window 2026-01-01 .. 2026-12-31, interval 24h.
  EXPECT_EQ(poll_due(catena, states, ts("2026-02-01T00:00:00Z")), std::vector<std::string>{"effort"});
  EXPECT_TRUE(poll_due(catena, states, ts("2027-01-02T00:00:00Z")).empty());
  EXPECT_TRUE(poll_due(catena, states, ts("2025-12-31T00:00:00Z")).empty());

  states["effort"].last_pulled = ts("2026-02-01T00:00:00Z");
  EXPECT_TRUE(poll_due(catena, states, ts("2026-02-01T23:00:00Z")).empty());
  EXPECT_EQ(poll_due(catena, states, ts("2026-02-02T00:00:00Z")), std::vector<std::string>{"effort"});
}

TEST_F(DaoTest, PollDueIsMonotoneUntilPulled)
{
  testkit::Gen gen(4);
  for (int trial = 0; trial < 100; ++trial)
  {
    PullStates states;
    if (gen.chance(0.5))
    {
      states["effort"].last_pulled = ts("2026-01-01T00:00:00Z") + std::chrono::hours{gen.integer(0, 8000)};
    }
    bool due = false;
    auto now = ts("2026-01-01T00:00:00Z");
    for (int step = 0; step < 50; ++step)
    {
      now += std::chrono::hours{gen.integer(0, 48)};
      if (now > ts("2026-12-31T00:00:00Z"))
      {
        break;
      }
      bool d = !poll_due(catena, states, now).empty();
      EXPECT_TRUE(!due || d);
      EXPECT_EQ(d, !poll_due(catena, states, now).empty());  // pure
      due = d;
    }
  }
}

TEST_F(DaoTest, PullHappyPathAndChangedFile)
{
  auto                       connectors = builtin_connectors(dir.path());
  engine::MemoryPayloadStore store;
  PullState                  state;
  auto p1 = pull_entry(entry, state, connectors, builtins(), store, ts("2026-02-01T00:00:00Z"));
  EXPECT_EQ(p1.version, 1u);
  EXPECT_EQ(state.last_pulled, ts("2026-02-01T00:00:00Z"));
  EXPECT_FALSE(state.last_error);

  auto same = pull_entry(entry, state, connectors, builtins(), store, ts("2026-02-02T00:00:00Z"));
  EXPECT_EQ(same.version, 2u);
  EXPECT_EQ(same.body, p1.body);

  testkit::spill(dir / "effort.csv", std::string(kEffortHeader) + "p1,A1,2026-01-02,3\np2,A2,2026-01-03,5\n");
  auto changed = pull_entry(entry, state, connectors, builtins(), store, ts("2026-02-03T00:00:00Z"));
  EXPECT_EQ(changed.version, 3u);
  EXPECT_NE(changed.body, p1.body);
}

TEST_F(DaoTest, MissingFileLeavesStateAndStore)
{
  std::filesystem::remove(dir / "effort.csv");
  auto                       connectors = builtin_connectors(dir.path());
  engine::MemoryPayloadStore store;
  PullState                  state;
  state.last_pulled = ts("2026-01-15T00:00:00Z");
  EXPECT_THROW(pull_entry(entry, state, connectors, builtins(), store, ts("2026-02-01T00:00:00Z")), Error);
  EXPECT_EQ(state.last_pulled, ts("2026-01-15T00:00:00Z"));
  ASSERT_TRUE(state.last_error);
  EXPECT_EQ(store.latest_version("effort"), 0u);
}

TEST_F(DaoTest, InvalidContentIsADiagnostic)
{
  testkit::spill(dir / "effort.csv", std::string(kEffortHeader) + "p1,A1,2026-01-02,-3\n");
  auto                       connectors = builtin_connectors(dir.path());
  engine::MemoryPayloadStore store;
  PullState                  state;
  EXPECT_THROW(pull_entry(entry, state, connectors, builtins(), store, ts("2026-02-01T00:00:00Z")), InvalidData);
  EXPECT_NE(state.last_error->find("non-positive"), std::string::npos);
  EXPECT_FALSE(state.last_pulled);
}

TEST(Forms, ManualEntryAppends)
{
  auto                       c = control();
  engine::MemoryPayloadStore store;
  FormSubmission             s{"effort-form", "u", testkit::fixed_now(),
                   json::parse(R"({"person_id":"p","activity_id":"A1","date":"2026-01-05","hours":2})"), {}};
  EXPECT_EQ(submit_form(s, c, builtins(), store), std::vector<std::string>{"effort"});
  EXPECT_EQ(submit_form(s, c, builtins(), store), std::vector<std::string>{"effort"});
  EXPECT_EQ(store.latest_version("effort"), 2u);
  EXPECT_EQ(store.latest("effort")->body.size(), 2u);
  EXPECT_EQ(store.latest("effort")->produced_at, testkit::fixed_now());
}

TEST(Forms, UpsertReplacesByKey)
{
  auto                       c = control();
  engine::MemoryPayloadStore store;
  auto submit = [&](const char *values) {
    submit_form({"baseline-form", "u", testkit::fixed_now(), json::parse(values), {}}, c, builtins(), store);
  };
  submit(R"([{"key":"A","value":1},{"key":"B","value":2}])");
  submit(R"({"key":"A","value":5})");
  auto metric = techniques::metric_from_body(store.latest("baseline")->body);
  EXPECT_EQ(metric.values, (std::map<std::string, double>{{"A", 5}, {"B", 2}}));
}

TEST(Forms, PlanUploadWritesBothEntries)
{
  auto                       c = control();
  engine::MemoryPayloadStore store;
  FormSubmission             s{"plan-upload", "u", testkit::fixed_now(), json::array(),
                   testkit::slurp(testkit::fixture("golden/data/plan-upload.csv"))};
  EXPECT_EQ(submit_form(s, c, builtins(), store), (std::vector<std::string>{"baseline", "plan"}));
  EXPECT_EQ(store.latest_version("plan"), 1u);
  EXPECT_EQ(store.latest_version("baseline"), 1u);
}

TEST(Forms, FailedSubmissionsChangeNothing)
{
  auto                       c = control();
  engine::MemoryPayloadStore store;
  testkit::load_golden_inputs(store);
  auto before = store.history();

  FormSubmission bad_plan{"plan-upload", "u", testkit::fixed_now(), json::array(),
                          std::string(kPlanHeader) + "P,,P,2026-01-01,2026-02-01,1\nA,Q,A,2026-01-01,2026-02-01,1\n"};
  EXPECT_THROW(submit_form(bad_plan, c, builtins(), store), InvalidData);

  FormSubmission bad_hours{"effort-form", "u", testkit::fixed_now(),
                           json::parse(R"({"person_id":"p","activity_id":"A1","date":"2026-01-05","hours":"lots"})"),
                           {}};
  auto text = issues_of([&] { submit_form(bad_hours, c, builtins(), store); });
  EXPECT_NE(text.find("hours"), std::string::npos) << text;

  FormSubmission negative{"effort-form", "u", testkit::fixed_now(),
                          json::parse(R"({"person_id":"p","activity_id":"A1","date":"2026-01-05","hours":-2})"), {}};
  EXPECT_THROW(submit_form(negative, c, builtins(), store), InvalidData);

  EXPECT_THROW(submit_form({"nope", "u", {}, json::array(), {}}, c, builtins(), store), NotFound);
  EXPECT_EQ(store.history(), before);
}

TEST(Forms, SubmissionDocuments)
{
  auto values = submission_from_json("f", json::parse(R"({"values": {"a": 1}})"));
  EXPECT_EQ(values.values["a"], 1);
  EXPECT_FALSE(values.file_content);
  auto file = submission_from_json("f", json::parse(R"({"file": "x,y\n"})"));
  EXPECT_EQ(*file.file_content, "x,y\n");
}
