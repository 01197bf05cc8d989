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

#include "watchtower/cli/commands.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace watchtower;
using namespace watchtower::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome
{
  int         code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args)
{
  args.insert(args.begin(), "watchtower");
  std::vector<char *> argv;
  for (auto &a : args)
  {
    argv.push_back(a.data());
  }
  std::ostringstream out, err;
  int                code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test
{
protected:
  void SetUp() override { ASSERT_EQ(run({"seed", "--repo", repo()}).code, kSuccess); }

  std::string repo() const { return (dir / "repo").string(); }

  testkit::TempDir dir;
};

}  // namespace

TEST_F(CliTest, ValidateExitCodes)
{
  auto golden = testkit::fixture("golden/catena.json").string();
  auto ok   = run({"validate", golden, "--repo", repo()});
  EXPECT_EQ(ok.code, kSuccess) << ok.err;
  EXPECT_NE(ok.out.find("ok golden"), std::string::npos);

  auto doc = json::parse(testkit::slurp(golden));
  doc["functions"][1]["bindings"]["baseline"] = "plan";  // hierarchy where a metric is expected
  testkit::spill(dir / "bad.json", doc.dump());
  auto bad = run({"validate", (dir / "bad.json").string(), "--repo", repo()});
  EXPECT_EQ(bad.code, kDomainFailure);

  EXPECT_EQ(run({"validate", (dir / "absent.json").string(), "--repo", repo()}).code, kEnvironment);
  EXPECT_EQ(run({"validate", golden, "--repo", (dir / "no-repo").string()}).code, kEnvironment);
  EXPECT_EQ(run({"frobnicate"}).code, kEnvironment);
}

TEST_F(CliTest, RunGoldenIsReproducible)
{
  auto golden = testkit::fixture("golden/catena.json").string();
  auto data = testkit::fixture("golden/data").string();
  auto a    = dir / "a";
  auto b    = dir / "b";
  auto r    = run({"run", golden, "--repo", repo(), "--data", data, "--out", a.string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  ASSERT_EQ(run({"run", golden, "--repo", repo(), "--data", data, "--out", b.string()}).code, kSuccess);

  auto indicators = json::parse(testkit::slurp(a / "indicators.json"));
  auto const &ind = indicators["indicators"]["effort-deviation"];
  EXPECT_EQ(ind["activities"], json::parse(R"({"A": "yellow", "A1": "green", "A2": "yellow", "B": "green",
                                               "P": "green"})"));
  EXPECT_EQ(ind["counts"]["yellow"], 2);

  auto chart = json::parse(testkit::slurp(a / "views" / "effort-chart.json"));
  EXPECT_EQ(chart["render"], "bar-chart-drilldown");
  EXPECT_EQ(chart["status"], "ok");

  for (auto const &e : fs::recursive_directory_iterator(a))
  {
    if (e.is_regular_file())
    {
      EXPECT_EQ(testkit::slurp(e.path()), testkit::slurp(b / fs::relative(e.path(), a))) << e.path();
    }
  }
}

TEST_F(CliTest, RunWithoutDataIsADomainFailure)
{
  fs::create_directories(dir / "empty");
  auto r = run({"run", testkit::fixture("golden/catena.json").string(), "--repo", repo(), "--data",
                (dir / "empty").string(), "--out", (dir / "out").string()});
  EXPECT_EQ(r.code, kDomainFailure);
  EXPECT_NE(r.err.find("missing input"), std::string::npos) << r.err;
}

TEST_F(CliTest, SeedIsIdempotent)
{
  auto again = run({"seed", "--repo", repo()});
  EXPECT_EQ(again.code, kSuccess);
  EXPECT_NE(again.out.find("seeded 0 new"), std::string::npos) << again.out;
}

TEST_F(CliTest, ServeRejectsBadConfig)
{
  EXPECT_EQ(run({"serve", "--config", (dir / "missing.json").string()}).code, kEnvironment);
  testkit::spill(dir / "cfg.json", R"({"port": 99999, "store": "s", "credentials": "c.json"})");
  EXPECT_EQ(run({"serve", "--config", (dir / "cfg.json").string()}).code, kEnvironment);
  testkit::spill(dir / "nocreds.json", R"({"port": 0, "store": "s", "credentials": "c.json"})");
  EXPECT_EQ(run({"serve", "--config", (dir / "nocreds.json").string()}).code, kEnvironment);
}

TEST_F(CliTest, ComposeWritesACandidate)
{
  auto plan = testkit::fixture("gqm/effort-plan.json").string();
  auto out  = dir / "candidate.json";
  auto r    = run({"compose", plan, "--repo", repo(), "--project", "demo", "--out", out.string()});
  ASSERT_EQ(r.code, kSuccess) << r.err;
  EXPECT_NE(r.out.find("m.actual"), std::string::npos);
  // The candidate is itself a valid catena.
  EXPECT_EQ(run({"validate", out.string(), "--repo", repo()}).code, kSuccess);
}
